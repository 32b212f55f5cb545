#include "netflow/measure.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace netflow {

namespace {

using Profile = EdgeStepFunction::Profile;

void check_position(const Rational& p) {
  if (p < 0 || p >= 1) throw std::out_of_range("atom position " + to_string(p) + " outside [0, 1)");
}

/// Profile equal to `profile` on [a, b) and zero elsewhere.
Profile restrict_profile(const Profile& profile, const Rational& a, const Rational& b) {
  std::vector<Rational> points = profile.breaks();
  for (const Rational& x : {a, b}) {
    if (x > 0 && x < 1) points.push_back(x);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Rational> values;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    values.push_back(points[i] >= a && points[i + 1] <= b ? profile.at(points[i]) : Rational(0));
  }
  return Profile(std::move(points), std::move(values));
}

/// Mass at p moves to p + d; throws if nonzero density would leave [0, 1].
Profile translate_profile(const Profile& profile, const Rational& d) {
  std::vector<Rational> points{Rational(0), Rational(1)};
  for (const Rational& x : profile.breaks()) {
    const Rational moved = x + d;
    if (moved > 0 && moved < 1) points.push_back(moved);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Rational> values;
  Rational kept_mass = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Rational lo = points[i] - d;
    const Rational hi = points[i + 1] - d;
    if (lo >= 0 && hi <= 1) {
      values.push_back(profile.at(lo));
      kept_mass += abs(values.back()) * (hi - lo);
    } else {
      values.push_back(0);
    }
  }
  Rational mass = 0;
  for (std::size_t i = 0; i < profile.piece_count(); ++i) {
    mass += abs(profile.values()[i]) * (profile.breaks()[i + 1] - profile.breaks()[i]);
  }
  if (kept_mass != mass) throw std::out_of_range("shift moves density mass outside [0, 1]");
  return Profile(std::move(points), std::move(values));
}

/// Applies `map` to every atom weight and every density cell value.
EdgeMeasure map_values(const EdgeMeasure& mu, const std::function<RationalVector(const RationalVector&)>& map) {
  EdgeMeasure out;
  for (const auto& [position, weight] : mu.atoms()) out.add_atom(position, map(weight));
  GridFunction<Rational> grid = mu.density().to_grid();
  for (auto& value : grid.values) value = map(value);
  out.set_density(EdgeStepFunction::from_grid(grid));
  return out;
}

}  // namespace

EdgeMeasure EdgeMeasure::dirac(const Rational& position, EdgeId edge, const Rational& weight) {
  EdgeMeasure out;
  out.add_atom(position, edge, weight);
  return out;
}

void EdgeMeasure::add_atom(const Rational& position, EdgeId edge, const Rational& weight) {
  if (edge < 0) throw std::invalid_argument("negative edge id");
  add_atom(position, RationalVector{{edge, weight}});
}

void EdgeMeasure::add_atom(const Rational& position, const RationalVector& weight) {
  check_position(position);
  RationalVector& slot = atoms_[position];
  add_scaled(slot, Rational(1), weight);
  if (slot.empty()) atoms_.erase(position);
}

std::vector<EdgeId> EdgeMeasure::active_edges() const {
  std::vector<EdgeId> out = density_.active_edges();
  for (const auto& [position, weight] : atoms_) {
    for (const auto& [edge, value] : weight) out.push_back(edge);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeMeasure& EdgeMeasure::operator+=(const EdgeMeasure& other) {
  for (const auto& [position, weight] : other.atoms_) add_atom(position, weight);
  density_ += other.density_;
  return *this;
}

EdgeMeasure EdgeMeasure::scaled(const Rational& factor) const {
  EdgeMeasure out;
  for (const auto& [position, weight] : atoms_) {
    RationalVector w;
    add_scaled(w, factor, weight);
    if (!w.empty()) out.atoms_.emplace(position, std::move(w));
  }
  out.density_ = density_.scaled(factor);
  return out;
}

Rational variation(const EdgeMeasure& mu) {
  Rational total = mu.density().l1_norm();
  for (const auto& [position, weight] : mu.atoms()) total += l1_norm(weight);
  return total;
}

EdgeMeasure restrict(const EdgeMeasure& mu, const Rational& a, const Rational& b, bool closed) {
  EdgeMeasure out;
  for (const auto& [position, weight] : mu.atoms()) {
    if (position >= a && (position < b || (closed && position == b))) out.add_atom(position, weight);
  }
  EdgeStepFunction density;
  for (const auto& [edge, profile] : mu.density().profiles()) density.set(edge, restrict_profile(profile, a, b));
  out.set_density(std::move(density));
  return out;
}

EdgeMeasure shift(const EdgeMeasure& mu, const Rational& t) {
  EdgeMeasure out;
  for (const auto& [position, weight] : mu.atoms()) out.add_atom(position - t, weight);
  EdgeStepFunction density;
  for (const auto& [edge, profile] : mu.density().profiles()) density.set(edge, translate_profile(profile, -t));
  out.set_density(std::move(density));
  return out;
}

EdgeMeasure apply_matrix(const RationalMatrix& b, const EdgeMeasure& mu) {
  return map_values(mu, [&](const RationalVector& x) {
    RationalVector y;
    for (const auto& [j, xj] : x) {
      if (j < 0 || static_cast<std::size_t>(j) >= b.cols) {
        throw std::out_of_range("apply_matrix: index " + std::to_string(j) + " outside matrix");
      }
      add_scaled(y, xj, b.columns[static_cast<std::size_t>(j)]);
    }
    return y;
  });
}

EdgeMeasure evaluate_S(const ColumnStochasticOperator& b, const Rational& t, const EdgeMeasure& mu) {
  if (t < 0) throw std::invalid_argument("evaluate_S: negative time");
  const long n = floor_to_long(t);
  const Rational tau = t - n;
  const EdgeMeasure late = map_values(restrict(mu, tau, 1, true), [&](const RationalVector& x) {
    return b.apply_power(x, n);
  });
  const EdgeMeasure early = map_values(restrict(mu, 0, tau), [&](const RationalVector& x) {
    return b.apply_power(x, n + 1);
  });
  return shift(late, tau) + shift(early, tau - 1);
}

EdgeMeasure embed(const EdgeStepFunction& f) { return EdgeMeasure(f); }

EdgeMeasure nilpotent_shift(const EdgeMeasure& mu, const Rational& t) {
  if (t < 0) throw std::invalid_argument("nilpotent_shift: negative time");
  if (t >= 1) return EdgeMeasure();
  return shift(restrict(mu, t, 1, true), t);
}

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> breaks, std::vector<Rational> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() < 2 || breaks_.size() != values_.size()) {
    throw std::invalid_argument("piecewise-linear function needs one node value per breakpoint");
  }
  if (breaks_.front() != 0 || breaks_.back() != 1) {
    throw std::invalid_argument("piecewise-linear breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) throw std::invalid_argument("piecewise-linear breakpoints must increase");
  }
}

Rational PiecewiseLinear::at(const Rational& s) const {
  if (s < 0 || s > 1) throw std::out_of_range("piecewise-linear function evaluated outside [0, 1]");
  auto index = static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), s) - breaks_.begin());
  index = std::clamp<std::size_t>(index, 1, breaks_.size() - 1);
  const Rational& x0 = breaks_[index - 1];
  const Rational& x1 = breaks_[index];
  return values_[index - 1] + (values_[index] - values_[index - 1]) * (s - x0) / (x1 - x0);
}

Rational PiecewiseLinear::lipschitz() const {
  Rational best = 0;
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    best = std::max(best, Rational(abs(values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i])));
  }
  return best;
}

Rational PiecewiseLinear::sup_norm() const {
  Rational best = 0;
  for (const Rational& v : values_) best = std::max(best, Rational(abs(v)));
  return best;
}

Rational TestFunction::lipschitz() const {
  Rational best = 0;
  for (const auto& [edge, component] : components) best = std::max(best, component.lipschitz());
  return best;
}

Rational TestFunction::sup_norm() const {
  Rational best = 0;
  for (const auto& [edge, component] : components) best = std::max(best, component.sup_norm());
  return best;
}

Rational pair(const TestFunction& f, const EdgeMeasure& mu) {
  Rational total = 0;
  for (const auto& [position, weight] : mu.atoms()) {
    for (const auto& [edge, value] : weight) {
      const auto it = f.components.find(edge);
      if (it != f.components.end()) total += it->second.at(position) * value;
    }
  }
  for (const auto& [edge, profile] : mu.density().profiles()) {
    const auto it = f.components.find(edge);
    if (it == f.components.end()) continue;
    const PiecewiseLinear& g = it->second;
    std::vector<Rational> points;
    std::set_union(profile.breaks().begin(), profile.breaks().end(), g.breaks().begin(), g.breaks().end(),
                   std::back_inserter(points));
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      const Rational& x = points[i];
      const Rational& y = points[i + 1];
      total += profile.at(x) * (y - x) * (g.at(x) + g.at(y)) / 2;
    }
  }
  return total;
}

std::vector<ProbeSample> weakstar_continuity_probe(const ColumnStochasticOperator& b, const EdgeMeasure& mu,
                                                   const TestFunction& f, const std::vector<Rational>& times) {
  const Rational lip = f.lipschitz();
  const Rational sup = f.sup_norm();
  const Rational total = variation(mu);
  std::vector<ProbeSample> out;
  for (const Rational& t : times) {
    if (t < 0 || t >= 1) throw std::invalid_argument("weakstar_continuity_probe: times must lie in [0, 1)");
    const EdgeMeasure gap = evaluate_S(b, t, mu) - mu;
    out.push_back(ProbeSample{t, abs(pair(f, gap)), variation(gap),
                              lip * t * total + 2 * sup * variation(restrict(mu, 0, t))});
  }
  return out;
}

}  // namespace netflow
