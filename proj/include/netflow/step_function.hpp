#ifndef NETFLOW_STEP_FUNCTION_HPP
#define NETFLOW_STEP_FUNCTION_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "netflow/rational.hpp"

namespace netflow {

/**
 * Scalar piecewise-constant function on [0, 1].
 *
 * Breakpoints 0 = b_0 < ... < b_m = 1 are exact rationals; value i holds on
 * [b_i, b_{i+1}) and the last value also at s = 1. The stored form is
 * canonical (adjacent values differ), so == is equality of functions.
 */
template <class V>
class StepProfile {
 public:
  StepProfile() : breaks_{Rational(0), Rational(1)}, values_{V{}} {}

  StepProfile(std::vector<Rational> breaks, std::vector<V> values)
      : breaks_(std::move(breaks)), values_(std::move(values)) {
    if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size()) {
      throw std::invalid_argument("step profile needs m+1 breakpoints for m values");
    }
    if (breaks_.front() != 0 || breaks_.back() != 1) {
      throw std::invalid_argument("step profile breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      if (!(breaks_[i] < breaks_[i + 1])) throw std::invalid_argument("step profile breakpoints must increase strictly");
    }
    canonicalize();
  }

  static StepProfile constant(const V& value) { return StepProfile({Rational(0), Rational(1)}, {value}); }

  /// value on [lo, hi), zero elsewhere
  static StepProfile indicator(const Rational& lo, const Rational& hi, const V& value) {
    if (!(0 <= lo && lo < hi && hi <= 1)) throw std::invalid_argument("indicator interval must satisfy 0 <= lo < hi <= 1");
    std::vector<Rational> breaks{Rational(0)};
    std::vector<V> values;
    if (lo > 0) {
      breaks.push_back(lo);
      values.push_back(V{});
    }
    breaks.push_back(hi);
    values.push_back(value);
    if (hi < 1) {
      breaks.push_back(Rational(1));
      values.push_back(V{});
    }
    return StepProfile(std::move(breaks), std::move(values));
  }

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<V>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  bool is_zero() const { return values_.size() == 1 && netflow::is_zero(values_.front()); }

  V at(const Rational& s) const {
    if (s < 0 || s > 1) throw std::out_of_range("step profile evaluated outside [0, 1]");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    auto index = static_cast<std::size_t>(it - breaks_.begin());
    if (index == 0) index = 1;
    if (index > values_.size()) index = values_.size();
    return values_[index - 1];
  }

  friend bool operator==(const StepProfile& a, const StepProfile& b) {
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }

 private:
  void canonicalize() {
    std::vector<Rational> breaks{breaks_.front()};
    std::vector<V> values;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!values.empty() && values.back() == values_[i]) {
        breaks.back() = breaks_[i + 1];
      } else {
        values.push_back(values_[i]);
        breaks.push_back(breaks_[i + 1]);
      }
    }
    breaks_ = std::move(breaks);
    values_ = std::move(values);
  }

  std::vector<Rational> breaks_;
  std::vector<V> values_;
};

/**
 * Vector-valued step data on a common breakpoint grid: cell i is
 * [breaks[i], breaks[i+1]) with an l1 vector value. Intermediate form used by
 * the evaluators; not canonical.
 */
template <class V>
struct GridFunction {
  std::vector<Rational> breaks;
  std::vector<SparseVector<V>> values;
};

/**
 * l1-valued piecewise-constant function on [0, 1], stored per active edge.
 * Edges whose profile vanishes identically are not stored.
 */
template <class V>
class BasicStepFunction {
 public:
  using Profile = StepProfile<V>;

  BasicStepFunction() = default;

  void set(EdgeId edge, Profile profile) {
    if (edge < 0) throw std::invalid_argument("negative edge id");
    if (profile.is_zero()) {
      profiles_.erase(edge);
    } else {
      profiles_[edge] = std::move(profile);
    }
  }

  const std::map<EdgeId, Profile>& profiles() const { return profiles_; }
  bool is_zero() const { return profiles_.empty(); }

  std::vector<EdgeId> active_edges() const {
    std::vector<EdgeId> out;
    for (const auto& [edge, profile] : profiles_) out.push_back(edge);
    return out;
  }

  SparseVector<V> at(const Rational& s) const {
    SparseVector<V> out;
    for (const auto& [edge, profile] : profiles_) {
      V value = profile.at(s);
      if (!netflow::is_zero(value)) out.emplace(edge, std::move(value));
    }
    return out;
  }

  /// Union of all breakpoints with the vector value on each cell.
  GridFunction<V> to_grid() const {
    std::vector<Rational> breaks{Rational(0), Rational(1)};
    for (const auto& [edge, profile] : profiles_) {
      breaks.insert(breaks.end(), profile.breaks().begin(), profile.breaks().end());
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    GridFunction<V> grid;
    grid.values.resize(breaks.size() - 1);
    for (const auto& [edge, profile] : profiles_) {
      std::size_t piece = 0;
      for (std::size_t cell = 0; cell + 1 < breaks.size(); ++cell) {
        while (profile.breaks()[piece + 1] <= breaks[cell]) ++piece;
        const V& value = profile.values()[piece];
        if (!netflow::is_zero(value)) grid.values[cell].emplace(edge, value);
      }
    }
    grid.breaks = std::move(breaks);
    return grid;
  }

  static BasicStepFunction from_grid(const GridFunction<V>& grid) {
    BasicStepFunction out;
    std::map<EdgeId, std::vector<V>> columns;
    for (const auto& cell : grid.values) {
      for (const auto& [edge, value] : cell) columns.try_emplace(edge, grid.values.size(), V{});
    }
    for (std::size_t cell = 0; cell < grid.values.size(); ++cell) {
      for (const auto& [edge, value] : grid.values[cell]) columns[edge][cell] = value;
    }
    for (auto& [edge, values] : columns) out.set(edge, Profile(grid.breaks, std::move(values)));
    return out;
  }

  BasicStepFunction& operator+=(const BasicStepFunction& other) {
    GridFunction<V> grid = merged_grid(*this, other);
    *this = from_grid(grid);
    return *this;
  }
  friend BasicStepFunction operator+(BasicStepFunction a, const BasicStepFunction& b) { return a += b; }

  BasicStepFunction scaled(const V& factor) const {
    BasicStepFunction out;
    for (const auto& [edge, profile] : profiles_) {
      std::vector<V> values = profile.values();
      for (auto& v : values) v = factor * v;
      out.set(edge, Profile(profile.breaks(), std::move(values)));
    }
    return out;
  }
  friend BasicStepFunction operator-(const BasicStepFunction& a, const BasicStepFunction& b) {
    return a + b.scaled(V{-1});
  }

  friend bool operator==(const BasicStepFunction& a, const BasicStepFunction& b) { return a.profiles_ == b.profiles_; }

  /// ∫₀¹ ||f(s)||_1 ds
  NormType<V> l1_norm() const {
    NormType<V> total{0};
    for (const auto& [edge, profile] : profiles_) {
      for (std::size_t i = 0; i < profile.piece_count(); ++i) {
        const Rational width = profile.breaks()[i + 1] - profile.breaks()[i];
        total += magnitude(profile.values()[i]) * from_rational<NormType<V>>(width);
      }
    }
    return total;
  }

  /// esssup_s ||f(s)||_1
  NormType<V> linf_norm() const {
    const GridFunction<V> grid = to_grid();
    NormType<V> best{0};
    for (const auto& cell : grid.values) {
      NormType<V> n = netflow::l1_norm(cell);
      if (n > best) best = n;
    }
    return best;
  }

  bool is_nonnegative() const {
    for (const auto& [edge, profile] : profiles_) {
      for (const auto& v : profile.values()) {
        if (v < 0) return false;
      }
    }
    return true;
  }

 private:
  static GridFunction<V> merged_grid(const BasicStepFunction& a, const BasicStepFunction& b) {
    GridFunction<V> ga = a.to_grid();
    GridFunction<V> gb = b.to_grid();
    std::vector<Rational> breaks;
    std::set_union(ga.breaks.begin(), ga.breaks.end(), gb.breaks.begin(), gb.breaks.end(), std::back_inserter(breaks));
    GridFunction<V> out;
    out.values.resize(breaks.size() - 1);
    std::size_t ia = 0, ib = 0;
    for (std::size_t cell = 0; cell + 1 < breaks.size(); ++cell) {
      while (ga.breaks[ia + 1] <= breaks[cell]) ++ia;
      while (gb.breaks[ib + 1] <= breaks[cell]) ++ib;
      out.values[cell] = ga.values[ia];
      add_scaled(out.values[cell], V{1}, gb.values[ib]);
    }
    out.breaks = std::move(breaks);
    return out;
  }

  std::map<EdgeId, Profile> profiles_;
};

using EdgeStepFunction = BasicStepFunction<Rational>;
using ComplexStepFunction = BasicStepFunction<std::complex<double>>;

}  // namespace netflow

#endif  // NETFLOW_STEP_FUNCTION_HPP
