#include "netflow/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netflow {

namespace {

/// ∫_a^b e^{beta t} dt
double exp_integral(double beta, double a, double b) {
  if (beta == 0.0) return b - a;
  return std::exp(beta * a) * std::expm1(beta * (b - a)) / beta;
}

constexpr double kResonanceGap = 1e-6;
constexpr long kMaxSeriesTerms = 10'000'000;

}  // namespace

ExpPiecewise::ExpPiecewise(std::size_t dimension, std::vector<double> breaks, std::vector<std::vector<ExpTerm>> cells)
    : dimension_(dimension), breaks_(std::move(breaks)) {
  if (breaks_.size() < 2 || cells.size() + 1 != breaks_.size()) {
    throw std::invalid_argument("ExpPiecewise: need m+1 breakpoints for m cells");
  }
  if (breaks_.front() != 0.0 || breaks_.back() != 1.0) {
    throw std::invalid_argument("ExpPiecewise: breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) throw std::invalid_argument("ExpPiecewise: breakpoints must increase strictly");
  }
  cells_.reserve(cells.size());
  for (auto& cell : cells) {
    std::vector<ExpTerm> merged;
    for (auto& term : cell) {
      if (static_cast<std::size_t>(term.coefficient.size()) != dimension_) {
        throw std::invalid_argument("ExpPiecewise: coefficient dimension mismatch");
      }
      auto same = std::find_if(merged.begin(), merged.end(), [&](const ExpTerm& t) { return t.rate == term.rate; });
      if (same == merged.end()) {
        merged.push_back(std::move(term));
      } else {
        same->coefficient += term.coefficient;
      }
    }
    cells_.push_back(std::move(merged));
  }
}

ExpPiecewise ExpPiecewise::from_step(const EdgeStepFunction& f, std::size_t dimension) {
  const GridFunction<Rational> grid = f.to_grid();
  std::vector<double> breaks;
  for (const Rational& b : grid.breaks) breaks.push_back(to_double(b));
  std::vector<std::vector<ExpTerm>> cells;
  for (const auto& value : grid.values) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension));
    for (const auto& [edge, x] : value) {
      if (static_cast<std::size_t>(edge) >= dimension) {
        throw std::invalid_argument("ExpPiecewise: edge " + std::to_string(edge) + " outside dimension");
      }
      c(edge) = to_double(x);
    }
    cells.push_back({ExpTerm{0.0, std::move(c)}});
  }
  return ExpPiecewise(dimension, std::move(breaks), std::move(cells));
}

Eigen::VectorXd ExpPiecewise::at(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("ExpPiecewise evaluated outside [0, 1]");
  auto index = static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), s) - breaks_.begin());
  index = std::clamp<std::size_t>(index, 1, cells_.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension_));
  for (const ExpTerm& term : cells_[index - 1]) out += std::exp(term.rate * s) * term.coefficient;
  return out;
}

double ExpPiecewise::sup_bound() const {
  double best = 0.0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    double total = 0.0;
    for (const ExpTerm& term : cells_[i]) {
      const double peak = std::max(std::exp(term.rate * breaks_[i]), std::exp(term.rate * breaks_[i + 1]));
      total += term.coefficient.lpNorm<1>() * peak;
    }
    best = std::max(best, total);
  }
  return best;
}

ResolventResult resolvent(const ColumnStochasticOperator& b, double lambda, const ExpPiecewise& f, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("resolvent: tol must be positive");
  if (f.dimension() != b.dimension()) throw std::invalid_argument("resolvent: dimension mismatch");

  const auto dim = static_cast<Eigen::Index>(b.dimension());
  const auto& breaks = f.breaks();
  const std::size_t m = f.cells().size();

  // piece[j] = ∫ over cell j of e^{-λt} f(t) dt
  std::vector<Eigen::VectorXd> piece(m, Eigen::VectorXd::Zero(dim));
  for (std::size_t j = 0; j < m; ++j) {
    for (const ExpTerm& term : f.cells()[j]) {
      const double beta = term.rate - lambda;
      if (std::abs(beta) < kResonanceGap) {
        throw std::invalid_argument("resolvent: input exponential rate coincides with lambda");
      }
      piece[j] += exp_integral(beta, breaks[j], breaks[j + 1]) * term.coefficient;
    }
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
  for (const auto& p : piece) g += p;

  ResolventResult result{f, 0.0, 0};
  const double f_sup = f.sup_bound();
  const double scale = lambda * (1.0 - std::exp(-lambda));
  Eigen::VectorXd h = Eigen::VectorXd::Zero(dim);
  if (f_sup > 0.0) {
    long terms = std::max(1L, static_cast<long>(std::ceil((std::log(f_sup / scale) - std::log(tol)) / lambda)));
    while (std::exp(-lambda * static_cast<double>(terms)) * f_sup / scale >= tol) ++terms;
    if (terms > kMaxSeriesTerms) throw std::invalid_argument("resolvent: lambda too small for the requested tol");
    const Eigen::SparseMatrix<double> sparse = b.sparse();
    const double damping = std::exp(-lambda);
    Eigen::VectorXd v = sparse * g;
    h = v;
    for (long n = 1; n < terms; ++n) {
      v = damping * (sparse * v);
      h += v;
    }
    result.series_terms = static_cast<int>(terms);
    result.tail_bound = std::exp(-lambda * static_cast<double>(terms)) * f_sup / scale;
  }

  std::vector<std::vector<ExpTerm>> cells(m);
  Eigen::VectorXd later = Eigen::VectorXd::Zero(dim);  // Σ over cells after i
  const Eigen::VectorXd carried = std::exp(-lambda) * h;
  for (std::size_t i = m; i-- > 0;) {
    Eigen::VectorXd principal = carried + later;
    for (const ExpTerm& term : f.cells()[i]) {
      const double beta = term.rate - lambda;
      principal += (std::exp(beta * breaks[i + 1]) / beta) * term.coefficient;
      cells[i].push_back(ExpTerm{term.rate, -term.coefficient / beta});
    }
    cells[i].push_back(ExpTerm{lambda, std::move(principal)});
    later += piece[i];
  }
  result.value = ExpPiecewise(b.dimension(), breaks, std::move(cells));
  return result;
}

ResolventResult resolvent(const ColumnStochasticOperator& b, double lambda, const EdgeStepFunction& f, double tol) {
  return resolvent(b, lambda, ExpPiecewise::from_step(f, b.dimension()), tol);
}

std::vector<Eigen::VectorXd> sample(const ExpPiecewise& f, const std::vector<double>& grid) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(grid.size());
  for (double s : grid) out.push_back(f.at(s));
  return out;
}

std::vector<double> uniform_grid(int intervals) {
  if (intervals < 1) throw std::invalid_argument("uniform_grid: need at least one interval");
  std::vector<double> out;
  for (int i = 0; i <= intervals; ++i) out.push_back(static_cast<double>(i) / intervals);
  return out;
}

}  // namespace netflow
