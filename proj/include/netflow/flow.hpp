#ifndef NETFLOW_FLOW_HPP
#define NETFLOW_FLOW_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "netflow/graph.hpp"
#include "netflow/operator.hpp"
#include "netflow/spectral.hpp"
#include "netflow/step_function.hpp"

namespace netflow {

/**
 * Transport semigroup T(t) on step data: T(t)f(s) = B^n f(s + t - n), n = floor(s + t).
 *
 * With t = N + tau, cells at s in [0, 1 - tau) read f at s + tau through B^N and
 * cells in [1 - tau, 1] read f at s + tau - 1 through B^{N+1}. The same evaluator
 * serves L1 and L-infinity data; only the norm differs. Exact when V is Rational.
 */
template <class V>
BasicStepFunction<V> evaluate_T(const ColumnStochasticOperator& b, const Rational& t, const BasicStepFunction<V>& f) {
  if (t < 0) throw std::invalid_argument("evaluate_T: negative time");
  for (EdgeId edge : f.active_edges()) {
    if (static_cast<std::size_t>(edge) >= b.dimension()) {
      throw std::out_of_range("evaluate_T: edge " + std::to_string(edge) + " outside operator dimension");
    }
  }
  if (f.is_zero()) return f;

  const long whole = floor_to_long(t);
  const Rational tau = t - whole;
  const GridFunction<V> grid = f.to_grid();

  struct Cell {
    Rational lo;
    Rational hi;
    SparseVector<V> value;
  };
  std::vector<Cell> cells;
  cells.reserve(grid.values.size() + 1);
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const Rational& lo = grid.breaks[i];
    const Rational& hi = grid.breaks[i + 1];
    SparseVector<V> stay = b.apply_power(grid.values[i], whole);
    if (hi <= tau) {
      cells.push_back({lo + 1 - tau, hi + 1 - tau, b.apply(stay)});
    } else if (lo >= tau) {
      cells.push_back({lo - tau, hi - tau, std::move(stay)});
    } else {
      cells.push_back({lo + 1 - tau, Rational(1), b.apply(stay)});
      cells.push_back({Rational(0), hi - tau, std::move(stay)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& c) { return a.lo < c.lo; });

  GridFunction<V> out;
  out.breaks.push_back(Rational(0));
  for (auto& cell : cells) {
    out.breaks.push_back(cell.hi);
    out.values.push_back(std::move(cell.value));
  }
  return BasicStepFunction<V>::from_grid(out);
}

/**
 * Cached powers for the asymptotic-periodicity defect.
 *
 * defect(t) = max(||B^n (I - P)||_1, ||B^{n+1} (I - P)||_1), n = floor(t): the
 * computable bound for ||T(t)(I - M_P)|| used throughout.
 */
class DefectEvaluator {
 public:
  DefectEvaluator(const ColumnStochasticOperator& b, const Eigen::MatrixXd& projection);

  /// ||B^n (I - P)||_1
  double power_norm(long n);
  double defect(const Rational& t);

 private:
  Eigen::SparseMatrix<double> sparse_;
  Eigen::MatrixXd current_;  // B^{norms_.size()-1} (I - P)
  std::vector<double> norms_;
};

double defect(const ColumnStochasticOperator& b, const Eigen::MatrixXd& projection, const Rational& t);

struct PeriodicityReport {
  int k = 1;
  Rational theta;  // period in units of one edge traversal
  double rho = 0.0;
  double residual = 0.0;
  std::vector<std::pair<Rational, double>> samples;  // (t, defect(t))
  std::optional<double> fitted_rate;                 // slope of log defect
  int fitted_points = 0;
  double accuracy_floor = 0.0;  // samples at or below are excluded from the fit
  bool monotone = true;         // defect nonincreasing along multiples of k (1e-12 slack)
  bool pass = false;
  std::optional<AttractorCertificate> attractor;
  std::string note;
};

/**
 * Period and decay diagnostics for T on a strongly connected finite graph.
 *
 * theta = k; defect sampled at `times`; log defect is fitted by least squares
 * over the second half of the samples, skipping samples below the projection's
 * accuracy floor (100 x residual). Passes iff the fitted rate is at most
 * log(rho) + 0.05, or the defect is below the floor throughout the fit window.
 * Throws std::invalid_argument for reducible graphs.
 */
PeriodicityReport periodicity_report(const GraphSpec& spec, const std::vector<Rational>& times, double tol = 1e-12);

struct EigenflowResult {
  double max_deviation = 0.0;        // max_t ||T(t)f - e^{lambda t} f||_1 / ||f||_1
  double approximation_bound = 0.0;  // allowance from the step approximation and eigenpair residual
  double eigen_residual = 0.0;       // ||Bv - e^lambda v||_1
};

/**
 * Checks T(t)(e^{lambda s} v) = e^{lambda t} e^{lambda s} v on a time grid, with
 * e^{lambda s} v replaced by its midpoint step approximation on `pieces` cells.
 * Throws std::invalid_argument unless ||Bv - e^lambda v||_1 <= 1e-10 max(1, ||v||_1).
 */
EigenflowResult eigenflow_check(const ColumnStochasticOperator& b, std::complex<double> lambda,
                                const Eigen::VectorXcd& v, const std::vector<Rational>& times, int pieces = 256);

}  // namespace netflow

#endif  // NETFLOW_FLOW_HPP
