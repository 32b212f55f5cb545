#ifndef NETFLOW_RESOLVENT_HPP
#define NETFLOW_RESOLVENT_HPP

#include <vector>

#include "netflow/operator.hpp"
#include "netflow/step_function.hpp"

namespace netflow {

/// c · e^{rate s}
struct ExpTerm {
  double rate = 0.0;
  Eigen::VectorXd coefficient;
};

/**
 * Piecewise exponential sum on [0, 1]: on cell [b_i, b_{i+1}) the value is
 * Σ c · e^{rate s} with dense coefficient vectors. Closed under the resolvent,
 * so R(λ)R(μ)f is represented without resampling.
 */
class ExpPiecewise {
 public:
  ExpPiecewise(std::size_t dimension, std::vector<double> breaks, std::vector<std::vector<ExpTerm>> cells);

  static ExpPiecewise from_step(const EdgeStepFunction& f, std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<std::vector<ExpTerm>>& cells() const { return cells_; }

  Eigen::VectorXd at(double s) const;
  /// Upper bound for sup_s ||f(s)||_1.
  double sup_bound() const;

 private:
  std::size_t dimension_;
  std::vector<double> breaks_;
  std::vector<std::vector<ExpTerm>> cells_;
};

struct ResolventResult {
  ExpPiecewise value;
  double tail_bound = 0.0;  // e^{-λN} sup||f|| / (λ (1 - e^{-λ}))
  int series_terms = 0;     // N
};

/**
 * R(λ)f(s) = Σ_{n≥0} e^{-λn} ∫₀¹ e^{-λ(t+1-s)} B^{n+1} f(t) dt + ∫_s¹ e^{λ(s-t)} f(t) dt.
 *
 * Integrals are closed-form per cell; the series stops at the first N whose tail
 * bound is below tol. Throws std::invalid_argument for λ <= 0, tol <= 0, a
 * dimension mismatch, or an input rate within 1e-6 of λ.
 */
ResolventResult resolvent(const ColumnStochasticOperator& b, double lambda, const ExpPiecewise& f, double tol = 1e-12);
ResolventResult resolvent(const ColumnStochasticOperator& b, double lambda, const EdgeStepFunction& f,
                          double tol = 1e-12);

/// Values at each grid point.
std::vector<Eigen::VectorXd> sample(const ExpPiecewise& f, const std::vector<double>& grid);

/// 0, 1/n, ..., 1
std::vector<double> uniform_grid(int intervals);

}  // namespace netflow

#endif  // NETFLOW_RESOLVENT_HPP
