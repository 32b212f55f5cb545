#ifndef NETFLOW_MEASURE_HPP
#define NETFLOW_MEASURE_HPP

#include <map>
#include <vector>

#include "netflow/operator.hpp"
#include "netflow/step_function.hpp"

namespace netflow {

/**
 * l1-valued measure on [0, 1]: finitely many atoms plus a step density.
 *
 * Atoms sit at positions in [0, 1) and carry an l1 weight vector; the density is
 * an EdgeStepFunction. Zero atoms are never stored, so == is equality of measures.
 */
class EdgeMeasure {
 public:
  EdgeMeasure() = default;
  explicit EdgeMeasure(EdgeStepFunction density) : density_(std::move(density)) {}

  static EdgeMeasure dirac(const Rational& position, EdgeId edge, const Rational& weight = 1);

  /// Adds weight at (position, edge). Throws std::out_of_range unless 0 <= position < 1.
  void add_atom(const Rational& position, EdgeId edge, const Rational& weight);
  void add_atom(const Rational& position, const RationalVector& weight);
  void set_density(EdgeStepFunction density) { density_ = std::move(density); }

  const std::map<Rational, RationalVector>& atoms() const { return atoms_; }
  const EdgeStepFunction& density() const { return density_; }
  bool is_zero() const { return atoms_.empty() && density_.is_zero(); }
  std::vector<EdgeId> active_edges() const;

  EdgeMeasure& operator+=(const EdgeMeasure& other);
  friend EdgeMeasure operator+(EdgeMeasure a, const EdgeMeasure& b) { return a += b; }
  friend EdgeMeasure operator-(const EdgeMeasure& a, const EdgeMeasure& b) { return a + b.scaled(-1); }
  EdgeMeasure scaled(const Rational& factor) const;

  friend bool operator==(const EdgeMeasure&, const EdgeMeasure&) = default;

 private:
  std::map<Rational, RationalVector> atoms_;
  EdgeStepFunction density_;
};

/// Σ_atoms ||w||_1 + ∫ ||density||_1: the total variation |μ|([0, 1]).
Rational variation(const EdgeMeasure& mu);

/// μ restricted to [a, b), or to [a, b] when `closed` is set.
EdgeMeasure restrict(const EdgeMeasure& mu, const Rational& a, const Rational& b, bool closed = false);

/**
 * δ_{-t} * μ: mass at p moves to p - t. Throws std::out_of_range if any mass
 * would leave [0, 1) (atoms) or [0, 1] (density).
 */
EdgeMeasure shift(const EdgeMeasure& mu, const Rational& t);

/// Applies B to every atom weight and density value.
EdgeMeasure apply_matrix(const RationalMatrix& b, const EdgeMeasure& mu);

/**
 * Extended flow S(t), t = n + τ: mass on [τ, 1] moves to p - τ under B^n, mass
 * on [0, τ) moves to p + 1 - τ under B^{n+1}. Throws std::invalid_argument for t < 0.
 */
EdgeMeasure evaluate_S(const ColumnStochasticOperator& b, const Rational& t, const EdgeMeasure& mu);

/// f ↦ f ds
EdgeMeasure embed(const EdgeStepFunction& f);

/// Nilpotent left shift: shift(restrict(μ, [t, 1]), t); zero for t >= 1.
EdgeMeasure nilpotent_shift(const EdgeMeasure& mu, const Rational& t);

/// Continuous piecewise-linear scalar function on [0, 1] given by node values.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<Rational> breaks, std::vector<Rational> values);
  static PiecewiseLinear constant(const Rational& value) { return PiecewiseLinear({0, 1}, {value, value}); }
  /// s ↦ slope·s + offset
  static PiecewiseLinear affine(const Rational& slope, const Rational& offset) {
    return PiecewiseLinear({0, 1}, {offset, slope + offset});
  }

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  Rational at(const Rational& s) const;
  Rational lipschitz() const;
  Rational sup_norm() const;

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

/// Continuous c0-valued test function with finitely many active edges.
struct TestFunction {
  std::map<EdgeId, PiecewiseLinear> components;

  Rational lipschitz() const;  // max over edges
  Rational sup_norm() const;   // sup_s max_j |f_j(s)|
};

/// ∫ ⟨f, dμ⟩, exact.
Rational pair(const TestFunction& f, const EdgeMeasure& mu);

struct ProbeSample {
  Rational t;
  Rational pairing_gap;  // |pair(f, S(t)μ - μ)|
  Rational tv_gap;       // variation(S(t)μ - μ)
  Rational bound;        // Lip(f)·t·|μ| + 2 sup|f|·|μ|([0, t))
};

/// Weak* continuity diagnostic at small times. Requires every t in [0, 1).
std::vector<ProbeSample> weakstar_continuity_probe(const ColumnStochasticOperator& b, const EdgeMeasure& mu,
                                                   const TestFunction& f, const std::vector<Rational>& times);

}  // namespace netflow

#endif  // NETFLOW_MEASURE_HPP
