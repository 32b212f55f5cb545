#ifndef NETFLOW_OPERATOR_HPP
#define NETFLOW_OPERATOR_HPP

#include <stdexcept>
#include <vector>

#include "netflow/matrix.hpp"
#include "netflow/rational.hpp"

namespace netflow {

/**
 * Column-stochastic operator on finitely supported l1 vectors indexed by edges.
 *
 * Entry (i, j) is the fraction of mass leaving edge j that enters edge i.
 * Construction rejects negative entries and columns not summing to exactly 1,
 * so every instance is a contraction of l1 and an isometry on the positive cone.
 */
class ColumnStochasticOperator {
 public:
  explicit ColumnStochasticOperator(RationalMatrix matrix);

  std::size_t dimension() const { return matrix_.cols; }
  const RationalMatrix& matrix() const { return matrix_; }
  const RationalVector& column(EdgeId j) const { return matrix_.columns.at(static_cast<std::size_t>(j)); }

  /// Exact product B·x. Throws std::out_of_range if x has an index outside the dimension.
  template <class V>
  SparseVector<V> apply(const SparseVector<V>& x) const {
    SparseVector<V> y;
    for (const auto& [j, xj] : x) {
      if (j < 0 || static_cast<std::size_t>(j) >= dimension()) {
        throw std::out_of_range("apply: vector index " + std::to_string(j) + " outside operator dimension");
      }
      for (const auto& [i, bij] : matrix_.columns[static_cast<std::size_t>(j)]) {
        V term = from_rational<V>(bij) * xj;
        auto it = y.find(i);
        if (it == y.end()) {
          if (!is_zero(term)) y.emplace(i, std::move(term));
        } else {
          it->second += term;
          if (is_zero(it->second)) y.erase(it);
        }
      }
    }
    return y;
  }

  /// B^n·x by repeated application.
  template <class V>
  SparseVector<V> apply_power(SparseVector<V> x, long n) const {
    if (n < 0) throw std::invalid_argument("apply_power: negative exponent");
    for (long step = 0; step < n && !x.empty(); ++step) x = apply(x);
    return x;
  }

  /// Successor lists of the support digraph: j -> i whenever B_ij != 0.
  std::vector<std::vector<int>> support_successors() const;

  Eigen::MatrixXd dense() const { return to_dense(matrix_); }
  Eigen::SparseMatrix<double> sparse() const { return to_sparse(matrix_); }

  friend bool operator==(const ColumnStochasticOperator&, const ColumnStochasticOperator&) = default;

 private:
  RationalMatrix matrix_;
};

}  // namespace netflow

#endif  // NETFLOW_OPERATOR_HPP
