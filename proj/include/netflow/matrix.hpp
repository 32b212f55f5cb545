#ifndef NETFLOW_MATRIX_HPP
#define NETFLOW_MATRIX_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

#include "netflow/rational.hpp"

namespace netflow {

/// Sparse exact matrix stored by columns; row indices are the keys of each column.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RationalVector> columns;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  Rational at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& value);

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

/// Returns Aᵀ·B.
RationalMatrix multiply_transposed(const RationalMatrix& a, const RationalMatrix& b);

/// Returns A·B.
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

Eigen::MatrixXd to_dense(const RationalMatrix& m);
Eigen::SparseMatrix<double> to_sparse(const RationalMatrix& m);

/// Max column sum of absolute values (the l1 operator norm).
double l1_operator_norm(const Eigen::MatrixXd& m);

}  // namespace netflow

#endif  // NETFLOW_MATRIX_HPP
