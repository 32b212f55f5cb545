#include "netflow/matrix.hpp"

#include <stdexcept>

namespace netflow {

Rational RationalMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows || j >= cols) throw std::out_of_range("matrix index out of range");
  const auto& column = columns[j];
  auto it = column.find(static_cast<EdgeId>(i));
  return it == column.end() ? Rational(0) : it->second;
}

void RationalMatrix::set(std::size_t i, std::size_t j, const Rational& value) {
  if (i >= rows || j >= cols) throw std::out_of_range("matrix index out of range");
  auto& column = columns[j];
  if (is_zero(value)) {
    column.erase(static_cast<EdgeId>(i));
  } else {
    column[static_cast<EdgeId>(i)] = value;
  }
}

RationalMatrix multiply_transposed(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows != b.rows) throw std::invalid_argument("multiply_transposed: row counts differ");
  RationalMatrix out(a.cols, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (std::size_t i = 0; i < a.cols; ++i) {
      Rational dot = 0;
      const auto& left = a.columns[i];
      const auto& right = b.columns[j];
      for (const auto& [k, value] : right) {
        auto it = left.find(k);
        if (it != left.end()) dot += it->second * value;
      }
      out.set(i, j, dot);
    }
  }
  return out;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("multiply: inner dimensions differ");
  RationalMatrix out(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (const auto& [k, value] : b.columns[j]) add_scaled(out.columns[j], value, a.columns[static_cast<std::size_t>(k)]);
  }
  return out;
}

Eigen::MatrixXd to_dense(const RationalMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (const auto& [i, value] : m.columns[j]) out(i, static_cast<Eigen::Index>(j)) = value.get_d();
  }
  return out;
}

Eigen::SparseMatrix<double> to_sparse(const RationalMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (const auto& [i, value] : m.columns[j]) triplets.emplace_back(i, static_cast<int>(j), value.get_d());
  }
  Eigen::SparseMatrix<double> out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

double l1_operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace netflow
