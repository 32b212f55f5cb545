#include "netflow/operator.hpp"

#include <string>

namespace netflow {

ColumnStochasticOperator::ColumnStochasticOperator(RationalMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows != matrix_.cols) throw std::invalid_argument("column-stochastic operator must be square");
  for (std::size_t j = 0; j < matrix_.cols; ++j) {
    Rational sum = 0;
    for (const auto& [i, value] : matrix_.columns[j]) {
      if (value < 0) throw std::invalid_argument("negative entry in column " + std::to_string(j));
      sum += value;
    }
    if (sum != 1) {
      throw std::invalid_argument("column " + std::to_string(j) + " sums to " + to_string(sum) + ", expected 1");
    }
  }
}

std::vector<std::vector<int>> ColumnStochasticOperator::support_successors() const {
  std::vector<std::vector<int>> successors(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) {
    for (const auto& [i, value] : matrix_.columns[j]) successors[j].push_back(i);
  }
  return successors;
}

}  // namespace netflow
