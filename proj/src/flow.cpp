#include "netflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netflow {

DefectEvaluator::DefectEvaluator(const ColumnStochasticOperator& b, const Eigen::MatrixXd& projection)
    : sparse_(b.sparse()) {
  const auto dim = static_cast<Eigen::Index>(b.dimension());
  if (projection.rows() != dim || projection.cols() != dim) {
    throw std::invalid_argument("defect: projection shape does not match operator dimension");
  }
  current_ = Eigen::MatrixXd::Identity(dim, dim) - projection;
  norms_.push_back(l1_operator_norm(current_));
}

double DefectEvaluator::power_norm(long n) {
  if (n < 0) throw std::invalid_argument("defect: negative power");
  while (static_cast<long>(norms_.size()) <= n) {
    current_ = sparse_ * current_;
    norms_.push_back(l1_operator_norm(current_));
  }
  return norms_[static_cast<std::size_t>(n)];
}

double DefectEvaluator::defect(const Rational& t) {
  if (t < 0) throw std::invalid_argument("defect: negative time");
  const long n = floor_to_long(t);
  const double next = power_norm(n + 1);
  return std::max(norms_[static_cast<std::size_t>(n)], next);
}

double defect(const ColumnStochasticOperator& b, const Eigen::MatrixXd& projection, const Rational& t) {
  DefectEvaluator evaluator(b, projection);
  return evaluator.defect(t);
}

PeriodicityReport periodicity_report(const GraphSpec& spec, const std::vector<Rational>& times, double tol) {
  const ColumnStochasticOperator b = adjacency_operator(spec);
  if (!is_irreducible(b)) throw std::invalid_argument("periodicity_report: graph is not strongly connected");

  PeriodicityReport report;
  report.k = imprimitivity_index(b);
  report.theta = report.k;
  const SpectralDecomposition decomposition = spectral_projection(b, report.k, tol);
  report.rho = decomposition.rho;
  report.residual = decomposition.residual;
  report.accuracy_floor = 100.0 * decomposition.residual;
  report.attractor = find_attractor(spec, static_cast<int>(spec.vertex_count()), 1);
  report.note = "finite strongly connected graph: B is quasi-compact, an attractor always exists";

  DefectEvaluator evaluator(b, decomposition.projection);
  for (const Rational& t : times) report.samples.emplace_back(t, evaluator.defect(t));

  std::optional<double> previous;
  for (const auto& [t, value] : report.samples) {
    if (t.get_den() != 1 || t.get_num() % report.k != 0) continue;
    if (previous && value > *previous + 1e-12) report.monotone = false;
    previous = value;
  }

  std::vector<std::pair<double, double>> points;
  bool any_above_floor = false;
  for (std::size_t i = report.samples.size() / 2; i < report.samples.size(); ++i) {
    const auto& [t, value] = report.samples[i];
    if (value > report.accuracy_floor) {
      any_above_floor = true;
      points.emplace_back(to_double(t), std::log(value));
    }
  }
  report.fitted_points = static_cast<int>(points.size());
  if (points.size() >= 2) {
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : points) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx > 0) report.fitted_rate = sxy / sxx;
  }

  if (report.fitted_rate) {
    const double log_rho = report.rho > 0 ? std::log(report.rho) : -std::numeric_limits<double>::infinity();
    report.pass = *report.fitted_rate <= log_rho + 0.05;
  } else {
    report.pass = !any_above_floor;
  }
  return report;
}

EigenflowResult eigenflow_check(const ColumnStochasticOperator& b, std::complex<double> lambda,
                                const Eigen::VectorXcd& v, const std::vector<Rational>& times, int pieces) {
  using C = std::complex<double>;
  if (static_cast<std::size_t>(v.size()) != b.dimension()) {
    throw std::invalid_argument("eigenflow_check: eigenvector dimension mismatch");
  }
  if (pieces < 1) throw std::invalid_argument("eigenflow_check: need at least one piece");

  const Eigen::SparseMatrix<std::complex<double>> bc = b.sparse().cast<C>();
  const C multiplier = std::exp(lambda);
  const double v_norm = v.cwiseAbs().sum();
  EigenflowResult result;
  result.eigen_residual = (bc * v - multiplier * v).cwiseAbs().sum();
  if (result.eigen_residual > 1e-10 * std::max(1.0, v_norm)) {
    throw std::invalid_argument("eigenflow_check: (lambda, v) is not an eigenpair of e^lambda for B");
  }
  if (v_norm == 0.0) return result;

  SparseVector<C> base;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != C{}) base.emplace(static_cast<EdgeId>(i), v(i));
  }

  GridFunction<C> grid;
  const double h = 1.0 / pieces;
  double approximation_error = 0.0;  // bound on ||f - f_step||_1
  for (int i = 0; i <= pieces; ++i) grid.breaks.push_back(ratio(i, pieces));
  for (int i = 0; i < pieces; ++i) {
    const C factor = std::exp(lambda * ((i + 0.5) * h));
    SparseVector<C> cell;
    add_scaled(cell, factor, base);
    grid.values.push_back(std::move(cell));
    const double peak = std::max(std::exp(lambda.real() * i * h), std::exp(lambda.real() * (i + 1) * h));
    approximation_error += h * v_norm * std::abs(lambda) * (h / 2) * peak;
  }
  const ComplexStepFunction f = ComplexStepFunction::from_grid(grid);
  const double f_norm = f.l1_norm();

  const double growth = std::max(1.0, std::abs(multiplier));
  const double profile_peak = std::max(1.0, std::exp(lambda.real()));
  for (const Rational& t : times) {
    const C factor = std::exp(lambda * to_double(t));
    const ComplexStepFunction moved = evaluate_T(b, t, f);
    const double deviation = (moved - f.scaled(factor)).l1_norm() / f_norm;
    result.max_deviation = std::max(result.max_deviation, deviation);

    const double steps = std::floor(to_double(t)) + 2.0;
    const double residual_part = result.eigen_residual * steps * std::pow(growth, steps) * profile_peak;
    const double bound = ((1.0 + std::abs(factor)) * approximation_error + residual_part) / f_norm;
    result.approximation_bound = std::max(result.approximation_bound, bound);
  }
  return result;
}

}  // namespace netflow
