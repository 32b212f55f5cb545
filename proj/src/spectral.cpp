#include "netflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>

namespace netflow {

bool is_irreducible(const ColumnStochasticOperator& b) {
  if (b.dimension() == 0) return false;
  return strongly_connected_components(b.support_successors()).size() == 1;
}

int imprimitivity_index(const ColumnStochasticOperator& b) {
  if (!is_irreducible(b)) throw std::invalid_argument("imprimitivity_index: operator is reducible");
  const auto successors = b.support_successors();
  std::vector<long> level(successors.size(), -1);
  std::deque<int> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : successors[static_cast<std::size_t>(u)]) {
      if (level[static_cast<std::size_t>(v)] == -1) {
        level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  long k = 0;
  for (std::size_t u = 0; u < successors.size(); ++u) {
    for (int v : successors[u]) k = std::gcd(k, std::labs(level[u] + 1 - level[static_cast<std::size_t>(v)]));
  }
  return static_cast<int>(k);
}

std::vector<Rational> attractor_path_weights(const GraphSpec& spec, const std::vector<VertexId>& target,
                                             int max_length) {
  const std::size_t n = spec.vertex_count();
  std::vector<char> in_target(n, 0);
  for (VertexId v : target) in_target.at(static_cast<std::size_t>(v)) = 1;

  // exact[v]: summed weight of paths of the current length from v ending in W
  std::vector<Rational> exact(n, Rational(0));
  for (std::size_t v = 0; v < n; ++v) exact[v] = in_target[v] ? 1 : 0;
  std::vector<Rational> total(n, Rational(0));
  for (int length = 1; length <= max_length; ++length) {
    std::vector<Rational> next(n, Rational(0));
    for (const Edge& e : spec.edges) {
      next[static_cast<std::size_t>(e.tail)] += e.weight * exact[static_cast<std::size_t>(e.head)];
    }
    exact = std::move(next);
    for (std::size_t v = 0; v < n; ++v) total[v] += exact[v];
  }
  return total;
}

namespace {

struct Candidate {
  int length;
  Rational delta;
};

std::optional<Candidate> certify(const GraphSpec& spec, const std::vector<VertexId>& target, int max_length) {
  const std::size_t n = spec.vertex_count();
  std::vector<char> in_target(n, 0);
  for (VertexId v : target) in_target[static_cast<std::size_t>(v)] = 1;
  std::vector<Rational> exact(n);
  for (std::size_t v = 0; v < n; ++v) exact[v] = in_target[v] ? 1 : 0;
  std::vector<Rational> total(n, Rational(0));
  for (int length = 1; length <= max_length; ++length) {
    std::vector<Rational> next(n, Rational(0));
    for (const Edge& e : spec.edges) {
      next[static_cast<std::size_t>(e.tail)] += e.weight * exact[static_cast<std::size_t>(e.head)];
    }
    exact = std::move(next);
    for (std::size_t v = 0; v < n; ++v) total[v] += exact[v];
    if (std::all_of(total.begin(), total.end(), [](const Rational& x) { return sgn(x) > 0; })) {
      return Candidate{length, *std::min_element(total.begin(), total.end())};
    }
  }
  return std::nullopt;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

constexpr double kExhaustiveSubsetLimit = 20000.0;

}  // namespace

std::optional<AttractorCertificate> find_attractor(const GraphSpec& spec, int max_length, int max_size) {
  ValidationReport report = validate_graph(spec);
  if (!report.valid()) throw InvalidGraphError(std::move(report));
  const int n = static_cast<int>(spec.vertex_count());
  max_size = std::min(max_size, n);

  for (int size = 1; size <= max_size; ++size) {
    std::optional<AttractorCertificate> best;
    auto consider = [&](const std::vector<VertexId>& w) {
      auto c = certify(spec, w, best ? std::min(max_length, best->max_length) : max_length);
      if (!c) return;
      if (!best || c->length < best->max_length) best = AttractorCertificate{w, c->length, c->delta};
    };

    if (binomial(n, size) <= kExhaustiveSubsetLimit) {
      std::vector<VertexId> w(static_cast<std::size_t>(size));
      std::iota(w.begin(), w.end(), 0);
      while (true) {
        consider(w);
        int i = size - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == n - size + i) --i;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)] + 1;
      }
    } else {
      std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
      for (const Edge& e : spec.edges) ++in_degree[static_cast<std::size_t>(e.head)];
      std::vector<VertexId> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return in_degree[static_cast<std::size_t>(a)] > in_degree[static_cast<std::size_t>(b)];
      });
      std::vector<VertexId> w(order.begin(), order.begin() + size);
      std::sort(w.begin(), w.end());
      consider(w);
    }
    if (best) return best;
  }
  return std::nullopt;
}

SpectralDecomposition spectral_projection(const ColumnStochasticOperator& b, int k, double tol, int max_iter) {
  if (!is_irreducible(b)) throw std::invalid_argument("spectral_projection: operator is reducible");
  if (k < 1) throw std::invalid_argument("spectral_projection: k must be positive");
  if (!(tol > 0)) throw std::invalid_argument("spectral_projection: tol must be positive");

  const auto dim = static_cast<Eigen::Index>(b.dimension());
  const Eigen::SparseMatrix<double> sparse = b.sparse();
  Eigen::MatrixXd current = Eigen::MatrixXd::Identity(dim, dim);
  std::vector<double> differences;

  double difference = 0.0;
  int m = 0;
  while (true) {
    if (m >= max_iter) {
      throw ConvergenceError("spectral_projection: no convergence after " + std::to_string(max_iter) +
                                 " iterations (last difference " + std::to_string(difference) + ")",
                             difference, m);
    }
    Eigen::MatrixXd next = current;
    for (int step = 0; step < k; ++step) next = sparse * next;
    difference = l1_operator_norm(next - current);
    differences.push_back(difference);
    current = std::move(next);
    ++m;
    if (difference < tol) break;
  }

  SpectralDecomposition out;
  out.k = k;
  for (int j = 0; j < k; ++j) out.peripheral_eigenvalues.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / k));
  out.projection = std::move(current);
  out.iterations = m;
  out.last_difference = difference;

  // Least-squares slope of log d_m over the trailing half of positive differences.
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < differences.size(); ++i) {
    if (differences[i] > 0) points.emplace_back(static_cast<double>(i), std::log(differences[i]));
  }
  if (difference == 0.0 || points.size() < 2) {
    out.rho = 0.0;
    out.fit_window = 0;
  } else {
    const std::size_t window = std::clamp<std::size_t>(points.size() / 2, 2, 64);
    std::vector<std::pair<double, double>> tail(points.end() - static_cast<std::ptrdiff_t>(window), points.end());
    double mx = 0, my = 0;
    for (const auto& [x, y] : tail) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(tail.size());
    my /= static_cast<double>(tail.size());
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : tail) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    const double slope = sxy / sxx;
    out.rho = std::clamp(std::exp(slope / k), 0.0, 1.0 - 1e-15);
    out.fit_window = static_cast<int>(window);
  }

  const double q = std::pow(out.rho, k);
  const double tail_bound = q < 1.0 ? difference * q / (1.0 - q) : difference;
  out.residual = std::max({difference, tail_bound, 1e-15 * static_cast<double>(dim)});
  return out;
}

SpectralDecomposition spectral_projection(const ColumnStochasticOperator& b, double tol, int max_iter) {
  return spectral_projection(b, imprimitivity_index(b), tol, max_iter);
}

}  // namespace netflow
