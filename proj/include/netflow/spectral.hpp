#ifndef NETFLOW_SPECTRAL_HPP
#define NETFLOW_SPECTRAL_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "netflow/graph.hpp"
#include "netflow/operator.hpp"

namespace netflow {

/// True iff the support digraph of B is strongly connected.
bool is_irreducible(const ColumnStochasticOperator& b);

/**
 * Index of imprimitivity k of an irreducible B: the gcd of all directed cycle
 * lengths of the support digraph. Computed from BFS levels as the gcd of
 * |level(u) + 1 - level(v)| over all arcs u -> v. Throws std::invalid_argument
 * for reducible input.
 */
int imprimitivity_index(const ColumnStochasticOperator& b);

struct AttractorCertificate {
  std::vector<VertexId> vertices;  // W, ascending
  int max_length = 0;              // L
  Rational delta;                  // exact minimum over vertices of the summed path weight

  friend bool operator==(const AttractorCertificate&, const AttractorCertificate&) = default;
};

/**
 * Summed weight of all paths of length 1..max_length starting at each vertex
 * and ending in `target`. A path's weight is the product of its edge weights.
 */
std::vector<Rational> attractor_path_weights(const GraphSpec& spec, const std::vector<VertexId>& target, int max_length);

/**
 * Bounded search for an attractor certificate.
 *
 * Candidate sets are tried by increasing size; for each size all subsets are
 * enumerated lexicographically while there are at most 20000 of them, beyond
 * that one greedy candidate is grown by descending in-degree (ties by id). The
 * result has the smallest |W| found, then the smallest L, then the
 * lexicographically smallest W.
 */
std::optional<AttractorCertificate> find_attractor(const GraphSpec& spec, int max_length, int max_size);

/// Power iteration did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

struct SpectralDecomposition {
  int k = 1;
  std::vector<std::complex<double>> peripheral_eigenvalues;  // exp(2πi j / k), j = 0..k-1
  Eigen::MatrixXd projection;                                // P
  double rho = 0.0;         // estimate of r(B restricted to ker P)
  double residual = 0.0;    // certified distance bound ||B^{k m*} - P||_1
  double last_difference = 0.0;  // ||B^{k(m*+1)} - B^{k m*}||_1 at the stopping iterate
  int iterations = 0;       // m*
  int fit_window = 0;       // number of trailing differences used for rho
};

/**
 * Spectral projection onto the peripheral spectrum as the limit of B^{k m}.
 *
 * Iterates M_{m+1} = B^k M_m from M_0 = I until ||M_{m+1} - M_m||_1 < tol and
 * returns P = M_{m*}. rho is the k-th root of the geometric decay rate of the
 * successive differences, fitted by least squares on log differences over the
 * trailing half of the iterates (at most 64). Throws ConvergenceError after
 * max_iter iterations and std::invalid_argument for reducible B.
 */
SpectralDecomposition spectral_projection(const ColumnStochasticOperator& b, int k, double tol = 1e-10,
                                          int max_iter = 200000);

/// Convenience overload computing k first.
SpectralDecomposition spectral_projection(const ColumnStochasticOperator& b, double tol = 1e-10,
                                          int max_iter = 200000);

}  // namespace netflow

#endif  // NETFLOW_SPECTRAL_HPP
