#ifndef NETFLOW_GRAPH_HPP
#define NETFLOW_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netflow/matrix.hpp"
#include "netflow/operator.hpp"
#include "netflow/rational.hpp"

namespace netflow {

struct Edge {
  EdgeId id = 0;
  VertexId tail = 0;
  VertexId head = 0;
  Rational weight;
  std::optional<Rational> velocity;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct VelocityBounds {
  Rational min;
  Rational max;

  friend bool operator==(const VelocityBounds&, const VelocityBounds&) = default;
};

/**
 * A finite directed weighted network G = (V, E).
 *
 * Vertex and edge ids are dense, 0-based and equal to their position in the
 * respective list. An edge e = (tail, head) carries mass from tail to head; its
 * weight is the share of the tail's outflow routed into e.
 */
struct GraphSpec {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::optional<VelocityBounds> velocity_bounds;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  bool has_velocities() const;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

enum class ViolationKind {
  kNonDenseId,
  kUnknownVertex,
  kLoop,
  kMultiEdge,
  kDegenerate,
  kNegativeWeight,
  kWeightSum,
  kVelocity,
};

struct Violation {
  ViolationKind kind;
  int id;  // offending vertex or edge id
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool contains(std::string_view text) const;
};

/// Checks simplicity, non-degeneracy, conservative weights and velocity bounds.
ValidationReport validate_graph(const GraphSpec& spec);

/// Raised when an operation requires a valid graph.
class InvalidGraphError : public std::invalid_argument {
 public:
  explicit InvalidGraphError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct IncidenceMatrices {
  RationalMatrix phi_plus;     // vertices x edges, 1 where the vertex is the head
  RationalMatrix phi_minus;    // vertices x edges, 1 where the vertex is the tail
  RationalMatrix phi_w_minus;  // vertices x edges, edge weight at the tail
};

/// Builds the incidence matrices and B = (Φ_w⁻)ᵀ Φ⁺. Throws InvalidGraphError.
std::pair<IncidenceMatrices, ColumnStochasticOperator> build_operators(const GraphSpec& spec);

/// Convenience: just the adjacency operator B.
ColumnStochasticOperator adjacency_operator(const GraphSpec& spec);

/// Strongly connected components of a digraph given by successor lists (Tarjan).
/// Components are listed in reverse topological order of the condensation.
std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& successors);

bool is_strongly_connected(const GraphSpec& spec);

/// Successor lists over vertices.
std::vector<std::vector<int>> vertex_successors(const GraphSpec& spec);

/**
 * Deterministic generator rule for a (possibly infinite) network.
 *
 * Built-ins:
 *  - cycle(n):          the directed n-cycle, unit weights; finite.
 *  - mixed-cycles(a,b): an a-cycle and a b-cycle sharing vertex 0, which splits 1/2 : 1/2; finite.
 *  - ladder:            infinite periodic ladder. Cell i has an outer vertex a_i = 2i and an
 *                       inner vertex b_i = 2i+1 with edges a_i -> a_{i+1} (1),
 *                       b_i -> a_i (1/2, or 1 for i = 0) and b_i -> b_{i-1} (1/2, i >= 1).
 *  - random(n,m):       seeded random simple non-degenerate graph, see random_graph().
 */
struct GraphTemplate {
  std::string name;
  std::vector<int> params;
  std::uint64_t seed = 0;
};

/// Parses "cycle(5)", "mixed-cycles(2,3)", "ladder", "random(6,10)".
GraphTemplate parse_template(std::string_view text);

struct Truncation {
  GraphSpec spec;
  int radius = 0;
  /// Edges created to close the boundary; absent from larger truncations.
  std::vector<EdgeId> wrap_edges;
};

/**
 * Finite truncation of a template at the given radius.
 *
 * For the ladder the outward edge of the last cell a_{r-1} -> a_r is replaced by the
 * wrap edge a_{r-1} -> b_{r-1} with the same weight, so the result stays conservative.
 * All non-wrap vertices and edges keep their ids in every larger truncation.
 * Finite templates ignore the radius. Throws std::invalid_argument for unknown names.
 */
Truncation truncate(const GraphTemplate& tmpl, int radius);

struct RandomGraphOptions {
  int min_vertices = 2;
  int max_vertices = 6;
  int max_edges = 12;
  /// Start from a single Hamiltonian cycle instead of a random derangement.
  bool strongly_connected = false;
};

/// Random valid graph: derangement (or one Hamiltonian cycle) plus extra edges, random weights.
GraphSpec random_graph(std::uint64_t seed, const RandomGraphOptions& options = {});

}  // namespace netflow

#endif  // NETFLOW_GRAPH_HPP
