#ifndef NETFLOW_VELOCITY_HPP
#define NETFLOW_VELOCITY_HPP

#include <vector>

#include "netflow/graph.hpp"
#include "netflow/step_function.hpp"

namespace netflow {

/**
 * Edge subdivision realizing rationally dependent velocities.
 *
 * Edge j (velocity c_j, default 1) becomes a chain of l_j = c / c_j unit edges.
 * Segment r covers the original parameter range [r/l_j, (r+1)/l_j]; segment 0
 * ends at the original head and keeps the original edge id, segment l_j - 1
 * starts at the original tail and carries the original weight. Further segments
 * get fresh ids after the original edges, in (edge, segment) order; interior
 * vertices are appended after the original vertices with pass-through weight 1.
 */
struct SubdivisionMap {
  GraphSpec original;
  Rational c;                              // common multiplier: lcm of velocity numerators
  std::vector<long> segments;              // l_j
  GraphSpec subdivided;                    // velocity-free
  std::vector<std::vector<EdgeId>> index;  // index[j][r] = new edge id

  EdgeId new_edge(EdgeId j, long r) const;
};

/// Throws InvalidGraphError for invalid input, std::overflow_error if the subdivided graph exceeds 10^7 edges.
SubdivisionMap subdivide(const GraphSpec& spec);

/// B^C = C^{-1} B C with C = diag(c_j).
RationalMatrix velocity_conjugated_matrix(const GraphSpec& spec);

/// (Sf) on segment r of edge j: y -> f_j((y + r) / l_j) / l_j. An L1 isometry.
EdgeStepFunction stretch(const SubdivisionMap& map, const EdgeStepFunction& f);
/// Inverse of stretch.
EdgeStepFunction unstretch(const SubdivisionMap& map, const EdgeStepFunction& g);

/// T_C(t) f = S^{-1} T(c t) S f, with T the flow on the subdivided graph. Exact.
EdgeStepFunction conjugated_evaluate_TC(const SubdivisionMap& map, const Rational& t, const EdgeStepFunction& f);

/// Period of T_C: imprimitivity index of the subdivided graph divided by c. Requires strong connectivity.
Rational conjugated_period(const SubdivisionMap& map);

}  // namespace netflow

#endif  // NETFLOW_VELOCITY_HPP
