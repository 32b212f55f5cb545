#ifndef NETFLOW_TESTS_FIXTURES_HPP
#define NETFLOW_TESTS_FIXTURES_HPP

#include <random>
#include <tuple>
#include <vector>

#include "netflow/graph.hpp"
#include "netflow/measure.hpp"
#include "netflow/step_function.hpp"

namespace fixtures {

using netflow::EdgeStepFunction;
using netflow::GraphSpec;
using netflow::Rational;
using netflow::ratio;

inline GraphSpec make_graph(int vertices, const std::vector<std::tuple<int, int, const char*>>& edges) {
  GraphSpec spec;
  for (int v = 0; v < vertices; ++v) spec.vertices.push_back(v);
  int id = 0;
  for (const auto& [tail, head, weight] : edges) {
    spec.edges.push_back(netflow::Edge{id++, tail, head, netflow::parse_rational(weight), std::nullopt});
  }
  return spec;
}

// v1 -> v2 (e1), v2 -> v1 (e2)
inline GraphSpec g2() { return make_graph(2, {{0, 1, "1"}, {1, 0, "1"}}); }

// v1 -> v2 (e1, 1), v2 -> v1 (e2, 1/2), v2 -> v3 (e3, 1/2), v3 -> v1 (e4, 1)
inline GraphSpec g3() { return make_graph(3, {{0, 1, "1"}, {1, 0, "1/2"}, {1, 2, "1/2"}, {2, 0, "1"}}); }

inline GraphSpec cycle(int n) { return netflow::truncate(netflow::parse_template("cycle(" + std::to_string(n) + ")"), 1).spec; }

/// Rational in [lo, hi] with denominator dividing `den`.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int den = 12) {
  const Rational span = (hi - lo) * den;
  const long steps = netflow::floor_to_long(span);
  std::uniform_int_distribution<long> pick(0, steps);
  return lo + ratio(pick(rng), den);
}

/// Random step profile with up to `pieces` cells; values in [-3, 3] or [0, 3].
inline EdgeStepFunction::Profile random_profile(std::mt19937_64& rng, int pieces, bool nonnegative) {
  std::uniform_int_distribution<int> count(1, pieces);
  std::uniform_int_distribution<int> numerator(nonnegative ? 0 : -6, 6);
  std::vector<Rational> breaks{Rational(0)};
  const int m = count(rng);
  std::vector<Rational> cuts;
  for (int i = 1; i < m; ++i) cuts.push_back(random_rational(rng, ratio(1, 24), ratio(23, 24), 24));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  breaks.insert(breaks.end(), cuts.begin(), cuts.end());
  breaks.push_back(Rational(1));
  std::vector<Rational> values;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) values.push_back(ratio(numerator(rng), 2));
  return EdgeStepFunction::Profile(std::move(breaks), std::move(values));
}

inline EdgeStepFunction random_step(std::mt19937_64& rng, std::size_t edges, bool nonnegative, int pieces = 4) {
  EdgeStepFunction f;
  std::bernoulli_distribution active(0.6);
  for (std::size_t j = 0; j < edges; ++j) {
    if (active(rng)) f.set(static_cast<int>(j), random_profile(rng, pieces, nonnegative));
  }
  return f;
}

/// Atoms at random positions in [0, 1) plus a random density.
inline netflow::EdgeMeasure random_measure(std::mt19937_64& rng, std::size_t edges, bool nonnegative) {
  netflow::EdgeMeasure mu(random_step(rng, edges, nonnegative));
  std::uniform_int_distribution<int> atoms(0, 4);
  std::uniform_int_distribution<std::size_t> edge(0, edges - 1);
  std::uniform_int_distribution<int> numerator(nonnegative ? 1 : -4, 4);
  for (int i = atoms(rng); i > 0; --i) {
    mu.add_atom(random_rational(rng, Rational(0), ratio(23, 24), 24), static_cast<int>(edge(rng)),
                ratio(numerator(rng), 2));
  }
  return mu;
}

}  // namespace fixtures

#endif  // NETFLOW_TESTS_FIXTURES_HPP
