#include "netflow/velocity.hpp"

#include <stdexcept>

#include "netflow/flow.hpp"
#include "netflow/spectral.hpp"

namespace netflow {

namespace {

constexpr long kMaxSubdividedEdges = 10'000'000;

Rational velocity_of(const Edge& e) { return e.velocity ? *e.velocity : Rational(1); }

}  // namespace

EdgeId SubdivisionMap::new_edge(EdgeId j, long r) const {
  const auto& chain = index.at(static_cast<std::size_t>(j));
  if (r < 0 || static_cast<std::size_t>(r) >= chain.size()) throw std::out_of_range("segment index out of range");
  return chain[static_cast<std::size_t>(r)];
}

SubdivisionMap subdivide(const GraphSpec& spec) {
  ValidationReport report = validate_graph(spec);
  if (!report.valid()) throw InvalidGraphError(std::move(report));

  SubdivisionMap map;
  map.original = spec;
  mpz_class multiplier = 1;
  for (const Edge& e : spec.edges) {
    const Rational v = velocity_of(e);
    mpz_lcm(multiplier.get_mpz_t(), multiplier.get_mpz_t(), v.get_num_mpz_t());
  }
  map.c = Rational(multiplier);

  long total = 0;
  for (const Edge& e : spec.edges) {
    const Rational l = map.c / velocity_of(e);
    if (l.get_den() != 1 || !l.get_num().fits_slong_p() || l.get_num().get_si() > kMaxSubdividedEdges) {
      throw std::overflow_error("subdivide: segment count too large");
    }
    total += l.get_num().get_si();
    if (total > kMaxSubdividedEdges) throw std::overflow_error("subdivide: subdivided graph too large");
    map.segments.push_back(l.get_num().get_si());
  }

  GraphSpec& out = map.subdivided;
  out.vertices = spec.vertices;
  out.edges.resize(spec.edge_count());
  map.index.resize(spec.edge_count());
  for (std::size_t j = 0; j < spec.edge_count(); ++j) map.index[j].push_back(static_cast<EdgeId>(j));
  for (std::size_t j = 0; j < spec.edge_count(); ++j) {
    for (long r = 1; r < map.segments[j]; ++r) {
      map.index[j].push_back(static_cast<EdgeId>(out.edges.size()));
      out.edges.emplace_back();
    }
  }

  for (std::size_t j = 0; j < spec.edge_count(); ++j) {
    const Edge& e = spec.edges[j];
    const long l = map.segments[j];
    // points[r] is the head of segment r; points[l] is the original tail.
    std::vector<VertexId> points{e.head};
    for (long r = 1; r < l; ++r) {
      points.push_back(static_cast<VertexId>(out.vertices.size()));
      out.vertices.push_back(points.back());
    }
    points.push_back(e.tail);
    for (long r = 0; r < l; ++r) {
      const EdgeId id = map.index[j][static_cast<std::size_t>(r)];
      Edge& segment = out.edges[static_cast<std::size_t>(id)];
      segment.id = id;
      segment.head = points[static_cast<std::size_t>(r)];
      segment.tail = points[static_cast<std::size_t>(r + 1)];
      segment.weight = r == l - 1 ? e.weight : Rational(1);
    }
  }
  return map;
}

RationalMatrix velocity_conjugated_matrix(const GraphSpec& spec) {
  RationalMatrix b = adjacency_operator(spec).matrix();
  for (std::size_t j = 0; j < b.cols; ++j) {
    const Rational cj = velocity_of(spec.edges[j]);
    for (auto& [i, value] : b.columns[j]) value = value * cj / velocity_of(spec.edges[static_cast<std::size_t>(i)]);
  }
  return b;
}

EdgeStepFunction stretch(const SubdivisionMap& map, const EdgeStepFunction& f) {
  EdgeStepFunction out;
  for (const auto& [j, profile] : f.profiles()) {
    if (static_cast<std::size_t>(j) >= map.segments.size()) {
      throw std::out_of_range("stretch: edge " + std::to_string(j) + " not in the original graph");
    }
    const long l = map.segments[static_cast<std::size_t>(j)];
    for (long r = 0; r < l; ++r) {
      const Rational lo = ratio(r, l);
      const Rational hi = ratio(r + 1, l);
      std::vector<Rational> points{lo};
      for (const Rational& b : profile.breaks()) {
        if (b > lo && b < hi) points.push_back(b);
      }
      points.push_back(hi);
      std::vector<Rational> breaks;
      std::vector<Rational> values;
      for (std::size_t i = 0; i < points.size(); ++i) {
        breaks.push_back(points[i] * l - r);
        if (i + 1 < points.size()) values.push_back(profile.at(points[i]) / l);
      }
      out.set(map.new_edge(j, r), EdgeStepFunction::Profile(std::move(breaks), std::move(values)));
    }
  }
  return out;
}

EdgeStepFunction unstretch(const SubdivisionMap& map, const EdgeStepFunction& g) {
  std::vector<std::pair<EdgeId, long>> owner(map.subdivided.edge_count());
  for (std::size_t j = 0; j < map.index.size(); ++j) {
    for (std::size_t r = 0; r < map.index[j].size(); ++r) {
      owner[static_cast<std::size_t>(map.index[j][r])] = {static_cast<EdgeId>(j), static_cast<long>(r)};
    }
  }
  std::vector<char> touched(map.segments.size(), 0);
  for (const auto& [id, profile] : g.profiles()) {
    if (static_cast<std::size_t>(id) >= owner.size()) {
      throw std::out_of_range("unstretch: edge " + std::to_string(id) + " not in the subdivided graph");
    }
    touched[static_cast<std::size_t>(owner[static_cast<std::size_t>(id)].first)] = 1;
  }

  EdgeStepFunction out;
  for (std::size_t j = 0; j < map.segments.size(); ++j) {
    if (!touched[j]) continue;
    const long l = map.segments[j];
    std::vector<Rational> breaks{Rational(0)};
    std::vector<Rational> values;
    for (long r = 0; r < l; ++r) {
      const auto it = g.profiles().find(map.index[j][static_cast<std::size_t>(r)]);
      const EdgeStepFunction::Profile segment = it == g.profiles().end() ? EdgeStepFunction::Profile() : it->second;
      for (std::size_t i = 0; i < segment.piece_count(); ++i) {
        breaks.push_back((segment.breaks()[i + 1] + r) / l);
        values.push_back(segment.values()[i] * l);
      }
    }
    out.set(static_cast<EdgeId>(j), EdgeStepFunction::Profile(std::move(breaks), std::move(values)));
  }
  return out;
}

EdgeStepFunction conjugated_evaluate_TC(const SubdivisionMap& map, const Rational& t, const EdgeStepFunction& f) {
  if (t < 0) throw std::invalid_argument("conjugated_evaluate_TC: negative time");
  const ColumnStochasticOperator b = adjacency_operator(map.subdivided);
  return unstretch(map, evaluate_T(b, map.c * t, stretch(map, f)));
}

Rational conjugated_period(const SubdivisionMap& map) {
  const ColumnStochasticOperator b = adjacency_operator(map.subdivided);
  return Rational(imprimitivity_index(b)) / map.c;
}

}  // namespace netflow
