#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "netflow/io.hpp"

using namespace netflow;

TEST_CASE("graph JSON round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GraphSpec spec = random_graph(seed);
    if (seed % 3 == 0) {
      for (auto& e : spec.edges) e.velocity = ratio(1, static_cast<long>(1 + e.id % 3));
      spec.velocity_bounds = VelocityBounds{ratio(1, 4), Rational(2)};
    }
    const Json doc = graph_to_json(spec);
    CHECK(graph_from_json(Json::parse(doc.dump())) == spec);
  }
  const Json g3 = graph_to_json(fixtures::g3());
  CHECK(g3["edges"][1]["weight"] == "1/2");
}

TEST_CASE("step function and measure JSON round trip") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const EdgeStepFunction f = fixtures::random_step(rng, 5, false);
    CHECK(step_from_json(Json::parse(step_to_json(f).dump())) == f);
    const EdgeMeasure mu = fixtures::random_measure(rng, 5, false);
    CHECK(measure_from_json(Json::parse(measure_to_json(mu).dump())) == mu);
  }
  TestFunction f;
  f.components.emplace(2, PiecewiseLinear({0, ratio(1, 3), 1}, {1, -2, ratio(1, 2)}));
  const TestFunction back = test_function_from_json(test_function_to_json(f));
  CHECK(back.components.at(2).values() == f.components.at(2).values());
}

TEST_CASE("reports re-emit identically") {
  const SubdivisionMap map = subdivide(fixtures::g3());
  const Json sub = subdivision_to_json(map);
  CHECK(Json::parse(sub.dump()) == sub);
  CHECK(graph_from_json(sub["subdivided"]) == map.subdivided);
  const Json spectral = spectral_to_json(spectral_projection(adjacency_operator(fixtures::g3())));
  CHECK(Json::parse(spectral.dump()) == spectral);
  CHECK(spectral["k"] == 1);
}

TEST_CASE("malformed input is reported") {
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges": []})")), InputError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": [0], "edges": [{"id": 0, "tail": 0, "head": 0, "weight": 0.5}]})")),
                  InputError);
  CHECK_THROWS_AS(step_from_json(Json::parse(R"({"edges": {"x": {"breaks": ["0", "1"], "values": ["1"]}}})")),
                  InputError);
  CHECK_THROWS_AS(step_from_json(Json::parse(R"({"edges": {"0": {"breaks": ["0", "1/2"], "values": ["1"]}}})")),
                  InputError);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"edges": {"0": {"atoms": [{"pos": "1", "weight": "1"}]}}})")),
                  InputError);
  CHECK_THROWS_AS(read_json("/nonexistent/graph.json"), InputError);
}

TEST_CASE("float formatting keeps 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
