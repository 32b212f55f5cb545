#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "netflow/spectral.hpp"

using namespace netflow;

using oracles::cycle_gcd;
using oracles::eigen_moduli;
using oracles::enumerate_paths;

TEST_CASE("imprimitivity index on named graphs") {
  CHECK(imprimitivity_index(adjacency_operator(fixtures::g2())) == 2);
  CHECK(imprimitivity_index(adjacency_operator(fixtures::g3())) == 1);
  CHECK(imprimitivity_index(adjacency_operator(fixtures::cycle(3))) == 3);
  CHECK(imprimitivity_index(adjacency_operator(truncate(parse_template("mixed-cycles(2,4)"), 1).spec)) == 2);
  for (int r = 1; r <= 5; ++r) {
    CHECK(imprimitivity_index(adjacency_operator(truncate(parse_template("ladder"), r).spec)) == 2);
  }
}

TEST_CASE("reducible operators are rejected") {
  const auto g = fixtures::make_graph(4, {{0, 1, "1"}, {1, 0, "1/2"}, {1, 2, "1/2"}, {2, 3, "1"}, {3, 2, "1"}});
  const auto b = adjacency_operator(g);
  CHECK_FALSE(is_irreducible(b));
  CHECK_THROWS_AS(imprimitivity_index(b), std::invalid_argument);
  CHECK_THROWS_AS(spectral_projection(b), std::invalid_argument);
}

TEST_CASE("irreducibility matches graph strong connectivity") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const GraphSpec spec = random_graph(seed, RandomGraphOptions{2, 6, 11, false});
    CHECK(is_irreducible(adjacency_operator(spec)) == is_strongly_connected(spec));
  }
}

TEST_CASE("imprimitivity index matches closed-walk gcd and eigenvalue count") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const GraphSpec spec = random_graph(seed, RandomGraphOptions{2, 6, 12, true});
    const auto b = adjacency_operator(spec);
    const int k = imprimitivity_index(b);
    CHECK(k == cycle_gcd(b));
    const auto moduli = eigen_moduli(b.dense());
    CHECK(std::count_if(moduli.begin(), moduli.end(), [](double m) { return m > 1.0 - 1e-6; }) == k);
  }
}

TEST_CASE("G3 projection is the stationary outer product") {
  const auto b = adjacency_operator(fixtures::g3());
  const RationalVector pi{{0, ratio(2, 5)}, {1, ratio(1, 5)}, {2, ratio(1, 5)}, {3, ratio(1, 5)}};
  CHECK(b.apply(pi) == pi);

  const SpectralDecomposition d = spectral_projection(b, 1e-12);
  CHECK(d.k == 1);
  Eigen::MatrixXd expected(4, 4);
  for (int i = 0; i < 4; ++i) expected.row(i).setConstant(to_double(pi.at(i)));
  CHECK(l1_operator_norm(d.projection - expected) < 1e-10);
  CHECK(d.residual >= d.last_difference);
  // Subdominant modulus from the eigen oracle: |-1/2 ± i/2| = 1/sqrt(2).
  const auto moduli = eigen_moduli(b.dense());
  CHECK(d.rho == doctest::Approx(moduli[1]).epsilon(1e-3));
  CHECK(moduli[1] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("G2 projection is the identity with rho 0") {
  const SpectralDecomposition d = spectral_projection(adjacency_operator(fixtures::g2()));
  CHECK(d.k == 2);
  CHECK(d.peripheral_eigenvalues.size() == 2);
  CHECK(d.peripheral_eigenvalues[1].real() == doctest::Approx(-1.0));
  CHECK(l1_operator_norm(d.projection - Eigen::MatrixXd::Identity(2, 2)) == 0.0);
  CHECK(d.rho == 0.0);
}

TEST_CASE("projection is idempotent, positive and commutes with B") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = adjacency_operator(random_graph(seed, RandomGraphOptions{2, 6, 12, true}));
    const SpectralDecomposition d = spectral_projection(b, 1e-11);
    const Eigen::MatrixXd& p = d.projection;
    const Eigen::MatrixXd bd = b.dense();
    CHECK(l1_operator_norm(p * p - p) < 1e-8);
    CHECK(l1_operator_norm(bd * p - p * bd) < 1e-8);
    CHECK(p.minCoeff() > -1e-12);
    for (Eigen::Index j = 0; j < p.cols(); ++j) CHECK(p.col(j).sum() == doctest::Approx(1.0));
    // B^k P = P: minimal such power is k.
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(p.rows(), p.cols());
    for (int m = 1; m <= d.k; ++m) {
      power = bd * power;
      CHECK((l1_operator_norm(power * p - p) < 1e-8) == (m == d.k));
    }
  }
}

TEST_CASE("power iteration reports non-convergence") {
  const auto b = adjacency_operator(fixtures::g3());
  CHECK_THROWS_AS(spectral_projection(b, 1, 1e-14, 3), ConvergenceError);
  CHECK_THROWS_AS(spectral_projection(b, 0), std::invalid_argument);
}

TEST_CASE("G3 attractor certificate") {
  const auto certificate = find_attractor(fixtures::g3(), 4, 1);
  REQUIRE(certificate);
  CHECK(certificate->vertices == std::vector<VertexId>{0});
  CHECK(certificate->max_length == 2);
  CHECK(certificate->delta == ratio(1, 2));
}

TEST_CASE("cycle attractor needs a full lap") {
  const auto certificate = find_attractor(fixtures::cycle(3), 3, 1);
  REQUIRE(certificate);
  CHECK(certificate->max_length == 3);
  CHECK(certificate->delta == 1);
  CHECK_FALSE(find_attractor(fixtures::cycle(3), 2, 1));
}

TEST_CASE("attractor weights match exhaustive path enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GraphSpec spec = random_graph(seed, RandomGraphOptions{2, 5, 9, true});
    const auto certificate = find_attractor(spec, static_cast<int>(spec.vertex_count()), 1);
    REQUIRE(certificate);
    std::vector<char> in_target(spec.vertex_count(), 0);
    for (VertexId v : certificate->vertices) in_target[static_cast<std::size_t>(v)] = 1;
    Rational delta = -1;
    for (std::size_t v = 0; v < spec.vertex_count(); ++v) {
      const Rational total =
          enumerate_paths(spec, static_cast<VertexId>(v), in_target, certificate->max_length);
      CHECK(total > 0);
      if (delta < 0 || total < delta) delta = total;
    }
    CHECK(delta == certificate->delta);
    const auto weights = attractor_path_weights(spec, certificate->vertices, certificate->max_length);
    CHECK(*std::min_element(weights.begin(), weights.end()) == certificate->delta);
  }
}
