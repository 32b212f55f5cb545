// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "netflow/flow.hpp"
#include "netflow/measure.hpp"
#include "netflow/resolvent.hpp"
#include "netflow/spectral.hpp"
#include "netflow/velocity.hpp"
#include "oracles.hpp"

using namespace netflow;
using Profile = EdgeStepFunction::Profile;

namespace {

// Pinned tolerances.
constexpr double kPeripheralModulus = 1.0 - 1e-6;  // criterion 3a
constexpr double kPeriodResidual = 1e-8;           // criterion 3b
constexpr double kProjectionTol = 1e-13;           // criteria 3, 4
constexpr double kSlopeTolerance = 0.05;           // criterion 4
constexpr double kLaplaceTolerance = 1e-6;         // criterion 5
constexpr double kPerronTolerance = 1e-8;          // criterion 5
constexpr double kSeriesTol = 1e-12;               // criterion 5

struct Outcome {
  bool pass = true;
  std::string detail;
};

const RandomGraphOptions kSmall{2, 6, 12, false};
const RandomGraphOptions kSmallConnected{2, 6, 12, true};

Outcome semigroup_law() {
  std::mt19937_64 rng(1001);
  int cases = 0;
  for (std::uint64_t g = 0; g < 50; ++g) {
    const GraphSpec spec = random_graph(g, kSmall);
    const auto b = adjacency_operator(spec);
    for (int pair = 0; pair < 20; ++pair) {
      const EdgeStepFunction f = fixtures::random_step(rng, spec.edge_count(), false);
      const Rational s = fixtures::random_rational(rng, 0, 4, 30);
      const Rational t = fixtures::random_rational(rng, 0, 4, 30);
      ++cases;
      if (!(evaluate_T(b, s, evaluate_T(b, t, f)) == evaluate_T(b, s + t, f))) {
        return {false, "mismatch on graph seed " + std::to_string(g)};
      }
    }
  }
  return {true, std::to_string(cases) + " exact cases"};
}

Outcome contraction() {
  std::mt19937_64 rng(1002);
  int cases = 0;
  for (std::uint64_t g = 0; g < 50; ++g) {
    const GraphSpec spec = random_graph(1000 + g, kSmall);
    const auto b = adjacency_operator(spec);
    for (int trial = 0; trial < 10; ++trial) {
      const bool nonnegative = trial % 2 == 0;
      const Rational t = fixtures::random_rational(rng, 0, 6, 30);
      const EdgeStepFunction f = fixtures::random_step(rng, spec.edge_count(), nonnegative);
      const Rational before = f.l1_norm();
      const Rational after = evaluate_T(b, t, f).l1_norm();
      if (nonnegative ? after != before : after > before) return {false, "step norm on graph " + std::to_string(g)};
      const EdgeMeasure mu = fixtures::random_measure(rng, spec.edge_count(), nonnegative);
      if (variation(evaluate_S(b, t, mu)) > variation(mu)) return {false, "variation on graph " + std::to_string(g)};
      cases += 2;
    }
  }
  return {true, std::to_string(cases) + " exact cases"};
}

Outcome period_check() {
  int cases = 0;
  for (std::uint64_t g = 0; g < 30; ++g) {
    const auto b = adjacency_operator(random_graph(2000 + g, kSmallConnected));
    const int k = imprimitivity_index(b);
    const auto moduli = oracles::eigen_moduli(b.dense());
    const auto peripheral = std::count_if(moduli.begin(), moduli.end(), [](double m) { return m > kPeripheralModulus; });
    const Eigen::MatrixXd p = spectral_projection(b, k, kProjectionTol).projection;
    const Eigen::MatrixXd bd = b.dense();
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(bd.rows(), bd.cols());
    int minimal = 0;
    for (int m = 1; m <= static_cast<int>(b.dimension()) && minimal == 0; ++m) {
      power = bd * power;
      if (l1_operator_norm(power * p - p) < kPeriodResidual) minimal = m;
    }
    ++cases;
    if (peripheral != k || minimal != k || oracles::cycle_gcd(b) != k) {
      return {false, "graph " + std::to_string(2000 + g) + ": k=" + std::to_string(k) + " eigen=" +
                         std::to_string(peripheral) + " minimal m=" + std::to_string(minimal)};
    }
  }
  return {true, std::to_string(cases) + " graphs agree"};
}

Outcome defect_decay() {
  std::string detail;
  for (const char* name : {"g3", "mixed-cycles(2,3)", "mixed-cycles(3,4)"}) {
    const GraphSpec spec = std::string(name) == "g3" ? fixtures::g3() : truncate(parse_template(name), 1).spec;
    const auto b = adjacency_operator(spec);
    const int k = imprimitivity_index(b);
    if (k != 1) return {false, std::string(name) + " is not aperiodic"};
    const auto moduli = oracles::eigen_moduli(b.dense());
    const double log_rho = std::log(moduli[1]);
    DefectEvaluator defects(b, spectral_projection(b, k, kProjectionTol).projection);
    double mx = 0, my = 0;
    std::vector<std::pair<double, double>> points;
    for (int j = 1; j <= 50; ++j) points.emplace_back(j * k, std::log(defects.defect(Rational(j * k))));
    for (const auto& [x, y] : points) {
      mx += x / 50.0;
      my += y / 50.0;
    }
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : points) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    const double slope = sxy / sxx;
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "%s slope %.5f vs log rho %.5f; ", name, slope, log_rho);
    detail += buffer;
    if (std::abs(slope - log_rho) > kSlopeTolerance) return {false, detail};
  }
  return {true, detail};
}

Outcome resolvent_check() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int input = 0; input < 10; ++input) {
    const GraphSpec spec = random_graph(3000 + static_cast<std::uint64_t>(input), RandomGraphOptions{2, 5, 8, true});
    const auto b = adjacency_operator(spec);
    EdgeStepFunction f = fixtures::random_step(rng, spec.edge_count(), input % 2 == 0, 3);
    if (f.is_zero()) f.set(0, Profile::constant(1));
    for (double lambda : {0.5, 1.0, 2.0}) {
      const ResolventResult r = resolvent(b, lambda, f, kSeriesTol);
      for (int i = 0; i <= 16; ++i) {
        const Rational s = ratio(i, 16);
        worst = std::max(worst, (r.value.at(to_double(s)) - oracles::laplace(b, lambda, f, s)).lpNorm<1>());
      }
    }
  }
  if (worst > kLaplaceTolerance) return {false, "Laplace sup error " + std::to_string(worst)};

  double perron = 0.0;
  for (std::uint64_t g = 0; g < 5; ++g) {
    const auto b = adjacency_operator(random_graph(3100 + g, kSmallConnected));
    // Stationary vector from a dense eigensolver: eigenvalue closest to 1, normalized to unit mass.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(b.dense());
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < solver.eigenvalues().size(); ++i) {
      if (std::abs(solver.eigenvalues()(i) - 1.0) < std::abs(solver.eigenvalues()(best) - 1.0)) best = i;
    }
    Eigen::VectorXd pi = solver.eigenvectors().col(best).real();
    pi /= pi.sum();
    EdgeStepFunction f;
    for (Eigen::Index j = 0; j < pi.size(); ++j) f.set(static_cast<EdgeId>(j), Profile::constant(Rational(pi(j))));
    for (double lambda : {0.5, 1.0, 2.0}) {
      const ResolventResult r = resolvent(b, lambda, f, kSeriesTol);
      for (double s : uniform_grid(16)) perron = std::max(perron, (r.value.at(s) - pi / lambda).lpNorm<1>());
    }
  }
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "Laplace sup error %.3g, Perron error %.3g", worst, perron);
  return {perron <= kPerronTolerance, buffer};
}

Outcome embedding_identity() {
  std::mt19937_64 rng(1006);
  for (int trial = 0; trial < 50; ++trial) {
    const GraphSpec spec = random_graph(4000 + static_cast<std::uint64_t>(trial), kSmall);
    const auto b = adjacency_operator(spec);
    const EdgeStepFunction f = fixtures::random_step(rng, spec.edge_count(), trial % 2 == 0);
    const Rational t = fixtures::random_rational(rng, 0, 5, 30);
    if (!(evaluate_S(b, t, embed(f)) == embed(evaluate_T(b, t, f)))) {
      return {false, "mismatch at trial " + std::to_string(trial)};
    }
  }
  return {true, "50 exact (f, t) pairs"};
}

Outcome weakstar_vs_tv() {
  std::mt19937_64 rng(1007);
  std::vector<Rational> times;
  for (int i = 0; i < 8; ++i) times.push_back(ratio(1, 10 * (1 << i)));
  int samples = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const GraphSpec spec = random_graph(5000 + static_cast<std::uint64_t>(trial), kSmallConnected);
    const auto b = adjacency_operator(spec);
    // Nonnegative atoms on the 1/24 lattice inside [1/5, 1): no mass in [0, t) and no collisions under t.
    EdgeMeasure mu;
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<int> slot(5, 23);
    std::uniform_int_distribution<std::size_t> edge(0, spec.edge_count() - 1);
    std::uniform_int_distribution<int> weight(1, 4);
    for (int i = count(rng); i > 0; --i) {
      mu.add_atom(ratio(slot(rng), 24), static_cast<EdgeId>(edge(rng)), ratio(weight(rng), 2));
    }
    TestFunction f;
    for (std::size_t j = 0; j < spec.edge_count(); ++j) {
      f.components.emplace(static_cast<EdgeId>(j),
                           PiecewiseLinear({0, ratio(1, 2), 1}, {fixtures::random_rational(rng, -1, 1),
                                                                    fixtures::random_rational(rng, -1, 1),
                                                                    fixtures::random_rational(rng, -1, 1)}));
    }
    const Rational total = variation(mu);
    for (const ProbeSample& s : weakstar_continuity_probe(b, mu, f, times)) {
      ++samples;
      if (s.tv_gap != 2 * total) return {false, "TV gap not 2|mu| at t=" + to_string(s.t)};
      if (s.pairing_gap > f.lipschitz() * s.t * total) return {false, "pairing bound at t=" + to_string(s.t)};
    }
  }
  return {true, std::to_string(samples) + " samples"};
}

Outcome velocity_conjugation() {
  GraphSpec g2 = fixtures::g2();
  g2.edges[0].velocity = Rational(1);
  g2.edges[1].velocity = ratio(1, 2);
  const SubdivisionMap map = subdivide(g2);
  std::mt19937_64 rng(1008);
  const Rational lap = Rational(1) / *g2.edges[0].velocity + Rational(1) / *g2.edges[1].velocity;
  for (int trial = 0; trial < 20; ++trial) {
    const EdgeStepFunction f = fixtures::random_step(rng, 2, trial % 2 == 0);
    if (!(conjugated_evaluate_TC(map, lap, f) == f)) return {false, "lap does not return the input"};
  }
  for (const GraphSpec& spec : {g2, [] {
         GraphSpec c2 = fixtures::cycle(2);
         for (auto& e : c2.edges) e.velocity = ratio(1, 3);
         return c2;
       }()}) {
    const SubdivisionMap m = subdivide(spec);
    const Rational expected = Rational(oracles::cycle_gcd(adjacency_operator(m.subdivided))) / m.c;
    if (conjugated_period(m) != expected) return {false, "period mismatch"};
  }
  return {true, "lap time " + to_string(lap) + ", period " + to_string(conjugated_period(map))};
}

Outcome attractor_equivalence() {
  int connected = 0;
  for (std::uint64_t g = 0; g < 100; ++g) {
    const GraphSpec spec = random_graph(6000 + g, RandomGraphOptions{2, 6, 10, false});
    const bool scc = is_irreducible(adjacency_operator(spec));
    if (scc != oracles::reachable_everywhere(spec) || scc != is_strongly_connected(spec)) {
      return {false, "SCC disagreement on graph " + std::to_string(6000 + g)};
    }
    if (!scc) continue;
    ++connected;
    const auto certificate = find_attractor(spec, static_cast<int>(spec.vertex_count()), 1);
    if (!certificate) return {false, "no certificate on graph " + std::to_string(6000 + g)};
    std::vector<char> in_target(spec.vertex_count(), 0);
    for (VertexId v : certificate->vertices) in_target[static_cast<std::size_t>(v)] = 1;
    Rational delta = -1;
    for (std::size_t v = 0; v < spec.vertex_count(); ++v) {
      const Rational w = oracles::enumerate_paths(spec, static_cast<VertexId>(v), in_target, certificate->max_length);
      if (delta < 0 || w < delta) delta = w;
    }
    if (delta != certificate->delta || delta <= 0) return {false, "delta mismatch on graph " + std::to_string(6000 + g)};
  }
  return {true, "100 graphs, " + std::to_string(connected) + " strongly connected certified"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exact semigroup law", semigroup_law},
      {"mass conservation and contraction", contraction},
      {"period equals peripheral count and minimal return power", period_check},
      {"defect decay rate matches log rho", defect_decay},
      {"resolvent against Laplace quadrature and Perron input", resolvent_check},
      {"embedding identity", embedding_identity},
      {"weak* continuity versus TV jump", weakstar_vs_tv},
      {"velocity conjugation", velocity_conjugation},
      {"irreducibility and attractor certificates", attractor_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first,
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
