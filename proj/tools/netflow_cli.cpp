// netflow: batch front end for the transport-on-networks library.
//
// Exit status: 0 success, 1 a requested check failed, 2 bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "netflow/flow.hpp"
#include "netflow/graph.hpp"
#include "netflow/io.hpp"
#include "netflow/measure.hpp"
#include "netflow/resolvent.hpp"
#include "netflow/spectral.hpp"
#include "netflow/velocity.hpp"

namespace fs = std::filesystem;
using namespace netflow;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Options {
  std::string graph;
  std::string template_name;
  int radius = 1;
  std::string init;
  std::string tgrid;
  std::vector<double> lambdas{1.0};
  double tol = 1e-10;
  std::string out = ".";
  std::uint64_t seed = 0;
  int sgrid = 20;
  std::string test_fn;
};

GraphSpec load_graph(const Options& o) {
  if (!o.graph.empty() && !o.template_name.empty()) throw InputError("give either --graph or --template, not both");
  if (!o.graph.empty()) return graph_from_json(read_json(o.graph));
  if (o.template_name.empty()) throw InputError("a graph is required: --graph PATH or --template NAME");
  try {
    GraphTemplate tmpl = parse_template(o.template_name);
    tmpl.seed = o.seed;
    return truncate(tmpl, o.radius).spec;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

/// "a:b:step" -> a, a+step, ..., <= b; a single value is a one-point grid.
std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  try {
    if (parts.size() == 1) return {parse_rational(parts[0])};
    if (parts.size() != 3) throw InputError("--tgrid expects a:b:step");
    const Rational a = parse_rational(parts[0]);
    const Rational b = parse_rational(parts[1]);
    const Rational step = parse_rational(parts[2]);
    if (step <= 0 || a < 0 || b < a) throw InputError("--tgrid needs 0 <= a <= b and step > 0");
    if ((b - a) / step > 100000) throw InputError("--tgrid has too many points");
    std::vector<Rational> out;
    for (Rational t = a; t <= b; t += step) out.push_back(t);
    return out;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

ColumnStochasticOperator require_irreducible(const GraphSpec& spec) {
  ColumnStochasticOperator b = adjacency_operator(spec);
  if (!is_irreducible(b)) throw InputError("graph is not strongly connected");
  return b;
}

void write_json(const Options& o, const std::string& name, const Json& doc) {
  write_text(fs::path(o.out) / name, doc.dump(2) + "\n");
}

int run_analyze(const Options& o) {
  const GraphSpec spec = load_graph(o);
  const ValidationReport validation = validate_graph(spec);
  Json doc{{"valid", validation.valid()}};
  Json violations = Json::array();
  for (const Violation& v : validation.violations) violations.push_back(v.message);
  doc["violations"] = std::move(violations);
  if (validation.valid()) {
    const ColumnStochasticOperator b = adjacency_operator(spec);
    const bool irreducible = is_irreducible(b);
    doc["strongly_connected"] = is_strongly_connected(spec);
    doc["irreducible"] = irreducible;
    const auto certificate = find_attractor(spec, static_cast<int>(spec.vertex_count()), 1);
    doc["attractor"] = certificate ? attractor_to_json(*certificate) : Json(nullptr);
    if (irreducible) doc["k"] = imprimitivity_index(b);
  }
  write_json(o, "analyze.json", doc);
  std::cout << doc.dump(2) << "\n";
  return validation.valid() ? kOk : kCheckFailed;
}

int run_spectral(const Options& o) {
  const GraphSpec spec = load_graph(o);
  const ColumnStochasticOperator b = require_irreducible(spec);
  const SpectralDecomposition d = spectral_projection(b, o.tol);
  const Json doc = spectral_to_json(d);
  write_json(o, "spectral.json", doc);
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

EdgeStepFunction load_initial_step(const Options& o) {
  if (!o.init.empty()) return step_from_json(read_json(o.init));
  EdgeStepFunction f;
  f.set(0, EdgeStepFunction::Profile::constant(1));
  return f;
}

int run_simulate(const Options& o) {
  const GraphSpec spec = load_graph(o);
  const ColumnStochasticOperator b = adjacency_operator(spec);
  const EdgeStepFunction f = load_initial_step(o);
  const std::vector<Rational> times = parse_grid(o.tgrid.empty() ? "0:10:1" : o.tgrid);

  std::optional<DefectEvaluator> defects;
  Rational theta = 1;
  if (is_irreducible(b)) {
    const SpectralDecomposition d = spectral_projection(b, o.tol);
    theta = d.k;
    defects.emplace(b, d.projection);
  }

  const Rational l1_initial = f.l1_norm();
  const Rational linf_initial = f.linf_norm();
  bool contraction = true;
  std::ostringstream csv;
  csv << "t,l1_norm,linf_norm,defect,theta_residual\n";
  Json states = Json::array();
  for (const Rational& t : times) {
    const EdgeStepFunction ft = evaluate_T(b, t, f);
    const EdgeStepFunction later = evaluate_T(b, theta, ft);
    const Rational l1 = ft.l1_norm();
    const Rational linf = ft.linf_norm();
    contraction = contraction && l1 <= l1_initial && linf <= linf_initial;
    csv << to_string(t) << "," << to_string(l1) << "," << to_string(linf) << ","
        << (defects ? format_double(defects->defect(t)) : "nan") << "," << to_string((later - ft).l1_norm()) << "\n";
    states.push_back(Json{{"t", rational_to_json(t)}, {"f", step_to_json(ft)}});
  }
  write_text(fs::path(o.out) / "series.csv", csv.str());
  write_json(o, "states.json", Json{{"theta", rational_to_json(theta)}, {"states", std::move(states)}});
  if (!contraction) {
    std::cerr << "contraction check failed\n";
    return kCheckFailed;
  }
  return kOk;
}

int run_periodicity(const Options& o) {
  const GraphSpec spec = load_graph(o);
  require_irreducible(spec);
  const PeriodicityReport report = periodicity_report(spec, parse_grid(o.tgrid.empty() ? "0:50:1" : o.tgrid), o.tol);
  std::ostringstream csv;
  csv << "t,defect\n";
  for (const auto& [t, value] : report.samples) csv << to_string(t) << "," << format_double(value) << "\n";
  write_text(fs::path(o.out) / "periodicity.csv", csv.str());
  const Json doc = periodicity_to_json(report);
  write_json(o, "periodicity.json", doc);
  std::cout << doc.dump(2) << "\n";
  return report.pass ? kOk : kCheckFailed;
}

int run_resolvent(const Options& o) {
  const GraphSpec spec = load_graph(o);
  const ColumnStochasticOperator b = adjacency_operator(spec);
  const EdgeStepFunction f = load_initial_step(o);
  const std::vector<double> grid = uniform_grid(o.sgrid);
  std::ostringstream csv;
  csv << "lambda,s";
  for (std::size_t j = 0; j < b.dimension(); ++j) csv << ",e" << j;
  csv << "\n";
  Json runs = Json::array();
  for (double lambda : o.lambdas) {
    if (!(lambda > 0)) throw InputError("--lambda values must be positive");
    const ResolventResult r = resolvent(b, lambda, f, o.tol);
    const auto values = sample(r.value, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      csv << format_double(lambda) << "," << format_double(grid[i]);
      for (Eigen::Index j = 0; j < values[i].size(); ++j) csv << "," << format_double(values[i](j));
      csv << "\n";
    }
    runs.push_back(Json{{"lambda", lambda}, {"tail_bound", r.tail_bound}, {"series_terms", r.series_terms}});
  }
  write_text(fs::path(o.out) / "resolvent.csv", csv.str());
  write_json(o, "resolvent.json", Json{{"runs", runs}});
  std::cout << runs.dump(2) << "\n";
  return kOk;
}

int run_subdivide(const Options& o) {
  const SubdivisionMap map = subdivide(load_graph(o));
  const Json doc = subdivision_to_json(map);
  write_json(o, "subdivision.json", doc);
  std::cout << doc.dump(2) << "\n";
  return kOk;
}

int run_measure_sim(const Options& o) {
  const GraphSpec spec = load_graph(o);
  const ColumnStochasticOperator b = adjacency_operator(spec);
  const EdgeMeasure mu = o.init.empty() ? EdgeMeasure::dirac(ratio(1, 2), 0) : measure_from_json(read_json(o.init));
  TestFunction f;
  if (o.test_fn.empty()) {
    for (std::size_t j = 0; j < spec.edge_count(); ++j) {
      f.components.emplace(static_cast<EdgeId>(j), PiecewiseLinear::affine(1, 0));
    }
  } else {
    f = test_function_from_json(read_json(o.test_fn));
  }

  const Rational total = variation(mu);
  bool ok = true;
  std::ostringstream series;
  series << "t,variation\n";
  Json states = Json::array();
  for (const Rational& t : parse_grid(o.tgrid.empty() ? "0:4:1/4" : o.tgrid)) {
    const EdgeMeasure moved = evaluate_S(b, t, mu);
    const Rational v = variation(moved);
    ok = ok && v <= total;
    series << to_string(t) << "," << to_string(v) << "\n";
    states.push_back(Json{{"t", rational_to_json(t)}, {"mu", measure_to_json(moved)}});
  }

  std::vector<Rational> probe_times;
  for (int i = 1; i <= 64; i *= 2) probe_times.push_back(ratio(1, 10 * i));
  std::ostringstream probe;
  probe << "t,pairing_gap,tv_gap\n";
  for (const ProbeSample& s : weakstar_continuity_probe(b, mu, f, probe_times)) {
    ok = ok && s.pairing_gap <= s.bound;
    probe << to_string(s.t) << "," << to_string(s.pairing_gap) << "," << to_string(s.tv_gap) << "\n";
  }
  write_text(fs::path(o.out) / "measure_series.csv", series.str());
  write_text(fs::path(o.out) / "probe.csv", probe.str());
  write_json(o, "measure_states.json", Json{{"states", std::move(states)}});
  if (!ok) {
    std::cerr << "variation or probe bound check failed\n";
    return kCheckFailed;
  }
  return kOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph, "graph JSON file");
  cmd->add_option("--template", o.template_name, "graph template, e.g. cycle(3), ladder, random(5,9)");
  cmd->add_option("--radius", o.radius, "truncation radius for infinite templates")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "seed for random templates");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transport flows on finite networks"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "validation, connectivity, irreducibility, attractor");
  auto* spectral = app.add_subcommand("spectral", "imprimitivity index, projection residual, rho");
  auto* simulate = app.add_subcommand("simulate", "T(t) series");
  auto* periodicity = app.add_subcommand("periodicity", "period and defect decay report");
  auto* resolvent_cmd = app.add_subcommand("resolvent", "resolvent sampled on an s-grid");
  auto* subdivide_cmd = app.add_subcommand("subdivide", "velocity subdivision map");
  auto* measure_sim = app.add_subcommand("measure-sim", "S(t) series and weak* probe");
  for (auto* cmd : {analyze, spectral, simulate, periodicity, resolvent_cmd, subdivide_cmd, measure_sim}) {
    add_common(cmd, o);
  }
  for (auto* cmd : {simulate, periodicity, measure_sim}) cmd->add_option("--tgrid", o.tgrid, "time grid a:b:step");
  for (auto* cmd : {simulate, resolvent_cmd, measure_sim}) cmd->add_option("--init", o.init, "initial data JSON");
  resolvent_cmd->add_option("--lambda", o.lambdas, "comma-separated lambdas")->delimiter(',');
  resolvent_cmd->add_option("--sgrid", o.sgrid, "number of s-grid intervals")->check(CLI::PositiveNumber);
  measure_sim->add_option("--test-fn", o.test_fn, "piecewise-linear test function JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return run_analyze(o);
    if (*spectral) return run_spectral(o);
    if (*simulate) return run_simulate(o);
    if (*periodicity) return run_periodicity(o);
    if (*resolvent_cmd) return run_resolvent(o);
    if (*subdivide_cmd) return run_subdivide(o);
    if (*measure_sim) return run_measure_sim(o);
  } catch (const InvalidGraphError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
