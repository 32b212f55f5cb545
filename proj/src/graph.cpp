#include "netflow/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace netflow {

namespace {

std::string vname(int id) { return "v" + std::to_string(id); }
std::string ename(int id) { return "e" + std::to_string(id); }

}  // namespace

bool GraphSpec::has_velocities() const {
  return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.velocity.has_value(); });
}

bool ValidationReport::contains(std::string_view text) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.message.find(text) != std::string::npos; });
}

InvalidGraphError::InvalidGraphError(ValidationReport report)
    : std::invalid_argument([&] {
        std::string what = "invalid graph:";
        for (const auto& v : report.violations) what += " [" + v.message + "]";
        return what;
      }()),
      report_(std::move(report)) {}

ValidationReport validate_graph(const GraphSpec& spec) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, int id, std::string message) {
    report.violations.push_back({kind, id, std::move(message)});
  };

  const int n = static_cast<int>(spec.vertices.size());
  for (int i = 0; i < n; ++i) {
    if (spec.vertices[static_cast<std::size_t>(i)] != i) {
      add(ViolationKind::kNonDenseId, spec.vertices[static_cast<std::size_t>(i)],
          "vertex id " + std::to_string(spec.vertices[static_cast<std::size_t>(i)]) + " at position " +
              std::to_string(i) + " (ids must be dense and 0-based)");
    }
  }

  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
  std::vector<Rational> out_weight(static_cast<std::size_t>(n), Rational(0));
  std::set<std::pair<int, int>> seen;
  std::size_t with_velocity = 0;

  for (std::size_t pos = 0; pos < spec.edges.size(); ++pos) {
    const Edge& e = spec.edges[pos];
    if (e.id != static_cast<int>(pos)) {
      add(ViolationKind::kNonDenseId, e.id,
          "edge id " + std::to_string(e.id) + " at position " + std::to_string(pos) + " (ids must be dense and 0-based)");
    }
    bool endpoints_ok = true;
    for (int endpoint : {e.tail, e.head}) {
      if (endpoint < 0 || endpoint >= n) {
        add(ViolationKind::kUnknownVertex, e.id, "unknown vertex " + vname(endpoint) + " on " + ename(e.id));
        endpoints_ok = false;
      }
    }
    if (e.weight < 0) add(ViolationKind::kNegativeWeight, e.id, "negative weight on " + ename(e.id));
    if (e.velocity) {
      ++with_velocity;
      if (*e.velocity <= 0) {
        add(ViolationKind::kVelocity, e.id, "non-positive velocity on " + ename(e.id));
      } else if (spec.velocity_bounds &&
                 (*e.velocity < spec.velocity_bounds->min || *e.velocity > spec.velocity_bounds->max)) {
        add(ViolationKind::kVelocity, e.id, "velocity out of bounds on " + ename(e.id));
      }
    }
    if (!endpoints_ok) continue;
    if (e.tail == e.head) add(ViolationKind::kLoop, e.tail, "loop at " + vname(e.tail) + " (" + ename(e.id) + ")");
    if (!seen.insert({e.tail, e.head}).second) {
      add(ViolationKind::kMultiEdge, e.id,
          "multi-edge " + vname(e.tail) + "->" + vname(e.head) + " (" + ename(e.id) + ")");
    }
    ++out_degree[static_cast<std::size_t>(e.tail)];
    ++in_degree[static_cast<std::size_t>(e.head)];
    out_weight[static_cast<std::size_t>(e.tail)] += e.weight;
  }

  if (with_velocity != 0 && with_velocity != spec.edges.size()) {
    add(ViolationKind::kVelocity, -1, "velocities must be given for all edges or none");
  }
  if (spec.velocity_bounds) {
    const auto& b = spec.velocity_bounds;
    if (b->min <= 0 || b->min > b->max) add(ViolationKind::kVelocity, -1, "velocity bounds must satisfy 0 < min <= max");
  }

  for (int v = 0; v < n; ++v) {
    const auto idx = static_cast<std::size_t>(v);
    if (in_degree[idx] == 0 || out_degree[idx] == 0) {
      std::string detail = in_degree[idx] == 0 && out_degree[idx] == 0 ? "no incoming or outgoing edge"
                           : in_degree[idx] == 0                      ? "no incoming edge"
                                                                      : "no outgoing edge";
      add(ViolationKind::kDegenerate, v, "degenerate: " + vname(v) + " has " + detail);
    }
    if (out_degree[idx] > 0 && out_weight[idx] != 1) {
      add(ViolationKind::kWeightSum, v,
          "weight sum at " + vname(v) + " is " + to_string(out_weight[idx]) + ", expected 1");
    }
  }
  return report;
}

std::pair<IncidenceMatrices, ColumnStochasticOperator> build_operators(const GraphSpec& spec) {
  ValidationReport report = validate_graph(spec);
  if (!report.valid()) throw InvalidGraphError(std::move(report));

  const std::size_t n = spec.vertex_count();
  const std::size_t m = spec.edge_count();
  IncidenceMatrices inc{RationalMatrix(n, m), RationalMatrix(n, m), RationalMatrix(n, m)};
  for (const Edge& e : spec.edges) {
    const auto j = static_cast<std::size_t>(e.id);
    inc.phi_plus.set(static_cast<std::size_t>(e.head), j, 1);
    inc.phi_minus.set(static_cast<std::size_t>(e.tail), j, 1);
    inc.phi_w_minus.set(static_cast<std::size_t>(e.tail), j, e.weight);
  }
  ColumnStochasticOperator b(multiply_transposed(inc.phi_w_minus, inc.phi_plus));
  return {std::move(inc), std::move(b)};
}

ColumnStochasticOperator adjacency_operator(const GraphSpec& spec) { return build_operators(spec).second; }

std::vector<std::vector<int>> strongly_connected_components(const std::vector<std::vector<int>>& successors) {
  // Iterative Tarjan.
  const int n = static_cast<int>(successors.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int vertex;
    std::size_t next;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call_stack.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;

    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const auto v = static_cast<std::size_t>(frame.vertex);
      if (frame.next < successors[v].size()) {
        const int w = successors[v][frame.next++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = lowlink[wi] = counter++;
          stack.push_back(w);
          on_stack[wi] = 1;
          call_stack.push_back({w, 0});
        } else if (on_stack[wi]) {
          lowlink[v] = std::min(lowlink[v], index[wi]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::vector<int> component;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          component.push_back(w);
        } while (w != frame.vertex);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      const int finished = frame.vertex;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const auto parent = static_cast<std::size_t>(call_stack.back().vertex);
        lowlink[parent] = std::min(lowlink[parent], lowlink[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return components;
}

std::vector<std::vector<int>> vertex_successors(const GraphSpec& spec) {
  std::vector<std::vector<int>> successors(spec.vertex_count());
  for (const Edge& e : spec.edges) successors[static_cast<std::size_t>(e.tail)].push_back(e.head);
  return successors;
}

bool is_strongly_connected(const GraphSpec& spec) {
  if (spec.vertices.empty()) return false;
  return strongly_connected_components(vertex_successors(spec)).size() == 1;
}

GraphTemplate parse_template(std::string_view text) {
  GraphTemplate tmpl;
  auto open = text.find('(');
  if (open == std::string_view::npos) {
    tmpl.name = std::string(text);
    return tmpl;
  }
  if (text.back() != ')') throw std::invalid_argument("malformed template: '" + std::string(text) + "'");
  tmpl.name = std::string(text.substr(0, open));
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  while (!args.empty()) {
    auto comma = args.find(',');
    std::string_view token = args.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw std::invalid_argument("malformed template argument in '" + std::string(text) + "'");
    }
    tmpl.params.push_back(value);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  return tmpl;
}

namespace {

GraphSpec with_vertices(int n) {
  GraphSpec spec;
  spec.vertices.resize(static_cast<std::size_t>(n));
  std::iota(spec.vertices.begin(), spec.vertices.end(), 0);
  return spec;
}

void add_edge(GraphSpec& spec, int tail, int head, Rational weight) {
  spec.edges.push_back({static_cast<EdgeId>(spec.edges.size()), tail, head, std::move(weight), std::nullopt});
}

GraphSpec make_cycle(int n) {
  if (n < 2) throw std::invalid_argument("cycle(n) needs n >= 2");
  GraphSpec spec = with_vertices(n);
  for (int i = 0; i < n; ++i) add_edge(spec, i, (i + 1) % n, 1);
  return spec;
}

GraphSpec make_mixed_cycles(int a, int b) {
  if (a < 2 || b < 2) throw std::invalid_argument("mixed-cycles(a,b) needs a, b >= 2");
  GraphSpec spec = with_vertices(a + b - 1);
  const Rational half = ratio(1, 2);
  // cycle A: 0 -> 1 -> ... -> a-1 -> 0
  for (int i = 0; i < a; ++i) add_edge(spec, i, (i + 1) % a, i == 0 ? half : Rational(1));
  // cycle B: 0 -> a -> a+1 -> ... -> a+b-2 -> 0
  std::vector<int> ring{0};
  for (int i = 0; i < b - 1; ++i) ring.push_back(a + i);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    add_edge(spec, ring[i], ring[(i + 1) % ring.size()], i == 0 ? half : Rational(1));
  }
  return spec;
}

Truncation make_ladder(int radius) {
  Truncation out;
  out.radius = radius;
  out.spec = with_vertices(2 * radius);
  const Rational half = ratio(1, 2);
  for (int i = 0; i < radius; ++i) {
    const int a = 2 * i;
    const int b = 2 * i + 1;
    add_edge(out.spec, b, a, i == 0 ? Rational(1) : half);
    if (i > 0) add_edge(out.spec, b, b - 2, half);
    if (i + 1 < radius) {
      add_edge(out.spec, a, a + 2, 1);
    } else {
      out.wrap_edges.push_back(static_cast<EdgeId>(out.spec.edges.size()));
      add_edge(out.spec, a, b, 1);
    }
  }
  return out;
}

int require_param(const GraphTemplate& tmpl, std::size_t count) {
  if (tmpl.params.size() != count) {
    throw std::invalid_argument("template " + tmpl.name + " expects " + std::to_string(count) + " parameter(s)");
  }
  return count == 0 ? 0 : tmpl.params[0];
}

}  // namespace

Truncation truncate(const GraphTemplate& tmpl, int radius) {
  if (radius < 1) throw std::invalid_argument("truncation radius must be >= 1");
  if (tmpl.name == "cycle") {
    return {make_cycle(require_param(tmpl, 1)), radius, {}};
  }
  if (tmpl.name == "mixed-cycles") {
    require_param(tmpl, 2);
    return {make_mixed_cycles(tmpl.params[0], tmpl.params[1]), radius, {}};
  }
  if (tmpl.name == "ladder") {
    require_param(tmpl, 0);
    return make_ladder(radius);
  }
  if (tmpl.name == "random") {
    require_param(tmpl, 2);
    RandomGraphOptions options;
    options.min_vertices = options.max_vertices = tmpl.params[0];
    options.max_edges = tmpl.params[1];
    return {random_graph(tmpl.seed, options), radius, {}};
  }
  throw std::invalid_argument("unknown graph template '" + tmpl.name + "'");
}

GraphSpec random_graph(std::uint64_t seed, const RandomGraphOptions& options) {
  if (options.min_vertices < 2 || options.max_vertices < options.min_vertices) {
    throw std::invalid_argument("random_graph: need 2 <= min_vertices <= max_vertices");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  const int n = uniform(options.min_vertices, options.max_vertices);
  if (options.max_edges < n) throw std::invalid_argument("random_graph: max_edges below vertex count");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<int, int>> arcs;
  if (options.strongly_connected) {
    for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(uniform(0, i))]);
    for (int i = 0; i < n; ++i) arcs.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % n)]);
  } else {
    // random derangement: every vertex gets one outgoing and one incoming arc
    std::vector<int> image;
    do {
      image = order;
      for (int i = n - 1; i > 0; --i) std::swap(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(uniform(0, i))]);
    } while ([&] {
      for (int i = 0; i < n; ++i) {
        if (image[static_cast<std::size_t>(i)] == i) return true;
      }
      return false;
    }());
    for (int i = 0; i < n; ++i) arcs.emplace_back(i, image[static_cast<std::size_t>(i)]);
  }

  std::set<std::pair<int, int>> present(arcs.begin(), arcs.end());
  const int capacity = std::min(options.max_edges, n * (n - 1));
  const int target = uniform(n, capacity);
  while (static_cast<int>(arcs.size()) < target) {
    int u = uniform(0, n - 1);
    int v = uniform(0, n - 1);
    if (u == v || present.count({u, v})) continue;
    present.insert({u, v});
    arcs.emplace_back(u, v);
  }

  std::vector<int> raw(arcs.size());
  std::vector<int> total(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    raw[i] = uniform(1, 4);
    total[static_cast<std::size_t>(arcs[i].first)] += raw[i];
  }
  GraphSpec spec = with_vertices(n);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    Rational w = ratio(raw[i], total[static_cast<std::size_t>(arcs[i].first)]);
    w.canonicalize();
    add_edge(spec, arcs[i].first, arcs[i].second, w);
  }
  return spec;
}

}  // namespace netflow
