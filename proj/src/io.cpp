#include "netflow/io.hpp"

#include <fstream>
#include <sstream>

namespace netflow {

namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

int int_from_json(const Json& value, const char* what) {
  if (!value.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return value.get<int>();
}

EdgeId edge_key(const std::string& key) {
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || id < 0) throw InputError("edge key \"" + key + "\" is not a non-negative integer");
  return id;
}

std::vector<Rational> rationals_from_json(const Json& array, const char* what) {
  if (!array.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const Json& v : array) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(rational_to_json(v));
  return out;
}

EdgeStepFunction::Profile profile_from_json(const Json& doc) {
  try {
    return EdgeStepFunction::Profile(rationals_from_json(require(doc, "breaks"), "breaks"),
                                     rationals_from_json(require(doc, "values"), "values"));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json profile_to_json(const EdgeStepFunction::Profile& profile) {
  return Json{{"breaks", rationals_to_json(profile.breaks())}, {"values", rationals_to_json(profile.values())}};
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) throw InputError("rational values must be \"p/q\" strings or integers");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json rational_to_json(const Rational& value) { return to_string(value); }

GraphSpec graph_from_json(const Json& doc) {
  GraphSpec spec;
  const Json& vertices = require(doc, "vertices");
  if (!vertices.is_array()) throw InputError("vertices must be an array");
  for (const Json& v : vertices) spec.vertices.push_back(int_from_json(v, "vertex id"));
  const Json& edges = require(doc, "edges");
  if (!edges.is_array()) throw InputError("edges must be an array");
  for (const Json& e : edges) {
    Edge edge;
    edge.id = int_from_json(require(e, "id"), "edge id");
    edge.tail = int_from_json(require(e, "tail"), "tail");
    edge.head = int_from_json(require(e, "head"), "head");
    edge.weight = rational_from_json(require(e, "weight"));
    if (e.contains("velocity")) edge.velocity = rational_from_json(e.at("velocity"));
    spec.edges.push_back(std::move(edge));
  }
  if (doc.contains("velocity_bounds")) {
    const Json& bounds = doc.at("velocity_bounds");
    spec.velocity_bounds = VelocityBounds{rational_from_json(require(bounds, "min")),
                                          rational_from_json(require(bounds, "max"))};
  }
  return spec;
}

Json graph_to_json(const GraphSpec& spec) {
  Json doc;
  doc["vertices"] = spec.vertices;
  doc["edges"] = Json::array();
  for (const Edge& e : spec.edges) {
    Json edge{{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"weight", rational_to_json(e.weight)}};
    if (e.velocity) edge["velocity"] = rational_to_json(*e.velocity);
    doc["edges"].push_back(std::move(edge));
  }
  if (spec.velocity_bounds) {
    doc["velocity_bounds"] = Json{{"min", rational_to_json(spec.velocity_bounds->min)},
                                  {"max", rational_to_json(spec.velocity_bounds->max)}};
  }
  return doc;
}

EdgeStepFunction step_from_json(const Json& doc) {
  EdgeStepFunction f;
  const Json& edges = require(doc, "edges");
  if (!edges.is_object()) throw InputError("edges must be an object keyed by edge id");
  for (const auto& [key, profile] : edges.items()) f.set(edge_key(key), profile_from_json(profile));
  return f;
}

Json step_to_json(const EdgeStepFunction& f) {
  Json edges = Json::object();
  for (const auto& [edge, profile] : f.profiles()) edges[std::to_string(edge)] = profile_to_json(profile);
  return Json{{"edges", std::move(edges)}};
}

EdgeMeasure measure_from_json(const Json& doc) {
  EdgeMeasure mu;
  EdgeStepFunction density;
  const Json& edges = require(doc, "edges");
  if (!edges.is_object()) throw InputError("edges must be an object keyed by edge id");
  for (const auto& [key, part] : edges.items()) {
    const EdgeId edge = edge_key(key);
    if (part.contains("atoms")) {
      for (const Json& atom : part.at("atoms")) {
        try {
          mu.add_atom(rational_from_json(require(atom, "pos")), edge, rational_from_json(require(atom, "weight")));
        } catch (const std::out_of_range& e) {
          throw InputError(e.what());
        }
      }
    }
    if (part.contains("density")) density.set(edge, profile_from_json(part.at("density")));
  }
  mu.set_density(std::move(density));
  return mu;
}

Json measure_to_json(const EdgeMeasure& mu) {
  Json edges = Json::object();
  for (EdgeId edge : mu.active_edges()) {
    Json part = Json::object();
    Json atoms = Json::array();
    for (const auto& [position, weight] : mu.atoms()) {
      const auto it = weight.find(edge);
      if (it != weight.end()) {
        atoms.push_back(Json{{"pos", rational_to_json(position)}, {"weight", rational_to_json(it->second)}});
      }
    }
    if (!atoms.empty()) part["atoms"] = std::move(atoms);
    const auto it = mu.density().profiles().find(edge);
    if (it != mu.density().profiles().end()) part["density"] = profile_to_json(it->second);
    edges[std::to_string(edge)] = std::move(part);
  }
  return Json{{"edges", std::move(edges)}};
}

TestFunction test_function_from_json(const Json& doc) {
  TestFunction f;
  const Json& edges = require(doc, "edges");
  if (!edges.is_object()) throw InputError("edges must be an object keyed by edge id");
  for (const auto& [key, part] : edges.items()) {
    try {
      f.components.emplace(edge_key(key), PiecewiseLinear(rationals_from_json(require(part, "breaks"), "breaks"),
                                                          rationals_from_json(require(part, "values"), "values")));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  return f;
}

Json test_function_to_json(const TestFunction& f) {
  Json edges = Json::object();
  for (const auto& [edge, component] : f.components) {
    edges[std::to_string(edge)] =
        Json{{"breaks", rationals_to_json(component.breaks())}, {"values", rationals_to_json(component.values())}};
  }
  return Json{{"edges", std::move(edges)}};
}

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

Json spectral_to_json(const SpectralDecomposition& d) {
  Json peripheral = Json::array();
  for (const auto& z : d.peripheral_eigenvalues) peripheral.push_back(Json{{"re", z.real()}, {"im", z.imag()}});
  return Json{{"k", d.k},
              {"peripheral", std::move(peripheral)},
              {"rho", d.rho},
              {"residual", d.residual},
              {"iterations", d.iterations}};
}

Json subdivision_to_json(const SubdivisionMap& map) {
  Json index = Json::array();
  for (std::size_t j = 0; j < map.index.size(); ++j) {
    for (std::size_t r = 0; r < map.index[j].size(); ++r) {
      index.push_back(Json{{"edge", j}, {"segment", r}, {"new_edge", map.index[j][r]}});
    }
  }
  return Json{{"c", rational_to_json(map.c)},
              {"l", map.segments},
              {"new_edge_count", map.subdivided.edge_count()},
              {"index_map", std::move(index)},
              {"subdivided", graph_to_json(map.subdivided)}};
}

Json attractor_to_json(const AttractorCertificate& certificate) {
  return Json{{"vertices", certificate.vertices},
              {"L", certificate.max_length},
              {"delta", rational_to_json(certificate.delta)}};
}

Json periodicity_to_json(const PeriodicityReport& report) {
  Json doc{{"theta", rational_to_json(report.theta)},
           {"k", report.k},
           {"rho", report.rho},
           {"residual", report.residual},
           {"accuracy_floor", report.accuracy_floor},
           {"fitted_rate", report.fitted_rate ? Json(*report.fitted_rate) : Json(nullptr)},
           {"fitted_points", report.fitted_points},
           {"monotone", report.monotone},
           {"pass", report.pass}};
  doc["attractor"] = report.attractor ? attractor_to_json(*report.attractor) : Json(nullptr);
  doc["note"] = report.note;
  return doc;
}

}  // namespace netflow
