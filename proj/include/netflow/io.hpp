#ifndef NETFLOW_IO_HPP
#define NETFLOW_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "netflow/flow.hpp"
#include "netflow/graph.hpp"
#include "netflow/measure.hpp"
#include "netflow/spectral.hpp"
#include "netflow/step_function.hpp"
#include "netflow/velocity.hpp"

namespace netflow {

using Json = nlohmann::ordered_json;

/// Malformed file or document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Rationals are "p/q" strings; integers are accepted on input.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

/// {"vertices":[int], "edges":[{"id","tail","head","weight":"p/q","velocity"?}], "velocity_bounds"?:{"min","max"}}
GraphSpec graph_from_json(const Json& doc);
Json graph_to_json(const GraphSpec& spec);

/// {"edges":{"<id>":{"breaks":[...],"values":[...]}}}
EdgeStepFunction step_from_json(const Json& doc);
Json step_to_json(const EdgeStepFunction& f);

/// {"edges":{"<id>":{"atoms":[{"pos","weight"}],"density":{"breaks","values"}}}}; either part optional.
EdgeMeasure measure_from_json(const Json& doc);
Json measure_to_json(const EdgeMeasure& mu);

/// {"edges":{"<id>":{"breaks":[...],"values":[...]}}} with one node value per breakpoint.
TestFunction test_function_from_json(const Json& doc);
Json test_function_to_json(const TestFunction& f);

Json spectral_to_json(const SpectralDecomposition& d);
Json subdivision_to_json(const SubdivisionMap& map);
Json attractor_to_json(const AttractorCertificate& certificate);
Json periodicity_to_json(const PeriodicityReport& report);

/// Float formatting used in every report: 17 significant digits.
std::string format_double(double value);

}  // namespace netflow

#endif  // NETFLOW_IO_HPP
