#pragma once
#include <json.hpp>

#include "cct/blowup.hpp"

namespace cct {

using Json = nlohmann::ordered_json;

Json jet_to_json(const Jet& j);
Jet jet_from_json(const Json& v);

// {"n","r","fields":[[jet,...],...],"exact":bool}; input jets use unit
// weights (the grading is assigned by the frame later) and a shared order.
Json structure_to_json(const CCStructure& x, const std::string& name = "");
CCStructure structure_from_json(const Json& v);

Json frame_to_json(const AdaptedFrame& f);
Json chart_to_json(const ExponentialChart& c);
Json decomposition_to_json(const DecomposedStructure& d, const NilpotentStructure& ns);

Json control_to_json(const Control& h);
Control control_from_json(const Json& v);

std::string curve_to_csv(const HorizontalCurve& c);  // tau, x1..xn; 17 significant digits

Json load_json_file(const std::string& path);  // ParseError with byte location
void write_text_file(const std::string& path, const std::string& content);
std::string dump_json(const Json& v);  // canonical 2-space indentation + newline

}  // namespace cct
