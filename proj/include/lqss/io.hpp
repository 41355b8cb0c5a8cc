#pragma once

// JSON file formats.  Complex numbers are [re, im] pairs and matrices are
// arrays of rows.

#include <nlohmann/json.hpp>

#include <string>

#include "lqss/tf_verify.hpp"

namespace lqss::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(cd z);
json to_json(const CMatrix& x);
json to_json(const RVector& v);
json to_json(const DeviceSchedule& sched);
json to_json(const Netlist& net);
json to_json(const Model& model);
json to_json(const VerifyReport& rep);

// `what` names the field in error messages.
cd complex_from_json(const json& j, const std::string& what);
CMatrix matrix_from_json(const json& j, const std::string& what);
RVector vector_from_json(const json& j, const std::string& what);
DeviceSchedule schedule_from_json(const json& j);
// Structural checks on M, N, S use `structure_tol`.
Model model_from_json(const json& j, double structure_tol = kStructureTol);
Netlist netlist_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace lqss::io
