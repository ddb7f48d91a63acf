#pragma once

// JSON encodings of problems, points and traces, plus small file helpers.
//
// Matrices are row-major nested arrays with one [re, im] pair per entry.

#include <string>
#include <vector>

#include <json.hpp>

#include "jadm/cost.hpp"
#include "jadm/trace.hpp"

namespace jadm::harness {

using Json = nlohmann::json;

Json matrix_to_json(const CMat& a);
/// Throws ContractError on ragged rows or entries that are not [re, im].
CMat matrix_from_json(const Json& j);

/// {"n", "m", "dagger", "structured", "weights", "matrices"}.
Json problem_to_json(const JadmProblem& problem);
JadmProblem problem_from_json(const Json& j);

/// {"U", "X"}.
Json point_to_json(const JointPoint& omega);
JointPoint point_from_json(const Json& j);

Json trace_to_json(const std::vector<IterationTrace>& trace);

Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace jadm::harness
