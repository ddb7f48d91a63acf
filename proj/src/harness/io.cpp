#include "jadm/harness/io.hpp"

#include <fstream>
#include <sstream>

#include "jadm/errors.hpp"

namespace jadm::harness {

Json matrix_to_json(const CMat& a) {
  Json rows = Json::array();
  for (Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < a.cols(); ++c) row.push_back({a(r, c).real(), a(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ContractError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  CMat a(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ContractError("matrix rows must all have the same length");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ContractError("matrix entries must be [re, im] pairs");
      }
      a(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return a;
}

Json problem_to_json(const JadmProblem& problem) {
  Json mats = Json::array();
  for (const CMat& a : problem.matrices()) mats.push_back(matrix_to_json(a));
  return Json{{"n", problem.n()},
              {"m", problem.m()},
              {"dagger", to_string(problem.dagger())},
              {"structured", problem.structured()},
              {"weights", problem.weights()},
              {"matrices", std::move(mats)}};
}

JadmProblem problem_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<Index>();
    const auto m = j.at("m").get<Index>();
    const Dagger mode = dagger_from_string(j.at("dagger").get<std::string>());
    std::vector<CMat> mats;
    for (const Json& a : j.at("matrices")) mats.push_back(matrix_from_json(a));
    std::vector<double> weights = j.contains("weights")
                                      ? j.at("weights").get<std::vector<double>>()
                                      : std::vector<double>(mats.size(), 1.0);
    const bool structured = j.value("structured", false);
    return JadmProblem(n, m, mode, std::move(mats), std::move(weights), structured);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed problem JSON: ") + e.what());
  }
}

Json point_to_json(const JointPoint& omega) {
  return Json{{"U", matrix_to_json(omega.u.matrix())}, {"X", matrix_to_json(omega.x.matrix())}};
}

JointPoint point_from_json(const Json& j) {
  try {
    return JointPoint{StiefelPoint(matrix_from_json(j.at("U"))),
                      SlPoint(matrix_from_json(j.at("X")))};
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed point JSON: ") + e.what());
  }
}

Json trace_to_json(const std::vector<IterationTrace>& trace) {
  Json rows = Json::array();
  for (const IterationTrace& r : trace) {
    rows.push_back(Json{{"iter", r.iter},
                        {"block", r.block},
                        {"i", r.i},
                        {"j", r.j},
                        {"kind", r.kind},
                        {"f", r.f},
                        {"grad_f1", r.grad_f1},
                        {"grad_f2", r.grad_f2},
                        {"grad_f", r.grad_f},
                        {"step_size", r.step_size},
                        {"decrease", r.decrease},
                        {"norm_U", r.norm_u},
                        {"norm_X", r.norm_x},
                        {"cond_X", r.cond_x},
                        {"predicted_decrease", r.predicted_decrease},
                        {"selected_derivative_norm", r.selected_derivative_norm},
                        {"lambda_norm", r.lambda_norm},
                        {"selection_condition_ok", r.selection_condition_ok},
                        {"block_condition_ok", r.block_condition_ok},
                        {"shrink_ok", r.shrink_ok},
                        {"backtracks", r.backtracks},
                        {"orthonormality_error", r.orthonormality_error},
                        {"det_error", r.det_error},
                        {"movement", r.movement}});
  }
  return rows;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path);
  out << text;
  if (!out) throw ContractError("write failed for " + path);
}

}  // namespace jadm::harness
