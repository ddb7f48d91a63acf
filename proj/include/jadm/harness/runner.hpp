#pragma once

// Algorithm dispatch, starting points, run reports and multi-trial benchmarks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jadm/bcd.hpp"
#include "jadm/harness/instance.hpp"
#include "jadm/harness/io.hpp"
#include "jadm/jacobi.hpp"

namespace jadm::harness {

enum class Algorithm { BcdGlu, BcdGlq, JacobiGlu, JacobiGlq, JacobiClu, JacobiClq };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& text);
Family family_of(Algorithm algorithm);
bool is_bcd(Algorithm algorithm);

enum class InitKind { Random, Identity, File };

const char* to_string(InitKind init);
InitKind init_from_string(const std::string& text);

struct SolveOptions {
  Algorithm algorithm = Algorithm::BcdGlu;
  InitKind init = InitKind::Random;
  std::uint64_t seed = 1;               ///< random starting point
  std::optional<JointPoint> start;      ///< required for InitKind::File
  int max_iters = 5000;
  std::optional<double> grad_tol;       ///< default 1e-8 (1 + f0)
  double upsilon = 0.5;
  std::optional<double> epsilon;        ///< default half the provable bound
  double sigma_var = 0.1;
  double epsilon_inner = 0.1;
  double norm_cap = 1e6;
  LineSearchParams line_search;
};

struct SolveReport {
  SolveOptions options;
  RotationFamily family;
  RunResult result;
  double wall_time_s = 0.0;
};

/// Random: random_joint_point(seed); Identity: (first m columns of I_n, I_m); File: options.start.
JointPoint starting_point(const JadmProblem& problem, const SolveOptions& options);

RotationFamily rotation_family(const SolveOptions& options, Index m);

SolveReport solve(const JadmProblem& problem, const SolveOptions& options);

/// Config echo, epsilon bounds, status, final values, wall time and the full trace.
Json report_to_json(const JadmProblem& problem, const SolveReport& report);

struct BenchSpec {
  InstanceSpec instance;
  std::vector<Algorithm> algorithms{Algorithm::BcdGlu};
  SolveOptions solve;
  int trials = 1;
};

/// {"instance": {...}, "algorithms": [...], "solve": {...}, "trials": N}; every key optional.
BenchSpec bench_spec_from_json(const Json& j);

/// Trial k uses instance seed and start seed (seed + k). Trials run on `jobs` threads;
/// results are listed in (algorithm, trial) order whatever the scheduling.
Json run_bench(const BenchSpec& spec, int jobs);

}  // namespace jadm::harness
