#include "jadm/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "jadm/errors.hpp"

namespace jadm::harness {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::BcdGlu:
      return "bcd-glu";
    case Algorithm::BcdGlq:
      return "bcd-glq";
    case Algorithm::JacobiGlu:
      return "jacobi-glu";
    case Algorithm::JacobiGlq:
      return "jacobi-glq";
    case Algorithm::JacobiClu:
      return "jacobi-clu";
    case Algorithm::JacobiClq:
      return "jacobi-clq";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& text) {
  for (Algorithm a : {Algorithm::BcdGlu, Algorithm::BcdGlq, Algorithm::JacobiGlu,
                      Algorithm::JacobiGlq, Algorithm::JacobiClu, Algorithm::JacobiClq}) {
    if (text == to_string(a)) return a;
  }
  throw ContractError("unknown algorithm '" + text + "'");
}

Family family_of(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::BcdGlu:
    case Algorithm::JacobiGlu:
      return Family::GLU;
    case Algorithm::BcdGlq:
    case Algorithm::JacobiGlq:
      return Family::GLQ;
    case Algorithm::JacobiClu:
      return Family::CLU;
    case Algorithm::JacobiClq:
      return Family::CLQ;
  }
  return Family::GLU;
}

bool is_bcd(Algorithm algorithm) {
  return algorithm == Algorithm::BcdGlu || algorithm == Algorithm::BcdGlq;
}

const char* to_string(InitKind init) {
  switch (init) {
    case InitKind::Random:
      return "random";
    case InitKind::Identity:
      return "identity";
    case InitKind::File:
      return "file";
  }
  return "?";
}

InitKind init_from_string(const std::string& text) {
  if (text == "random") return InitKind::Random;
  if (text == "identity") return InitKind::Identity;
  if (text == "file") return InitKind::File;
  throw ContractError("unknown init '" + text + "'");
}

JointPoint starting_point(const JadmProblem& problem, const SolveOptions& options) {
  switch (options.init) {
    case InitKind::Random:
      return random_joint_point(problem.n(), problem.m(), options.seed);
    case InitKind::Identity:
      return JointPoint{StiefelPoint::canonical(problem.n(), problem.m()),
                        SlPoint::identity(problem.m())};
    case InitKind::File:
      if (!options.start) throw ContractError("init 'file' needs a starting point");
      if (options.start->u.n() != problem.n() || options.start->u.m() != problem.m() ||
          options.start->x.m() != problem.m()) {
        throw DimensionError("starting point does not match problem dimensions");
      }
      return *options.start;
  }
  throw ContractError("unknown init");
}

RotationFamily rotation_family(const SolveOptions& options, Index m) {
  RotationFamily f = RotationFamily::defaults(family_of(options.algorithm), m);
  if (options.epsilon) f.epsilon = *options.epsilon;
  f.sigma_var = options.sigma_var;
  f.epsilon_inner = options.epsilon_inner;
  return f;
}

SolveReport solve(const JadmProblem& problem, const SolveOptions& options) {
  const JointPoint start = starting_point(problem, options);
  StopRule stop;
  stop.grad_tol = options.grad_tol;
  stop.max_iters = options.max_iters;
  stop.norm_cap = options.norm_cap;

  SolveReport report{options, rotation_family(options, problem.m()),
                     RunResult(start)};
  const auto t0 = std::chrono::steady_clock::now();
  if (is_bcd(options.algorithm)) {
    BcdConfig config;
    config.upsilon = options.upsilon;
    config.rotation = report.family;
    config.stop = stop;
    config.line_search = options.line_search;
    report.result = run_bcd(problem, start, config);
  } else {
    report.result = run_jacobi(problem, start.u, start.x, report.family, stop);
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

Json options_to_json(const SolveOptions& o, const RotationFamily& f, Index m) {
  Json j{{"algorithm", to_string(o.algorithm)},
         {"init", to_string(o.init)},
         {"seed", o.seed},
         {"max_iters", o.max_iters},
         {"upsilon", o.upsilon},
         {"epsilon", f.epsilon},
         {"epsilon_provable_bound", provable_epsilon_bound(f.family, m)},
         {"epsilon_published_bound", published_epsilon_bound(f.family, m)},
         {"sigma_var", f.sigma_var},
         {"epsilon_inner", f.epsilon_inner},
         {"norm_cap", o.norm_cap},
         {"sl_gradient_norm", "left-invariant (Frobenius norm of Lambda)"},
         {"line_search",
          {{"delta_s", o.line_search.delta_s},
           {"delta_w", o.line_search.delta_w},
           {"tau", o.line_search.tau},
           {"t_init", o.line_search.t_init},
           {"max_backtracks", o.line_search.max_backtracks},
           {"kappa_p", o.line_search.kappa_p}}}};
  j["grad_tol"] = o.grad_tol ? Json(*o.grad_tol) : Json("1e-8 * (1 + initial cost)");
  return j;
}

}  // namespace

Json report_to_json(const JadmProblem& problem, const SolveReport& report) {
  const RunResult& r = report.result;
  return Json{{"config", options_to_json(report.options, report.family, problem.m())},
              {"problem",
               {{"n", problem.n()},
                {"m", problem.m()},
                {"L", problem.size()},
                {"dagger", to_string(problem.dagger())}}},
              {"status", to_string(r.status)},
              {"iterations", r.iterations},
              {"grad_tol", r.grad_tol},
              {"initial_cost", r.initial_cost},
              {"final_cost", r.final_cost},
              {"final_grad_f1", r.final_grad_f1},
              {"final_grad_f2", r.final_grad_f2},
              {"final_grad_f", r.final_grad_f},
              {"wall_time_s", report.wall_time_s},
              {"final_point", point_to_json(r.final_point)},
              {"trace", trace_to_json(r.trace)}};
}

BenchSpec bench_spec_from_json(const Json& j) {
  BenchSpec spec;
  try {
    if (j.contains("instance")) {
      const Json& in = j.at("instance");
      spec.instance.n = in.value("n", spec.instance.n);
      spec.instance.m = in.value("m", spec.instance.m);
      spec.instance.matrices = in.value("L", spec.instance.matrices);
      spec.instance.dagger = dagger_from_string(in.value("dagger", std::string("H")));
      spec.instance.structured = in.value("structured", true);
      spec.instance.noise = in.value("noise", 0.0);
      spec.instance.seed = in.value("seed", spec.instance.seed);
      spec.instance.real = in.value("real", false);
    }
    if (j.contains("algorithms")) {
      spec.algorithms.clear();
      for (const Json& a : j.at("algorithms")) {
        spec.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
      }
    }
    if (j.contains("solve")) {
      const Json& s = j.at("solve");
      spec.solve.init = init_from_string(s.value("init", std::string("random")));
      spec.solve.max_iters = s.value("max_iters", spec.solve.max_iters);
      if (s.contains("grad_tol")) spec.solve.grad_tol = s.at("grad_tol").get<double>();
      spec.solve.upsilon = s.value("upsilon", spec.solve.upsilon);
      if (s.contains("epsilon")) spec.solve.epsilon = s.at("epsilon").get<double>();
      spec.solve.sigma_var = s.value("sigma_var", spec.solve.sigma_var);
    }
    spec.trials = j.value("trials", spec.trials);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed bench spec: ") + e.what());
  }
  if (spec.solve.init == InitKind::File) throw ContractError("bench cannot use init 'file'");
  if (spec.trials < 1) throw ContractError("bench needs trials >= 1");
  if (spec.algorithms.empty()) throw ContractError("bench needs at least one algorithm");
  spec.instance.validate();
  return spec;
}

namespace {

struct TrialOutcome {
  std::uint64_t seed = 0;
  std::string status;
  std::string error;
  int iterations = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  double final_grad = 0.0;
  double wall_time_s = 0.0;
};

TrialOutcome run_trial(const BenchSpec& spec, Algorithm algorithm, int k) {
  TrialOutcome t;
  t.seed = spec.instance.seed + static_cast<std::uint64_t>(k);
  try {
    InstanceSpec is = spec.instance;
    is.seed = t.seed;
    if (!is_bcd(algorithm)) is.m = is.n;
    const Instance inst = generate_instance(is);
    SolveOptions o = spec.solve;
    o.algorithm = algorithm;
    o.seed = t.seed;
    const SolveReport rep = solve(inst.problem, o);
    t.status = to_string(rep.result.status);
    t.iterations = rep.result.iterations;
    t.initial_cost = rep.result.initial_cost;
    t.final_cost = rep.result.final_cost;
    t.final_grad = rep.result.final_grad_f;
    t.wall_time_s = rep.wall_time_s;
  } catch (const std::exception& e) {
    t.status = "error";
    t.error = e.what();
  }
  return t;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

Json run_bench(const BenchSpec& spec, int jobs) {
  const std::size_t n_alg = spec.algorithms.size();
  const auto n_trials = static_cast<std::size_t>(spec.trials);
  std::vector<TrialOutcome> outcomes(n_alg * n_trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t idx = next++; idx < outcomes.size(); idx = next++) {
      outcomes[idx] = run_trial(spec, spec.algorithms[idx / n_trials],
                                static_cast<int>(idx % n_trials));
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(outcomes.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Json results = Json::array();
  for (std::size_t a = 0; a < n_alg; ++a) {
    Json trials = Json::array();
    std::vector<double> iters, ratios, times;
    int converged = 0;
    for (std::size_t k = 0; k < n_trials; ++k) {
      const TrialOutcome& t = outcomes[a * n_trials + k];
      Json row{{"seed", t.seed},
               {"status", t.status},
               {"iterations", t.iterations},
               {"initial_cost", t.initial_cost},
               {"final_cost", t.final_cost},
               {"final_grad_f", t.final_grad},
               {"wall_time_s", t.wall_time_s}};
      if (!t.error.empty()) row["error"] = t.error;
      trials.push_back(std::move(row));
      if (t.status == "converged") ++converged;
      iters.push_back(t.iterations);
      ratios.push_back(t.initial_cost > 0.0 ? t.final_cost / t.initial_cost : 0.0);
      times.push_back(t.wall_time_s);
    }
    results.push_back(Json{{"algorithm", to_string(spec.algorithms[a])},
                           {"converged", converged},
                           {"trials", spec.trials},
                           {"median_iterations", median(iters)},
                           {"median_cost_ratio", median(ratios)},
                           {"median_wall_time_s", median(times)},
                           {"runs", std::move(trials)}});
  }
  return Json{{"instance",
               {{"n", spec.instance.n},
                {"m", spec.instance.m},
                {"L", spec.instance.matrices},
                {"dagger", to_string(spec.instance.dagger)},
                {"noise", spec.instance.noise},
                {"real", spec.instance.real},
                {"seed", spec.instance.seed}}},
              {"init", to_string(spec.solve.init)},
              {"results", std::move(results)}};
}

}  // namespace jadm::harness
