// Command-line front end: generate instances, solve them, run the oracle
// suite at a point, and run multi-trial benchmarks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jadm/errors.hpp"
#include "jadm/harness/check.hpp"
#include "jadm/harness/instance.hpp"
#include "jadm/harness/io.hpp"
#include "jadm/harness/runner.hpp"

using namespace jadm;
using namespace jadm::harness;

namespace {

struct GenerateArgs {
  Index n = 6;
  Index m = 4;
  Index L = 5;
  std::string dagger = "H";
  double noise = 0.0;
  std::uint64_t seed = 1;
  bool unstructured = false;
  bool real = false;
  std::string out = "problem.json";
  std::string truth;
};

struct SolveArgs {
  std::string algo = "bcd-glu";
  std::string problem;
  std::string init = "random";
  std::string point;
  std::uint64_t seed = 1;
  int max_iters = 5000;
  double grad_tol = -1.0;
  double upsilon = 0.5;
  double epsilon = -1.0;
  double sigma_var = 0.1;
  double epsilon_inner = 0.1;
  std::string trace;
  std::string report;
};

struct CheckArgs {
  std::string problem;
  std::string init = "random";
  std::string point;
  std::uint64_t seed = 1;
  int directions = 5;
};

struct BenchArgs {
  std::string spec;
  int trials = 0;
  int jobs = 1;
  std::string out;
};

int do_generate(const GenerateArgs& a) {
  InstanceSpec spec;
  spec.n = a.n;
  spec.m = a.m;
  spec.matrices = a.L;
  spec.dagger = dagger_from_string(a.dagger);
  spec.noise = a.noise;
  spec.seed = a.seed;
  spec.structured = !a.unstructured;
  spec.real = a.real;
  const Instance inst = generate_instance(spec);
  write_json_file(a.out, problem_to_json(inst.problem));
  if (!a.truth.empty()) write_json_file(a.truth, point_to_json(inst.truth));
  std::printf("wrote %s (n=%ld m=%ld L=%ld dagger=%s noise=%g seed=%llu)\n", a.out.c_str(),
              static_cast<long>(a.n), static_cast<long>(a.m), static_cast<long>(a.L),
              a.dagger.c_str(), a.noise, static_cast<unsigned long long>(a.seed));
  return 0;
}

SolveOptions options_from(const SolveArgs& a) {
  SolveOptions o;
  o.algorithm = algorithm_from_string(a.algo);
  o.init = init_from_string(a.init);
  o.seed = a.seed;
  o.max_iters = a.max_iters;
  if (a.grad_tol >= 0.0) o.grad_tol = a.grad_tol;
  o.upsilon = a.upsilon;
  if (a.epsilon > 0.0) o.epsilon = a.epsilon;
  o.sigma_var = a.sigma_var;
  o.epsilon_inner = a.epsilon_inner;
  if (o.init == InitKind::File) {
    if (a.point.empty()) throw ContractError("--init file needs --point");
    o.start = point_from_json(read_json_file(a.point));
  }
  return o;
}

int do_solve(const SolveArgs& a) {
  const JadmProblem problem = problem_from_json(read_json_file(a.problem));
  const SolveReport rep = solve(problem, options_from(a));
  const RunResult& r = rep.result;
  if (!a.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, r.trace);
    write_text_file(a.trace, csv.str());
  }
  if (!a.report.empty()) write_json_file(a.report, report_to_json(problem, rep));
  std::printf("%s: status=%s iterations=%d f0=%.6e f=%.6e |grad f|=%.3e time=%.3fs\n",
              a.algo.c_str(), to_string(r.status), r.iterations, r.initial_cost, r.final_cost,
              r.final_grad_f, rep.wall_time_s);
  return r.status == RunStatus::Converged || r.status == RunStatus::MaxIters ? 0 : 3;
}

int do_check(const CheckArgs& a) {
  const JadmProblem problem = problem_from_json(read_json_file(a.problem));
  SolveOptions o;
  o.init = init_from_string(a.init);
  o.seed = a.seed;
  if (o.init == InitKind::File) {
    if (a.point.empty()) throw ContractError("--init file needs --point");
    o.start = point_from_json(read_json_file(a.point));
  }
  CheckOptions co;
  co.directions = a.directions;
  const auto results = run_oracle_suite(problem, starting_point(problem, o), co);
  for (const CheckResult& r : results) {
    std::printf("%-4s %-26s error %.3e  tol %.1e  (%d samples)\n", r.pass ? "ok" : "FAIL",
                r.name.c_str(), r.error, r.tolerance, r.samples);
  }
  return all_pass(results) ? 0 : 1;
}

int do_bench(const BenchArgs& a) {
  BenchSpec spec = bench_spec_from_json(read_json_file(a.spec));
  if (a.trials > 0) spec.trials = a.trials;
  const Json out = run_bench(spec, a.jobs);
  if (a.out.empty()) {
    std::cout << out.dump(2) << "\n";
  } else {
    write_json_file(a.out, out);
    for (const Json& r : out.at("results")) {
      std::printf("%-11s converged %d/%d  median iterations %g  median time %.3fs\n",
                  r.at("algorithm").get<std::string>().c_str(), r.at("converged").get<int>(),
                  r.at("trials").get<int>(), r.at("median_iterations").get<double>(),
                  r.at("median_wall_time_s").get<double>());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint approximate diagonalization on St(m, n) x SL_m"};
  app.set_config("--config", "", "Read options from a key = value file (flags override it)");
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "Write a random instance with a known exact diagonalizer");
  g->add_option("--n", gen.n, "Matrix size n")->capture_default_str();
  g->add_option("--m", gen.m, "Target size m <= n")->capture_default_str();
  g->add_option("--L", gen.L, "Number of matrices")->capture_default_str();
  g->add_option("--dagger", gen.dagger, "Congruence transpose")
      ->check(CLI::IsMember({"H", "T"}))
      ->capture_default_str();
  g->add_option("--noise", gen.noise, "Noise level eta >= 0")->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_flag("--unstructured", gen.unstructured, "Skip Hermitian/symmetric projection");
  g->add_flag("--real", gen.real, "Real mixing matrix and noise (with --dagger T: real symmetric)");
  g->add_option("--out", gen.out, "Problem JSON output")->capture_default_str();
  g->add_option("--truth", gen.truth, "Also write the exact (U, X) as JSON");

  SolveArgs sol;
  CLI::App* s = app.add_subcommand("solve", "Run one solver on a problem file");
  s->add_option("--algo", sol.algo, "Solver")
      ->check(CLI::IsMember({"bcd-glu", "bcd-glq", "jacobi-glu", "jacobi-glq", "jacobi-clu",
                             "jacobi-clq"}))
      ->capture_default_str();
  s->add_option("--problem", sol.problem, "Problem JSON")->required();
  s->add_option("--init", sol.init, "Starting point")
      ->check(CLI::IsMember({"random", "identity", "file"}))
      ->capture_default_str();
  s->add_option("--point", sol.point, "Starting point JSON for --init file");
  s->add_option("--seed", sol.seed, "Seed for --init random")->capture_default_str();
  s->add_option("--max-iters", sol.max_iters, "Iteration limit")->capture_default_str();
  s->add_option("--grad-tol", sol.grad_tol,
                "Gradient tolerance (negative: 1e-8 * (1 + initial cost))")
      ->capture_default_str();
  s->add_option("--upsilon", sol.upsilon, "Block threshold in (0, sqrt(2)/2)")->capture_default_str();
  s->add_option("--epsilon", sol.epsilon,
                "Rotation selection threshold (non-positive: half the provable bound)")
      ->capture_default_str();
  s->add_option("--sigma-var", sol.sigma_var, "Diagonal safeguard in (0, 1/4)")->capture_default_str();
  s->add_option("--epsilon-inner", sol.epsilon_inner, "Plane fallback threshold in (0, 1]")
      ->capture_default_str();
  s->add_option("--trace", sol.trace, "Trace CSV output");
  s->add_option("--report", sol.report, "Report JSON output");

  CheckArgs chk;
  CLI::App* c = app.add_subcommand("check", "Run the oracle suite at a point");
  c->add_option("--problem", chk.problem, "Problem JSON")->required();
  c->add_option("--init", chk.init, "Point to check")
      ->check(CLI::IsMember({"random", "identity", "file"}))
      ->capture_default_str();
  c->add_option("--point", chk.point, "Point JSON for --init file");
  c->add_option("--seed", chk.seed, "Seed for --init random")->capture_default_str();
  c->add_option("--directions", chk.directions, "Random directions per check")->capture_default_str();

  BenchArgs ben;
  CLI::App* b = app.add_subcommand("bench", "Run several seeded trials per algorithm");
  b->add_option("--spec", ben.spec, "Benchmark spec JSON")->required();
  b->add_option("--trials", ben.trials, "Override the spec's trial count")->capture_default_str();
  b->add_option("--jobs", ben.jobs, "Worker threads")->capture_default_str();
  b->add_option("--out", ben.out, "Aggregate JSON output (stdout when empty)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (g->parsed()) return do_generate(gen);
    if (s->parsed()) return do_solve(sol);
    if (c->parsed()) return do_check(chk);
    if (b->parsed()) return do_bench(ben);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
