// Command-line driver: runs the refinement loop of a benchmark problem and
// streams the convergence history as CSV, runs the interpolation rate study,
// or runs the internal consistency suites.  Talks to the library through the
// public C interface only.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "stls/stls.h"

namespace {

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("STLS_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void stream_record(const stls_record* rec, void* user) {
  FILE* f = static_cast<FILE*>(user);
  char buf[512];
  stls_record_csv(rec, buf, sizeof buf);
  std::fprintf(f, "%s\n", buf);
  std::fflush(f);
}

int run_solve(const std::string& problem, const std::string& refine, double theta,
              long long max_dofs, int threads, const std::string& out,
              const std::string& mesh_path, const std::string& matrix_path) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    std::fprintf(stderr, "error: --theta must lie in (0, 1]\n");
    return 2;
  }
  stls_problem* p = nullptr;
  if (stls_problem_create(problem.c_str(), &p) != STLS_OK) {
    std::fprintf(stderr, "error: %s\n", stls_last_error());
    return 2;
  }
  stls_run_options opt;
  stls_run_options_init(&opt);
  opt.adaptive = refine == "adaptive" ? 1 : 0;
  opt.theta = theta;
  opt.max_dofs = max_dofs > 0 ? max_dofs : (stls_problem_dimension(p) == 1 ? 1000000 : 400000);
  opt.threads = resolve_threads(threads);

  FILE* f = stdout;
  if (!out.empty()) {
    f = std::fopen(out.c_str(), "w");
    if (!f) {
      std::fprintf(stderr, "error: cannot open %s\n", out.c_str());
      stls_problem_destroy(p);
      return 1;
    }
  }
  std::fprintf(f, "%s\n", stls_csv_header());

  stls_run* run = nullptr;
  stls_status st = stls_solve(p, &opt, stream_record, f, &run);
  if (f != stdout) std::fclose(f);

  int rc = 0;
  if (st != STLS_OK) {
    std::fprintf(stderr, "error: %s\n", stls_last_error());
    rc = 1;
  }
  if (run && !mesh_path.empty() && stls_run_dump_mesh(run, mesh_path.c_str()) != STLS_OK) {
    std::fprintf(stderr, "error: %s\n", stls_last_error());
    rc = 1;
  }
  if (run && !matrix_path.empty() && stls_run_dump_matrix(run, matrix_path.c_str()) != STLS_OK) {
    std::fprintf(stderr, "error: %s\n", stls_last_error());
    rc = 1;
  }
  stls_run_destroy(run);
  stls_problem_destroy(p);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-time least-squares solver for the heat equation"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "run the refinement loop, emit the history as CSV");
  std::string problem, refine = "adaptive", out, mesh_path, matrix_path;
  double theta = 0.25;
  long long max_dofs = 0;
  int threads = 0;
  solve->add_option("--problem", problem, "benchmark id, e.g. ex1_1d")->required();
  solve->add_option("--refine", refine, "uniform or adaptive")
      ->check(CLI::IsMember({"uniform", "adaptive"}));
  solve->add_option("--theta", theta, "marking fraction (default 0.25)");
  solve->add_option("--max-dofs", max_dofs, "stop once reached (default 1e6 / 4e5 for d=1 / d=2)");
  solve->add_option("--out", out, "CSV path (default: stdout)");
  solve->add_option("--dump-mesh", mesh_path, "write the final mesh with indicators");
  solve->add_option("--dump-matrix", matrix_path, "write the final system, MatrixMarket format");
  solve->add_option("--threads", threads, "worker threads (default: STLS_THREADS or 1)");

  auto* study = app.add_subcommand("interp-study", "interpolation rate study, CSV output");
  std::string study_problem, study_out;
  int levels = 4;
  study->add_option("--problem", study_problem, "benchmark with an exact solution")->required();
  study->add_option("--levels", levels, "refinement levels (default 4)");
  study->add_option("--out", study_out, "CSV path")->required();

  auto* check = app.add_subcommand("check", "run the internal consistency suites");
  std::uint64_t seed = 1;
  int check_threads = 0;
  check->add_option("--seed", seed, "random seed (default 1)");
  check->add_option("--threads", check_threads, "worker threads (default: STLS_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed())
    return run_solve(problem, refine, theta, max_dofs, threads, out, mesh_path, matrix_path);

  if (study->parsed()) {
    stls_status st = stls_interp_study(study_problem.c_str(), levels, study_out.c_str());
    if (st == STLS_OK) return 0;
    std::fprintf(stderr, "error: %s\n", stls_last_error());
    return st == STLS_UNKNOWN_PROBLEM || st == STLS_INVALID_ARGUMENT ? 2 : 1;
  }

  if (check->parsed()) {
    int failures = 0;
    if (stls_self_check(seed, resolve_threads(check_threads), &failures) != STLS_OK) {
      std::fprintf(stderr, "error: %s\n", stls_last_error());
      return 1;
    }
    return failures == 0 ? 0 : 1;
  }
  return 2;
}
