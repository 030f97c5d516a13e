#include "stls/stls.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "adaptivity.hpp"
#include "assembly.hpp"
#include "interp.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "selfcheck.hpp"

namespace {

thread_local std::string g_last_error;

stls_status fail(stls_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

struct Problem {
  stls::ProblemSpec spec;
};

struct Run {
  stls::ProblemSpec spec;
  stls::LoopConfig cfg;
  stls::LoopResult result;
};

const Problem* unwrap(const stls_problem* p) { return reinterpret_cast<const Problem*>(p); }
const Run* unwrap(const stls_run* r) { return reinterpret_cast<const Run*>(r); }

stls_record to_record(const stls::ConvergenceRecord& c) {
  const double nan = std::nan("");
  stls_record r;
  r.step = c.step;
  r.ndofs = c.ndofs;
  r.nelems = c.nelems;
  r.eta = c.eta;
  r.err_l2 = c.errors.has_l2 ? c.errors.err_l2 : nan;
  r.err_u0 = c.errors.has_u0 ? c.errors.err_u0 : nan;
  r.err_uT = c.errors.has_uT ? c.errors.err_uT : nan;
  r.err_flux = c.errors.has_flux ? c.errors.err_flux : nan;
  r.err_dt = c.errors.has_dt ? c.errors.err_dt : nan;
  r.cg_iters = c.cg_iters;
  r.wall_ms = c.wall_ms;
  return r;
}

void append_field(std::string& line, double v) {
  line += ',';
  if (std::isnan(v)) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += buf;
}

std::string record_line(const stls_record& r) {
  std::string line = std::to_string(r.step) + ',' + std::to_string(r.ndofs) + ',' +
                     std::to_string(r.nelems);
  append_field(line, r.eta);
  append_field(line, r.err_l2);
  append_field(line, r.err_u0);
  append_field(line, r.err_uT);
  append_field(line, r.err_flux);
  append_field(line, r.err_dt);
  line += ',' + std::to_string(r.cg_iters);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
  line += ',';
  line += buf;
  return line;
}

}  // namespace

extern "C" {

const char* stls_version(void) { return "0.1.0"; }

const char* stls_last_error(void) { return g_last_error.c_str(); }

size_t stls_problem_count(void) { return stls::catalog_ids().size(); }

const char* stls_problem_id(size_t index) {
  static const std::vector<std::string> ids = stls::catalog_ids();
  return index < ids.size() ? ids[index].c_str() : nullptr;
}

stls_status stls_problem_create(const char* id, stls_problem** out) {
  if (!id || !out) return fail(STLS_INVALID_ARGUMENT, "null argument");
  try {
    auto* p = new Problem{stls::catalog(id)};
    *out = reinterpret_cast<stls_problem*>(p);
  } catch (const std::invalid_argument& e) {
    return fail(STLS_UNKNOWN_PROBLEM, e.what());
  } catch (const std::exception& e) {
    return fail(STLS_INTERNAL_ERROR, e.what());
  }
  return STLS_OK;
}

void stls_problem_destroy(stls_problem* p) { delete reinterpret_cast<Problem*>(p); }

int stls_problem_dimension(const stls_problem* p) { return p ? unwrap(p)->spec.d : 0; }

void stls_run_options_init(stls_run_options* opt) {
  if (!opt) return;
  opt->adaptive = 1;
  opt->theta = 0.25;
  opt->max_dofs = 1000000;
  opt->max_steps = 1000;
  opt->threads = 1;
}

stls_status stls_solve(const stls_problem* p, const stls_run_options* opt, stls_step_fn on_step,
                       void* user, stls_run** out) {
  if (!p || !opt || !out) return fail(STLS_INVALID_ARGUMENT, "null argument");
  if (!(opt->theta > 0.0 && opt->theta <= 1.0))
    return fail(STLS_INVALID_ARGUMENT, "theta must lie in (0, 1]");
  if (opt->max_dofs < 1 || opt->max_steps < 1)
    return fail(STLS_INVALID_ARGUMENT, "max_dofs and max_steps must be positive");
  try {
    stls::LoopConfig cfg;
    cfg.mode = opt->adaptive ? stls::RefineMode::adaptive : stls::RefineMode::uniform;
    cfg.theta = opt->theta;
    cfg.max_dofs = opt->max_dofs;
    cfg.max_steps = opt->max_steps;
    cfg.threads = opt->threads > 1 ? opt->threads : 1;

    stls::StepCallback cb;
    if (on_step)
      cb = [on_step, user](const stls::StepState& st) {
        stls_record rec = to_record(st.record);
        on_step(&rec, user);
      };
    auto* run = new Run{unwrap(p)->spec, cfg, stls::run_loop(unwrap(p)->spec, cfg, cb)};
    *out = reinterpret_cast<stls_run*>(run);
    if (run->result.solver_failed) return fail(STLS_SOLVER_FAILURE, "iterative solver stalled");
  } catch (const std::exception& e) {
    return fail(STLS_INTERNAL_ERROR, e.what());
  }
  return STLS_OK;
}

void stls_run_destroy(stls_run* r) { delete reinterpret_cast<Run*>(r); }

size_t stls_run_steps(const stls_run* r) { return r ? unwrap(r)->result.records.size() : 0; }

stls_status stls_run_record(const stls_run* r, size_t step, stls_record* out) {
  if (!r || !out) return fail(STLS_INVALID_ARGUMENT, "null argument");
  const auto& records = unwrap(r)->result.records;
  if (step >= records.size()) return fail(STLS_INVALID_ARGUMENT, "step out of range");
  *out = to_record(records[step]);
  return STLS_OK;
}

const char* stls_csv_header(void) {
  return "step,ndofs,nelems,eta,err_l2,err_u0,err_uT,err_flux,err_dt,cg_iters,wall_ms";
}

int stls_record_csv(const stls_record* record, char* buf, size_t cap) {
  if (!record) return -1;
  std::string line = record_line(*record);
  if (buf && cap > 0) {
    size_t n = std::min(cap - 1, line.size());
    std::memcpy(buf, line.data(), n);
    buf[n] = '\0';
  }
  return static_cast<int>(line.size());
}

stls_status stls_run_write_csv(const stls_run* r, const char* path) {
  if (!r || !path) return fail(STLS_INVALID_ARGUMENT, "null argument");
  std::ofstream os(path);
  if (!os) return fail(STLS_IO_ERROR, std::string("cannot open ") + path);
  os << stls_csv_header() << '\n';
  for (const auto& c : unwrap(r)->result.records) os << record_line(to_record(c)) << '\n';
  return os ? STLS_OK : fail(STLS_IO_ERROR, std::string("write failed: ") + path);
}

stls_status stls_run_dump_mesh(const stls_run* r, const char* path) {
  if (!r || !path) return fail(STLS_INVALID_ARGUMENT, "null argument");
  const Run& run = *unwrap(r);
  if (!run.result.mesh) return fail(STLS_INTERNAL_ERROR, "run holds no mesh");
  std::ofstream os(path);
  if (!os) return fail(STLS_IO_ERROR, std::string("cannot open ") + path);
  stls::dump_mesh(os, *run.result.mesh, &run.result.indicators.eta2);
  return os ? STLS_OK : fail(STLS_IO_ERROR, std::string("write failed: ") + path);
}

stls_status stls_run_dump_matrix(const stls_run* r, const char* path) {
  if (!r || !path) return fail(STLS_INVALID_ARGUMENT, "null argument");
  try {
    const Run& run = *unwrap(r);
    if (!run.result.mesh) return fail(STLS_INTERNAL_ERROR, "run holds no mesh");
    stls::SparseSystem sys =
        stls::assemble(*run.result.mesh, run.result.solution.dofmap, run.spec,
                       {run.cfg.data_order, run.cfg.threads});
    std::ofstream os(path);
    if (!os) return fail(STLS_IO_ERROR, std::string("cannot open ") + path);
    stls::write_matrix_market(os, sys);
    if (!os) return fail(STLS_IO_ERROR, std::string("write failed: ") + path);
  } catch (const std::exception& e) {
    return fail(STLS_INTERNAL_ERROR, e.what());
  }
  return STLS_OK;
}

stls_status stls_interp_study(const char* problem_id, int levels, const char* path) {
  if (!problem_id || !path) return fail(STLS_INVALID_ARGUMENT, "null argument");
  if (levels < 2) return fail(STLS_INVALID_ARGUMENT, "need at least 2 levels");
  try {
    stls::ProblemSpec p = stls::catalog(problem_id);
    if (!p.has_exact)
      return fail(STLS_INVALID_ARGUMENT,
                  std::string(problem_id) + " has no exact solution to study");
    auto rows = stls::interp_rate_study(p.exact_u, p.exact_grad, p.exact_dt, p.d, levels);
    std::ofstream os(path);
    if (!os) return fail(STLS_IO_ERROR, std::string("cannot open ") + path);
    os << "level,h,tensor_l2,tensor_h1,tensor0_h1,tensor0_dt,simp_h1,simp0_h1,simp0_dt,flux\n";
    char buf[40];
    for (const auto& row : rows) {
      os << row.level;
      for (double v : {row.h, row.tensor_l2, row.tensor_h1, row.tensor0_h1, row.tensor0_dt,
                       row.simp_h1, row.simp0_h1, row.simp0_dt, row.flux}) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ',' << buf;
      }
      os << '\n';
    }
    if (!os) return fail(STLS_IO_ERROR, std::string("write failed: ") + path);
  } catch (const std::invalid_argument& e) {
    return fail(STLS_UNKNOWN_PROBLEM, e.what());
  } catch (const std::exception& e) {
    return fail(STLS_INTERNAL_ERROR, e.what());
  }
  return STLS_OK;
}

stls_status stls_self_check(uint64_t seed, int threads, int* failures) {
  try {
    stls::SelfCheckOptions opt;
    opt.seed = seed;
    opt.threads = threads > 1 ? threads : 1;
    int n = stls::run_self_check(std::cout, opt);
    if (failures) *failures = n;
  } catch (const std::exception& e) {
    return fail(STLS_INTERNAL_ERROR, e.what());
  }
  return STLS_OK;
}

}  // extern "C"
