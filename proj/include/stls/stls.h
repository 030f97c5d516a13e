#ifndef STLS_H
#define STLS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stls_status {
  STLS_OK = 0,
  STLS_INVALID_ARGUMENT = 1,
  STLS_UNKNOWN_PROBLEM = 2,
  STLS_SOLVER_FAILURE = 3,
  STLS_IO_ERROR = 4,
  STLS_INTERNAL_ERROR = 5
} stls_status;

/* Library version string, e.g. "0.1.0". */
const char* stls_version(void);

/* Message for the most recent failing call on this thread; empty if none. */
const char* stls_last_error(void);

/* Benchmark configuration (opaque). */
typedef struct stls_problem stls_problem;

/* Finished refinement run (opaque). */
typedef struct stls_run stls_run;

/* Benchmark catalog; ids point to static storage. */
size_t stls_problem_count(void);
const char* stls_problem_id(size_t index);

stls_status stls_problem_create(const char* id, stls_problem** out);
void stls_problem_destroy(stls_problem* p);

/* Spatial dimension (1 or 2). */
int stls_problem_dimension(const stls_problem* p);

typedef struct stls_run_options {
  int adaptive;       /* 0: uniform refinement, 1: adaptive */
  double theta;       /* marking fraction, in (0, 1] */
  long long max_dofs; /* loop stops once reached; the crossing step is still solved */
  int max_steps;
  int threads;        /* parallel assembly/estimation; <= 1 runs single-threaded */
} stls_run_options;

/* Defaults: adaptive, theta = 0.25, max_dofs = 1e6, max_steps = 1000, 1 thread. */
void stls_run_options_init(stls_run_options* opt);

/* One line of the convergence history.  Error fields are NaN when the
 * benchmark has no exact solution (err_u0 only needs the initial data). */
typedef struct stls_record {
  int step;
  long long ndofs;
  long long nelems;
  double eta;      /* least-squares error estimator */
  double err_l2;   /* |u - u_h| over the cylinder */
  double err_u0;   /* initial-trace misfit */
  double err_uT;   /* terminal-trace error */
  double err_flux; /* |grad u - sigma_h| */
  double err_dt;   /* |dt u - dt u_h| */
  int cg_iters;
  double wall_ms;  /* time spent on this step */
} stls_record;

typedef void (*stls_step_fn)(const stls_record* record, void* user);

/* Runs the solve/estimate/mark/refine loop.  on_step (may be NULL) fires
 * after each solved step.  On STLS_SOLVER_FAILURE the run handle is still
 * produced and holds the records up to the failing step. */
stls_status stls_solve(const stls_problem* p, const stls_run_options* opt, stls_step_fn on_step,
                       void* user, stls_run** out);

void stls_run_destroy(stls_run* r);

size_t stls_run_steps(const stls_run* r);
stls_status stls_run_record(const stls_run* r, size_t step, stls_record* out);

/* CSV column header (no trailing newline). */
const char* stls_csv_header(void);

/* Formats a record as one CSV line (no trailing newline); NaN error fields
 * become empty fields.  Returns the length the full line requires, like
 * snprintf; the output is truncated if cap is too small. */
int stls_record_csv(const stls_record* record, char* buf, size_t cap);

/* Whole convergence history as CSV. */
stls_status stls_run_write_csv(const stls_run* r, const char* path);

/* Final mesh, one indicator value appended per element line. */
stls_status stls_run_dump_mesh(const stls_run* r, const char* path);

/* Final system in MatrixMarket coordinate format. */
stls_status stls_run_dump_matrix(const stls_run* r, const char* path);

/* Interpolation rate study against the exact solution of the given
 * benchmark (which must provide one); writes a level-by-level CSV. */
stls_status stls_interp_study(const char* problem_id, int levels, const char* path);

/* Runs the internal consistency suites, one line per suite on stdout;
 * *failures receives the number of failed suites. */
stls_status stls_self_check(uint64_t seed, int threads, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* STLS_H */
