#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "assembly.hpp"
#include "estimator.hpp"
#include "solver.hpp"

namespace stls {

enum class RefineMode { uniform, adaptive };

struct LoopConfig {
  RefineMode mode = RefineMode::adaptive;
  double theta = 0.25;
  long long max_dofs = 1000000;
  int max_steps = 1000;
  SolverConfig solver;
  int data_order = 4;
  int threads = 1;
  bool warm_start = true;  // start PCG from the prolonged previous solution
};

struct ConvergenceRecord {
  int step = 0;
  long long ndofs = 0;
  long long nelems = 0;
  double eta = 0.0;
  ErrorReport errors;
  int cg_iters = 0;
  double wall_ms = 0.0;
};

// Greedy selection in descending indicator order (ties by ascending element
// index) until theta * total <= marked sum; the returned set, in selection
// order, is minimal for this ordering.  Zero total marks nothing.
std::vector<int> doerfler_mark(const IndicatorField& ind, double theta);

struct StepState {
  const SpaceTimeMesh& mesh;
  const DofMap& dofmap;
  const SparseSystem& system;
  const DiscretePair& solution;
  const IndicatorField& indicators;
  const SolveStats& stats;
  const ConvergenceRecord& record;
};
using StepCallback = std::function<void(const StepState&)>;

struct LoopResult {
  std::vector<ConvergenceRecord> records;
  std::unique_ptr<SpaceTimeMesh> mesh;  // final mesh
  DiscretePair solution;                // defined on *mesh
  IndicatorField indicators;
  bool solver_failed = false;
};

// Solve / estimate / mark / refine until max_dofs is reached (the crossing
// step is still solved and recorded) or max_steps steps were done.  The
// callback runs after each record.
LoopResult run_loop(const ProblemSpec& p, const LoopConfig& cfg, const StepCallback& cb = {});

std::vector<ConvergenceRecord> adaptive_loop(const ProblemSpec& p, const LoopConfig& cfg);
std::vector<ConvergenceRecord> uniform_loop(const ProblemSpec& p, LoopConfig cfg);

}  // namespace stls
