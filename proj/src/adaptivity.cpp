#include "adaptivity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stls {

std::vector<int> doerfler_mark(const IndicatorField& ind, double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw std::invalid_argument("theta must be in (0,1]");
  std::vector<int> order(ind.eta2.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ind.eta2[a] > ind.eta2[b]; });
  std::vector<int> marked;
  double target = theta * ind.total;
  if (!(ind.total > 0.0)) return marked;
  double sum = 0.0;
  for (int k : order) {
    if (sum >= target) break;
    marked.push_back(k);
    sum += ind.eta2[k];
  }
  return marked;
}

LoopResult run_loop(const ProblemSpec& p, const LoopConfig& cfg, const StepCallback& cb) {
  if (!(cfg.theta > 0.0) || cfg.theta > 1.0) throw std::invalid_argument("theta must be in (0,1]");
  LoopResult res;
  res.mesh = std::make_unique<SpaceTimeMesh>(p.initial_mesh());
  std::unique_ptr<SpaceTimeMesh> prev_mesh;
  DiscretePair prev_solution;

  for (int step = 0; step < cfg.max_steps; ++step) {
    auto t0 = std::chrono::steady_clock::now();
    DofMap dm = build_dof_map(*res.mesh);
    SparseSystem sys = assemble(*res.mesh, dm, p, {cfg.data_order, cfg.threads});

    std::vector<double> x;
    std::vector<double> x0;
    if (cfg.warm_start && prev_mesh) {
      DiscretePair prol = prolong(prev_solution, *res.mesh);
      x0 = std::move(prol.coeffs);
    }
    SolverConfig scfg = cfg.solver;
    if (scfg.max_iterations == 0) {
      // graded meshes push Jacobi-PCG well past the square-root heuristic
      double base = 20.0 * std::sqrt(static_cast<double>(sys.n)) + 200.0;
      scfg.max_iterations = static_cast<int>(std::max(base, 2.0 * sys.n + 1000.0));
    }
    SolveStats stats = pcg(sys, x, scfg, x0.empty() ? nullptr : &x0);

    res.solution = DiscretePair{res.mesh.get(), dm, std::move(x)};
    res.indicators = local_indicators(res.solution, p, {cfg.data_order, cfg.threads});
    ErrorReport rep = error_norms(res.solution, p, {cfg.data_order, cfg.threads});
    auto t1 = std::chrono::steady_clock::now();

    ConvergenceRecord rec;
    rec.step = step;
    rec.ndofs = dm.n_total;
    rec.nelems = res.mesh->n_elements();
    rec.eta = std::sqrt(res.indicators.total);
    rec.errors = rep;
    rec.cg_iters = stats.iterations;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    res.records.push_back(rec);
    if (cb) cb(StepState{*res.mesh, dm, sys, res.solution, res.indicators, stats, rec});

    if (!stats.converged) {
      res.solver_failed = true;
      break;
    }
    if (dm.n_total >= cfg.max_dofs) break;

    std::vector<int> marked;
    if (cfg.mode == RefineMode::uniform) {
      marked.resize(res.mesh->n_elements());
      std::iota(marked.begin(), marked.end(), 0);
    } else {
      marked = doerfler_mark(res.indicators, cfg.theta);
      double sum = 0.0;
      for (int k : marked) sum += res.indicators.eta2[k];
      if (sum + 1e-12 * res.indicators.total < cfg.theta * res.indicators.total)
        throw std::logic_error("marked set misses the Doerfler bound");
    }
    if (marked.empty()) {
      if (!(res.indicators.total > 0.0)) {
        // estimator blind to the data at this resolution (e.g. a source thinner
        // than the quadrature can see); refine uniformly to reveal it
        marked.resize(res.mesh->n_elements());
        std::iota(marked.begin(), marked.end(), 0);
      } else {
        break;
      }
    }

    auto fine = std::make_unique<SpaceTimeMesh>(bisect(*res.mesh, marked));
    prev_mesh = std::move(res.mesh);
    prev_solution = res.solution;
    prev_solution.mesh = prev_mesh.get();
    res.mesh = std::move(fine);
  }
  return res;
}

std::vector<ConvergenceRecord> adaptive_loop(const ProblemSpec& p, const LoopConfig& cfg) {
  return run_loop(p, cfg).records;
}

std::vector<ConvergenceRecord> uniform_loop(const ProblemSpec& p, LoopConfig cfg) {
  cfg.mode = RefineMode::uniform;
  return run_loop(p, cfg).records;
}

}  // namespace stls
