#pragma once

#include <vector>

#include "assembly.hpp"

namespace stls {

enum class Preconditioner { jacobi, none };

struct SolverConfig {
  double rtol = 1e-10;
  double abs_floor = 1e-14;
  int max_iterations = 0;  // 0: use 20*sqrt(n) + 200
  Preconditioner precond = Preconditioner::jacobi;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

// Preconditioned conjugate gradients; x0 is the starting vector when given.
SolveStats pcg(const SparseSystem& s, std::vector<double>& x, const SolverConfig& cfg = {},
               const std::vector<double>* x0 = nullptr);

// Dense LDL^T factorization solve, the small-system oracle.  Throws if a
// pivot is not strictly positive.
std::vector<double> dense_ldlt_solve(const SparseSystem& s, const std::vector<double>& b);

// Smallest eigenvalue via inverse iteration on the dense factorization.
double dense_smallest_eigenvalue(const SparseSystem& s, int iterations = 200);

// Solve a dense SPD system (row-major n x n); throws on nonpositive pivots.
std::vector<double> dense_spd_solve(std::vector<double> a, std::vector<double> b);

}  // namespace stls
