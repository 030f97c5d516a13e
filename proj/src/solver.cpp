#include "solver.hpp"

#include <cmath>
#include <stdexcept>

namespace stls {

SolveStats pcg(const SparseSystem& s, std::vector<double>& x, const SolverConfig& cfg,
               const std::vector<double>* x0) {
  const int n = s.n;
  SolveStats st;
  x.assign(n, 0.0);
  double bnorm = 0.0;
  for (double v : s.rhs) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    st.converged = true;
    return st;
  }
  std::vector<double> dinv(n);
  for (int i = 0; i < n; ++i) {
    double di = 1.0;
    if (cfg.precond == Preconditioner::jacobi) {
      di = s.get(i, i);
      if (!(di > 0.0)) throw std::runtime_error("nonpositive diagonal entry");
    }
    dinv[i] = 1.0 / di;
  }

  std::vector<double> r(n), z(n), p(n), Ap(n);
  if (x0 && static_cast<int>(x0->size()) == n) x = *x0;
  s.multiply(x.data(), Ap.data());
  for (int i = 0; i < n; ++i) r[i] = s.rhs[i] - Ap[i];
  double tol = std::max(cfg.rtol * bnorm, cfg.abs_floor);
  int maxit = cfg.max_iterations > 0
                  ? cfg.max_iterations
                  : static_cast<int>(20.0 * std::sqrt(static_cast<double>(n))) + 200;

  double rz = 0.0;
  for (int i = 0; i < n; ++i) {
    z[i] = dinv[i] * r[i];
    rz += r[i] * z[i];
  }
  p = z;
  double rnorm = 0.0;
  for (double v : r) rnorm += v * v;
  rnorm = std::sqrt(rnorm);

  while (rnorm > tol && st.iterations < maxit) {
    s.multiply(p.data(), Ap.data());
    double pAp = 0.0;
    for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    if (!(pAp > 0.0)) break;  // loss of positivity, give up
    double alpha = rz / pAp;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = dinv[i] * r[i];
      rz_new += r[i] * z[i];
    }
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    rnorm = std::sqrt(rnorm);
    st.iterations++;
  }
  st.relative_residual = rnorm / bnorm;
  st.converged = rnorm <= tol;
  return st;
}

namespace {

// dense LDL^T of the CSR matrix; returns L (unit diagonal, stored strictly
// lower) and D
void dense_factor(const SparseSystem& s, std::vector<double>& L, std::vector<double>& D) {
  const int n = s.n;
  L.assign(static_cast<std::size_t>(n) * n, 0.0);
  D.assign(n, 0.0);
  std::vector<double> A(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p)
      A[static_cast<std::size_t>(i) * n + s.col_idx[p]] = s.values[p];
  for (int j = 0; j < n; ++j) {
    double dj = A[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) dj -= L[static_cast<std::size_t>(j) * n + k] *
                                       L[static_cast<std::size_t>(j) * n + k] * D[k];
    if (!(dj > 0.0)) throw std::runtime_error("matrix not positive definite");
    D[j] = dj;
    L[static_cast<std::size_t>(j) * n + j] = 1.0;
    for (int i = j + 1; i < n; ++i) {
      double v = A[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        v -= L[static_cast<std::size_t>(i) * n + k] * L[static_cast<std::size_t>(j) * n + k] * D[k];
      L[static_cast<std::size_t>(i) * n + j] = v / dj;
    }
  }
}

std::vector<double> ldlt_apply(const std::vector<double>& L, const std::vector<double>& D,
                               const std::vector<double>& b) {
  const int n = static_cast<int>(D.size());
  std::vector<double> y = b;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) y[i] -= L[static_cast<std::size_t>(i) * n + k] * y[k];
  for (int i = 0; i < n; ++i) y[i] /= D[i];
  for (int i = n - 1; i >= 0; --i)
    for (int k = i + 1; k < n; ++k) y[i] -= L[static_cast<std::size_t>(k) * n + i] * y[k];
  return y;
}

}  // namespace

std::vector<double> dense_ldlt_solve(const SparseSystem& s, const std::vector<double>& b) {
  std::vector<double> L, D;
  dense_factor(s, L, D);
  return ldlt_apply(L, D, b);
}

std::vector<double> dense_spd_solve(std::vector<double> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int j = 0; j < n; ++j) {
    double dj = a[static_cast<std::size_t>(j) * n + j];
    if (!(dj > 0.0)) throw std::runtime_error("matrix not positive definite");
    for (int i = j + 1; i < n; ++i) {
      double f = a[static_cast<std::size_t>(i) * n + j] / dj;
      if (f == 0.0) continue;
      for (int k = j; k < n; ++k)
        a[static_cast<std::size_t>(i) * n + k] -= f * a[static_cast<std::size_t>(j) * n + k];
      b[i] -= f * b[j];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double v = b[i];
    for (int k = i + 1; k < n; ++k) v -= a[static_cast<std::size_t>(i) * n + k] * b[k];
    b[i] = v / a[static_cast<std::size_t>(i) * n + i];
  }
  return b;
}

double dense_smallest_eigenvalue(const SparseSystem& s, int iterations) {
  std::vector<double> L, D;
  dense_factor(s, L, D);
  const int n = s.n;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.001 * (i % 7);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    for (double& c : v) c /= norm;
    std::vector<double> w = ldlt_apply(L, D, v);
    double vw = 0.0;
    for (int i = 0; i < n; ++i) vw += v[i] * w[i];
    lambda = 1.0 / vw;  // Rayleigh quotient of A^{-1}, inverted
    v = w;
  }
  return lambda;
}

}  // namespace stls
