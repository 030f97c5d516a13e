#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "assembly.hpp"
#include "doctest.h"
#include "mesh.hpp"
#include "quadrature.hpp"
#include "solver.hpp"

using namespace stls;

namespace {

// Dense reference assembly from the barycentric closed forms, written
// independently of the production kernels.
std::vector<double> reference_matrix(const SpaceTimeMesh& m, const DofMap& dm) {
  int n = dm.n_total;
  std::vector<double> a(n * n, 0.0);
  int d = m.d();
  for (int k = 0; k < m.n_elements(); ++k) {
    ElementGeometry g = element_geometry(m, k);
    const Element& el = m.elements[k];
    int nv = m.dim + 1;
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) {
        int vi = el.v[i], vj = el.v[j];
        double grad_dot = 0.0;
        for (int c = 0; c < d; ++c) grad_dot += g.grad[i][c + 1] * g.grad[j][c + 1];
        double dt_dot = g.grad[i][0] * g.grad[j][0];
        // (u_i, u_j)
        if (dm.u_dof[vi] >= 0 && dm.u_dof[vj] >= 0)
          a[dm.u_dof[vi] * n + dm.u_dof[vj]] += g.volume * (grad_dot + dt_dot);
        // (u_i, sigma_{j,c}) and transpose
        for (int c = 0; c < d; ++c) {
          double val =
              -g.grad[i][c + 1] * g.volume / nv - g.grad[i][0] * g.grad[j][c + 1] * g.volume;
          if (dm.u_dof[vi] >= 0) {
            a[dm.u_dof[vi] * n + dm.sigma_dof(vj, c)] += val;
            a[dm.sigma_dof(vj, c) * n + dm.u_dof[vi]] += val;
          }
        }
        // (sigma_{i,c}, sigma_{j,e})
        double mass = g.volume * (vi == vj ? 2.0 : 1.0) / (nv * (nv + 1.0));
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            double val = g.grad[i][c + 1] * g.grad[j][e + 1] * g.volume;
            if (c == e) val += mass;
            a[dm.sigma_dof(vi, c) * n + dm.sigma_dof(vj, e)] += val;
          }
      }
  }
  for (const Facet& f : m.initial_facets) {
    double meas = facet_measure(m, f);
    int fv = m.dim;  // vertices per facet
    for (int i = 0; i < fv; ++i)
      for (int j = 0; j < fv; ++j) {
        if (dm.u_dof[f.v[i]] < 0 || dm.u_dof[f.v[j]] < 0) continue;
        double val = meas * (i == j ? 2.0 : 1.0) / (fv * (fv + 1.0));
        a[dm.u_dof[f.v[i]] * n + dm.u_dof[f.v[j]]] += val;
      }
  }
  return a;
}

std::vector<double> reference_rhs(const SpaceTimeMesh& m, const DofMap& dm, const ProblemSpec& p) {
  int n = dm.n_total;
  std::vector<double> b(n, 0.0);
  int d = m.d();
  for (int k = 0; k < m.n_elements(); ++k) {
    ElementGeometry g = element_geometry(m, k);
    const Element& el = m.elements[k];
    double fint = integrate_on_element(m, k, simplex_rule(m.dim, 4), p.f);
    for (int i = 0; i <= m.dim; ++i) {
      if (dm.u_dof[el.v[i]] >= 0) b[dm.u_dof[el.v[i]]] += g.grad[i][0] * fint;
      for (int c = 0; c < d; ++c) b[dm.sigma_dof(el.v[i], c)] -= g.grad[i][c + 1] * fint;
    }
  }
  // callers keep u0 = 0 so the initial-facet part stays out
  return b;
}

SpaceTimeMesh small_mesh(int d) {
  if (d == 1) {
    SpaceTimeMesh m =
        build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_interval_mesh(2));
    return bisect(m, {0, 5});
  }
  SpaceTimeMesh m =
      build_tensor_product_mesh(TimePartition::uniform(1.0, 1), make_rect_mesh(1, 1, 0, 0, 1, 1));
  return bisect(m, {2});
}

}  // namespace

TEST_CASE("assembled matrix matches the dense reference entry by entry") {
  for (int d = 1; d <= 2; ++d) {
    SpaceTimeMesh m = small_mesh(d);
    DofMap dm = build_dof_map(m);
    ProblemSpec p;
    p.d = d;
    p.f = [](const Point&) { return 0.0; };
    p.u0 = [](const Point&) { return 0.0; };
    SparseSystem s = assemble(m, dm, p);
    REQUIRE(s.n == dm.n_total);
    std::vector<double> ref = reference_matrix(m, dm);
    double amax = 0.0;
    for (double v : ref) amax = std::max(amax, std::fabs(v));
    // get() reports zero outside the pattern, matching the reference there
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j) CHECK(std::fabs(s.get(i, j) - ref[i * s.n + j]) <= 1e-12 * amax);
  }
}

TEST_CASE("load vector matches the dense reference for smooth data") {
  for (int d = 1; d <= 2; ++d) {
    SpaceTimeMesh m = small_mesh(d);
    DofMap dm = build_dof_map(m);
    ProblemSpec p;
    p.d = d;
    p.f = [](const Point& q) { return q[0] * q[0] * q[1] + 0.5 * q[1]; };
    p.u0 = [](const Point&) { return 0.0; };  // keep the facet part out
    SparseSystem s = assemble(m, dm, p);
    std::vector<double> ref = reference_rhs(m, dm, p);
    double bmax = 0.0;
    for (double v : ref) bmax = std::max(bmax, std::fabs(v));
    REQUIRE(bmax > 0.0);
    for (int i = 0; i < s.n; ++i) CHECK(std::fabs(s.rhs[i] - ref[i]) <= 1e-12 * bmax);
  }
}

TEST_CASE("initial data loads the trace hats") {
  // u0 = 1 on the unit interval: the load of a u unknown is the measure of
  // its initial-facet support divided by the vertex count
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 1), make_interval_mesh(4));
  DofMap dm = build_dof_map(m);
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point&) { return 0.0; };
  p.u0 = [](const Point&) { return 1.0; };
  SparseSystem s = assemble(m, dm, p);
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (dm.u_dof[v] < 0) continue;
    const Point& q = m.vertices[v];
    double want = q[0] == 0.0 ? 0.25 : 0.0;  // two facets of length 1/4, half each
    CHECK(s.rhs[dm.u_dof[v]] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("system is symmetric positive definite") {
  SpaceTimeMesh m = small_mesh(1);
  DofMap dm = build_dof_map(m);
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point&) { return 1.0; };
  p.u0 = [](const Point&) { return 1.0; };
  SparseSystem s = assemble(m, dm, p);

  double amax = 0.0;
  for (double v : s.values) amax = std::max(amax, std::fabs(v));
  for (int i = 0; i < s.n; ++i)
    for (int idx = s.row_ptr[i]; idx < s.row_ptr[i + 1]; ++idx) {
      int j = s.col_idx[idx];
      CHECK(std::fabs(s.values[idx] - s.get(j, i)) <= 1e-12 * amax);
    }

  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(s.n), y(s.n);
  for (int trial = 0; trial < 100; ++trial) {
    for (double& v : x) v = dist(rng);
    s.multiply(x.data(), y.data());
    double q = 0.0;
    for (int i = 0; i < s.n; ++i) q += x[i] * y[i];
    CHECK(q > 0.0);
  }
  CHECK(dense_smallest_eigenvalue(s) > 0.0);
}

TEST_CASE("threaded assembly is deterministic") {
  ProblemSpec p;
  p.d = 2;
  p.f = [](const Point& q) { return std::sin(3.0 * q[0] + q[1]) + q[2]; };
  p.u0 = [](const Point& q) { return q[1] * q[2]; };
  SpaceTimeMesh m =
      build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_rect_mesh(2, 2, 0, 0, 1, 1));
  DofMap dm = build_dof_map(m);
  AssemblyOptions one{4, 1}, four{4, 4};
  SparseSystem a = assemble(m, dm, p, one);
  SparseSystem b = assemble(m, dm, p, four);
  CHECK(a.values == b.values);  // bitwise: per-row accumulation order is fixed
  CHECK(a.rhs == b.rhs);
}

TEST_CASE("writes outside the sparsity pattern are rejected") {
  // refine enough that not every pair of unknowns shares an element
  SpaceTimeMesh m = make_square_cross_mesh();
  for (int r = 0; r < 2; ++r) {
    std::vector<int> all(m.n_elements());
    std::iota(all.begin(), all.end(), 0);
    m = bisect(m, all);
  }
  DofMap dm = build_dof_map(m);
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point&) { return 0.0; };
  p.u0 = [](const Point&) { return 0.0; };
  SparseSystem s = assemble(m, dm, p);
  // pick a row/column pair absent from the stored pattern
  bool found = false;
  for (int i = 0; i < s.n && !found; ++i) {
    std::vector<bool> present(s.n, false);
    for (int idx = s.row_ptr[i]; idx < s.row_ptr[i + 1]; ++idx) present[s.col_idx[idx]] = true;
    for (int j = 0; j < s.n; ++j)
      if (!present[j]) {
        CHECK_THROWS(s.add(i, j, 1.0));
        CHECK(s.get(i, j) == 0.0);
        found = true;
        break;
      }
  }
  CHECK(found);
}

TEST_CASE("matrix export uses coordinate format") {
  SpaceTimeMesh m = make_square_cross_mesh();
  DofMap dm = build_dof_map(m);
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point&) { return 1.0; };
  p.u0 = [](const Point&) { return 0.0; };
  SparseSystem s = assemble(m, dm, p);
  std::ostringstream os;
  write_matrix_market(os, s);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "%%MatrixMarket matrix coordinate real general");
  int n, mcols;
  long long nnz;
  is >> n >> mcols >> nnz;
  CHECK(n == s.n);
  CHECK(mcols == s.n);
  CHECK(nnz == (long long)s.values.size());
  int i, j;
  double v;
  is >> i >> j >> v;
  CHECK(i >= 1);  // one-based indices
  CHECK(j >= 1);
}
