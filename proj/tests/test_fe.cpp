#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "assembly.hpp"
#include "doctest.h"
#include "fe_space.hpp"
#include "mesh.hpp"
#include "problems.hpp"

using namespace stls;

namespace {

DiscretePair random_pair(const SpaceTimeMesh& m, unsigned seed) {
  DiscretePair w;
  w.mesh = &m;
  w.dofmap = build_dof_map(m);
  w.coeffs.resize(w.dofmap.n_total);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& c : w.coeffs) c = dist(rng);
  return w;
}

}  // namespace

TEST_CASE("dof map on the cross mesh") {
  SpaceTimeMesh m = make_square_cross_mesh();
  DofMap dm = build_dof_map(m);
  CHECK(dm.n_u == 1);  // only the midpoint carries a u unknown
  CHECK(dm.n_total == 6);
  for (int v = 0; v < 5; ++v) {
    if (m.vertex_lateral[v])
      CHECK(dm.u_dof[v] == -1);
    else
      CHECK(dm.u_dof[v] >= 0);
  }
  CHECK(dm.sigma_dof(0, 0) == 1);
  CHECK(dm.sigma_dof(4, 0) == 5);
}

TEST_CASE("element values apply the lateral constraint") {
  SpaceTimeMesh m = make_square_cross_mesh();
  DiscretePair w;
  w.mesh = &m;
  w.dofmap = build_dof_map(m);
  w.coeffs.assign(w.dofmap.n_total, 1.0);
  for (int k = 0; k < m.n_elements(); ++k) {
    ElementValues ev = element_values(w, k);
    for (int i = 0; i <= m.dim; ++i) {
      int v = m.elements[k].v[i];
      CHECK(ev.u[i] == (m.vertex_lateral[v] ? 0.0 : 1.0));
      CHECK(ev.sigma[i][0] == 1.0);
    }
  }
}

TEST_CASE("sample_field reproduces an affine flux field") {
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_interval_mesh(3));
  DiscretePair w;
  w.mesh = &m;
  w.dofmap = build_dof_map(m);
  w.coeffs.assign(w.dofmap.n_total, 0.0);
  auto g = [](const Point& p) { return 2.0 + 3.0 * p[0] - p[1]; };
  for (int v = 0; v < m.n_vertices(); ++v)
    w.coeffs[w.dofmap.sigma_dof(v, 0)] = g(m.vertices[v]);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int k = 0; k < m.n_elements(); ++k) {
    double a = dist(rng), b = dist(rng) * (1.0 - a);
    double bary[4] = {a, b, 1.0 - a - b, 0.0};
    FieldSample s = sample_field(w, k, bary);
    Point p = element_point(m, k, bary);
    CHECK(s.sigma[0] == doctest::Approx(g(p)).epsilon(1e-12));
    CHECK(s.div_sigma == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.u == 0.0);
  }
}

TEST_CASE("sample_field differentiates the interior hat function") {
  SpaceTimeMesh m = make_square_cross_mesh();
  DiscretePair w;
  w.mesh = &m;
  w.dofmap = build_dof_map(m);
  w.coeffs.assign(w.dofmap.n_total, 0.0);
  w.coeffs[0] = 1.0;  // u = hat of the midpoint
  double bary[4] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0};
  for (int k = 0; k < m.n_elements(); ++k) {
    FieldSample s = sample_field(w, k, bary);
    CHECK(s.u == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    // the hat climbs from an outer edge to the midpoint with slope 2
    double slope = std::hypot(s.du_dt, s.grad_u[0]);
    CHECK(slope == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("u and sigma are continuous across shared facets") {
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_interval_mesh(2));
  m = bisect(m, {0, 3});
  DiscretePair w = random_pair(m, 11);

  auto value_at = [&](int k, const std::array<int, 2>& edge) {
    const Element& el = m.elements[k];
    double bary[4] = {0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i <= m.dim; ++i)
      if (el.v[i] == edge[0] || el.v[i] == edge[1]) bary[i] = 0.5;
    FieldSample s = sample_field(w, k, bary);
    return std::array<double, 2>{s.u, s.sigma[0]};
  };

  int shared = 0;
  for (int k = 0; k < m.n_elements(); ++k)
    for (int l = k + 1; l < m.n_elements(); ++l) {
      std::array<int, 2> common{-1, -1};
      int n = 0;
      for (int i = 0; i <= m.dim; ++i)
        for (int j = 0; j <= m.dim; ++j)
          if (m.elements[k].v[i] == m.elements[l].v[j] && n < 2) common[n++] = m.elements[k].v[i];
      if (n < 2) continue;
      ++shared;
      auto a = value_at(k, common), b = value_at(l, common);
      CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
      CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-12));
    }
  CHECK(shared > 8);
}

TEST_CASE("prolongation averages the parent edge") {
  SpaceTimeMesh coarse = make_square_cross_mesh();
  DiscretePair w = random_pair(coarse, 5);
  SpaceTimeMesh fine = bisect(coarse, {0, 2});
  DiscretePair wf = prolong(w, fine);
  CHECK(wf.dofmap.n_total == (int)wf.coeffs.size());
  for (int v = coarse.n_vertices(); v < fine.n_vertices(); ++v) {
    auto [a, b] = fine.vertex_parents[v];
    REQUIRE(a >= 0);
    double expect = 0.5 * (wf.coeffs[wf.dofmap.sigma_dof(a, 0)] + wf.coeffs[wf.dofmap.sigma_dof(b, 0)]);
    CHECK(wf.coeffs[wf.dofmap.sigma_dof(v, 0)] == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("prolongation preserves energy and load") {
  // polynomial data keeps both load quadratures exact, so the (identical)
  // function yields identical numbers on both meshes
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point& q) { return q[0] * q[0] * q[1] + q[1] * q[1]; };
  p.u0 = [](const Point& q) { return q[1] * (1.0 - q[1]); };
  SpaceTimeMesh coarse = make_square_cross_mesh();
  coarse = bisect(coarse, {0, 1, 2, 3});
  DiscretePair w = random_pair(coarse, 17);
  SpaceTimeMesh fine = bisect(coarse, {1, 4, 7});
  DiscretePair wf = prolong(w, fine);

  SparseSystem ac = assemble(coarse, w.dofmap, p);
  SparseSystem af = assemble(fine, wf.dofmap, p);

  // same function on both meshes: the quadratic form and the load agree
  auto quad = [](const SparseSystem& s, const std::vector<double>& x) {
    std::vector<double> y(s.n);
    s.multiply(x.data(), y.data());
    double q = 0.0, l = 0.0;
    for (int i = 0; i < s.n; ++i) {
      q += x[i] * y[i];
      l += s.rhs[i] * x[i];
    }
    return std::array<double, 2>{q, l};
  };
  auto qc = quad(ac, w.coeffs), qf = quad(af, wf.coeffs);
  CHECK(qf[0] == doctest::Approx(qc[0]).epsilon(1e-10));
  CHECK(qf[1] == doctest::Approx(qc[1]).epsilon(1e-10));
}

TEST_CASE("facet traces of u match the nodal values") {
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_interval_mesh(2));
  DiscretePair w = random_pair(m, 23);
  for (const Facet& f : m.initial_facets) {
    double u0 = w.dofmap.u_dof[f.v[0]] >= 0 ? w.coeffs[w.dofmap.u_dof[f.v[0]]] : 0.0;
    double u1 = w.dofmap.u_dof[f.v[1]] >= 0 ? w.coeffs[w.dofmap.u_dof[f.v[1]]] : 0.0;
    double fb[3] = {0.25, 0.75, 0.0};
    CHECK(facet_trace_u(w, f, fb) == doctest::Approx(0.25 * u0 + 0.75 * u1).epsilon(1e-13));
  }
}
