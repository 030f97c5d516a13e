#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "assembly.hpp"
#include "doctest.h"
#include "estimator.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "solver.hpp"

using namespace stls;

namespace {

DiscretePair zero_pair(const SpaceTimeMesh& m) {
  DiscretePair w;
  w.mesh = &m;
  w.dofmap = build_dof_map(m);
  w.coeffs.assign(w.dofmap.n_total, 0.0);
  return w;
}

const double pi = std::acos(-1.0);

}  // namespace

TEST_CASE("zero data and zero solution give zero indicators") {
  SpaceTimeMesh m = make_square_cross_mesh();
  m = bisect(m, {0, 1, 2, 3});
  DiscretePair w = zero_pair(m);
  IndicatorField ind = local_indicators(w, make_zero_problem(1));
  CHECK(ind.total == 0.0);
  REQUIRE((int)ind.eta2.size() == m.n_elements());
  for (double e : ind.eta2) CHECK(e == 0.0);

  ErrorReport err = error_norms(w, make_zero_problem(1));
  CHECK(err.has_u0);
  CHECK(err.has_l2);
  CHECK(err.total() == 0.0);

  // no exact callbacks: only the initial misfit is measurable
  ErrorReport partial = error_norms(w, catalog("ex4_1d"));
  CHECK(partial.has_u0);
  CHECK_FALSE(partial.has_l2);
  CHECK_FALSE(partial.has_flux);
}

TEST_CASE("constant initial datum is picked up by the trace term") {
  // f = 0, u0 = 1, u_h = 0: the functional reduces to the initial misfit,
  // so the indicators must sum to the measure of the initial plane
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 2), make_interval_mesh(4));
  DiscretePair w = zero_pair(m);
  ProblemSpec p;
  p.d = 1;
  p.f = [](const Point&) { return 0.0; };
  p.u0 = [](const Point&) { return 1.0; };
  IndicatorField ind = local_indicators(w, p);
  CHECK(ind.total == doctest::Approx(1.0).epsilon(1e-13));
  // only elements owning an initial facet contribute
  for (int k = 0; k < m.n_elements(); ++k) {
    bool has_initial = false;
    for (const Facet& f : m.initial_facets)
      if (f.element == k) has_initial = true;
    if (!has_initial) CHECK(ind.eta2[k] == 0.0);
  }
}

TEST_CASE("error norms against a known field for the zero solution") {
  ProblemSpec p = catalog("ex1_1d");
  SpaceTimeMesh m = p.initial_mesh();
  for (int r = 0; r < 3; ++r) {
    std::vector<int> all(m.n_elements());
    for (int k = 0; k < m.n_elements(); ++k) all[k] = k;
    m = bisect(m, all);
  }
  DiscretePair w = zero_pair(m);
  ErrorReport err = error_norms(w, p);
  REQUIRE(err.has_l2);
  REQUIRE(err.has_u0);
  REQUIRE(err.has_uT);
  REQUIRE(err.has_flux);
  REQUIRE(err.has_dt);
  // closed forms of the norms of the exact solution
  CHECK(err.err_l2 == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(err.err_u0 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
  CHECK(err.err_uT == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
  CHECK(err.err_flux == doctest::Approx(pi / 2.0).epsilon(1e-4));
  CHECK(err.err_dt == doctest::Approx(pi / 2.0).epsilon(1e-4));
  double total = err.total();
  double expect = std::sqrt(0.25 + 0.5 + 0.5 + pi * pi / 2.0);
  CHECK(total == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("indicator total equals the functional identity at the solution") {
  for (const char* id : {"ex1_1d", "ex2_1d"}) {
    ProblemSpec p = catalog(id);
    SpaceTimeMesh m = p.initial_mesh();
    for (int r = 0; r < 2; ++r) {
      std::vector<int> all(m.n_elements());
      for (int k = 0; k < m.n_elements(); ++k) all[k] = k;
      m = bisect(m, all);
    }
    DofMap dm = build_dof_map(m);
    SparseSystem s = assemble(m, dm, p);
    SolverConfig cfg;
    cfg.rtol = 1e-12;
    DiscretePair w;
    w.mesh = &m;
    w.dofmap = dm;
    SolveStats st = pcg(s, w.coeffs, cfg);
    REQUIRE(st.converged);

    IndicatorField ind = local_indicators(w, p);
    double data2 = data_norm_squared(m, p);
    double lx = 0.0;
    for (int i = 0; i < s.n; ++i) lx += s.rhs[i] * w.coeffs[i];
    // residual correction bounds the inexactness of the solve
    std::vector<double> ax(s.n);
    s.multiply(w.coeffs.data(), ax.data());
    double xr = 0.0;
    for (int i = 0; i < s.n; ++i) xr += w.coeffs[i] * (s.rhs[i] - ax[i]);
    double gap = std::fabs(ind.total - (data2 - lx));
    CHECK(gap <= 2.0 * std::fabs(xr) + 1e-9 * std::max(1.0, data2));
  }
}

TEST_CASE("estimator is equivalent to the error under uniform refinement") {
  ProblemSpec p = catalog("ex1_1d");
  SpaceTimeMesh m = p.initial_mesh();
  double lo = 1e30, hi = 0.0;
  for (int level = 0; level < 4; ++level) {
    DofMap dm = build_dof_map(m);
    SparseSystem s = assemble(m, dm, p);
    SolverConfig cfg;
    cfg.rtol = 1e-11;
    DiscretePair w;
    w.mesh = &m;
    w.dofmap = dm;
    REQUIRE(pcg(s, w.coeffs, cfg).converged);
    double eta = std::sqrt(local_indicators(w, p).total);
    double err = error_norms(w, p).total();
    double ratio = eta / err;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    std::vector<int> all(m.n_elements());
    for (int k = 0; k < m.n_elements(); ++k) all[k] = k;
    m = bisect(m, all);
  }
  CHECK(hi / lo < 2.0);  // stable efficiency across levels
  CHECK(lo > 0.3);
  CHECK(hi < 3.5);
}

TEST_CASE("data norm accumulates source and initial datum") {
  // f = 2 on the unit cylinder and u0 = 1: squares are 4 and 1
  ProblemSpec p = catalog("ex4_1d");
  SpaceTimeMesh m = p.initial_mesh();
  CHECK(data_norm_squared(m, p) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("indicators are invariant under the thread count") {
  ProblemSpec p = catalog("ex1_1d");
  SpaceTimeMesh m = p.initial_mesh();
  m = bisect(m, {0, 2});
  DiscretePair w = zero_pair(m);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& c : w.coeffs) c = dist(rng);
  EstimatorOptions one{4, 1}, four{4, 4};
  IndicatorField a = local_indicators(w, p, one);
  IndicatorField b = local_indicators(w, p, four);
  CHECK(a.eta2 == b.eta2);
  CHECK(a.total == b.total);
}
