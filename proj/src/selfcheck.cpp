#include "selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "adaptivity.hpp"
#include "assembly.hpp"
#include "estimator.hpp"
#include "fe_space.hpp"
#include "interp.hpp"
#include "problems.hpp"
#include "quadrature.hpp"
#include "solver.hpp"

namespace stls {

namespace {

std::vector<int> random_marks(int n_elements, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.25);
  std::vector<int> marked;
  for (int k = 0; k < n_elements; ++k)
    if (coin(rng)) marked.push_back(k);
  if (marked.empty()) marked.push_back(0);
  return marked;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

struct Reporter {
  std::ostream& os;
  int failures = 0;

  void line(const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "[ ok ] " : "[fail] ") << name << ": " << detail << "\n";
    if (!ok) ++failures;
  }
};

}  // namespace

SpatialMesh random_spatial_mesh(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (d == 1) {
    std::uniform_int_distribution<int> ncells(1, 6);
    int n = ncells(rng);
    std::vector<double> nodes;
    for (int i = 0; i <= n; ++i) {
      double jitter = i == 0 || i == n ? 0.0 : 0.4 * (unif(rng) - 0.5);
      nodes.push_back((i + jitter) / n);
    }
    return make_interval_mesh(nodes);
  }
  std::uniform_int_distribution<int> ncells(1, 3);
  int nx = ncells(rng), ny = ncells(rng);
  SpatialMesh sm = make_rect_mesh(nx, ny, 0.0, 0.0, 1.0, 1.0);
  double hx = 1.0 / nx, hy = 1.0 / ny;
  for (auto& p : sm.vertices) {
    bool interior = p[0] > 1e-12 && p[0] < 1.0 - 1e-12 && p[1] > 1e-12 && p[1] < 1.0 - 1e-12;
    if (!interior) continue;
    p[0] += 0.15 * hx * (2.0 * unif(rng) - 1.0);
    p[1] += 0.15 * hy * (2.0 * unif(rng) - 1.0);
  }
  return sm;
}

TimePartition random_time_partition(std::mt19937_64& rng, int max_slabs) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> nslabs(1, max_slabs);
  int n = nslabs(rng);
  TimePartition tp;
  for (int k = 0; k <= n; ++k) {
    double jitter = k == 0 || k == n ? 0.0 : 0.4 * (unif(rng) - 0.5);
    tp.nodes.push_back((k + jitter) / n);
  }
  return tp;
}

SpaceTimeMesh random_space_time_mesh(int d, std::mt19937_64& rng, int max_unknowns,
                                     bool allow_bisection) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    SpatialMesh sm = random_spatial_mesh(d, rng);
    TimePartition tp = random_time_partition(rng);
    SpaceTimeMesh m = build_tensor_product_mesh(tp, sm);
    if (allow_bisection && (rng() & 1u)) m = bisect(m, random_marks(m.n_elements(), rng));
    if (build_dof_map(m).n_total <= max_unknowns) return m;
  }
  SpatialMesh sm = d == 1 ? make_interval_mesh(2) : make_rect_mesh(1, 1, 0.0, 0.0, 1.0, 1.0);
  return build_tensor_product_mesh(TimePartition::uniform(1.0, 2), sm);
}

int run_self_check(std::ostream& os, const SelfCheckOptions& opt) {
  Reporter rep{os};

  {  // quadrature: every barycentric monomial up to the declared order
    bool ok = true;
    int tested = 0;
    std::ostringstream bad;
    for (int dim = 1; dim <= 3 && ok; ++dim)
      for (int order = 1; order <= 5 && ok; ++order) {
        const QuadratureRule& rule = simplex_rule(dim, order);
        std::array<int, 4> e{};
        auto sweep = [&](auto&& self, int slot, int left) -> void {
          if (!ok) return;
          if (slot == dim + 1) {
            int total = 0;
            double num = factorial(dim);
            for (int i = 0; i <= dim; ++i) {
              total += e[i];
              num *= factorial(e[i]);
            }
            double exact = num / factorial(total + dim);
            double got = 0.0;
            for (const auto& qp : rule.points) {
              double v = qp.weight;
              for (int i = 0; i <= dim; ++i)
                for (int r = 0; r < e[i]; ++r) v *= qp.bary[i];
              got += v;
            }
            ++tested;
            if (std::abs(got - exact) > 1e-13) {
              ok = false;
              bad << "dim " << dim << " order " << order << " off by " << std::abs(got - exact);
            }
            return;
          }
          for (int k = 0; k <= left; ++k) {
            e[slot] = k;
            self(self, slot + 1, left - k);
          }
          e[slot] = 0;
        };
        sweep(sweep, 0, order);
      }
    rep.line("quadrature", ok,
             ok ? std::to_string(tested) + " monomials integrated exactly" : bad.str());
  }

  std::mt19937_64 rng(opt.seed);

  {  // refinement: random meshes stay admissible through refinement rounds
    bool ok = true;
    int checked = 0;
    std::string msg;
    for (int d : {1, 2})
      for (int repn = 0; repn < 6 && ok; ++repn) {
        SpaceTimeMesh m = random_space_time_mesh(d, rng, 4000);
        for (int round = 0; round < 2; ++round) m = bisect(m, random_marks(m.n_elements(), rng));
        AdmissibilityReport ar = check_admissibility(m, CheckLevel::full);
        if (!ar.pass) {
          ok = false;
          msg = "d=" + std::to_string(d) + ": " + ar.message;
        }
        ++checked;
      }
    rep.line("refinement", ok, ok ? std::to_string(checked) + " random meshes admissible" : msg);
  }

  {  // system: symmetry and positive definiteness
    bool ok = true;
    int checked = 0;
    std::string msg;
    for (int d : {1, 2})
      for (int repn = 0; repn < 4 && ok; ++repn) {
        SpaceTimeMesh m = random_space_time_mesh(d, rng, 450);
        DofMap dm = build_dof_map(m);
        SparseSystem sys = assemble(m, dm, make_zero_problem(d), {4, opt.threads});
        double amax = 0.0;
        for (double v : sys.values) amax = std::max(amax, std::abs(v));
        for (int i = 0; i < sys.n && ok; ++i)
          for (int idx = sys.row_ptr[i]; idx < sys.row_ptr[i + 1]; ++idx)
            if (std::abs(sys.values[idx] - sys.get(sys.col_idx[idx], i)) > 1e-12 * amax) {
              ok = false;
              msg = "asymmetric entry";
            }
        if (ok) {
          double lam = dense_smallest_eigenvalue(sys);
          if (!(lam > 0.0)) {
            ok = false;
            msg = "nonpositive eigenvalue " + std::to_string(lam);
          }
        }
        ++checked;
      }
    rep.line("system", ok, ok ? std::to_string(checked) + " random systems SPD" : msg);
  }

  {  // solver: iterative solution matches the dense factorization
    bool ok = true;
    int checked = 0;
    std::string msg;
    for (int d : {1, 2})
      for (int repn = 0; repn < 3 && ok; ++repn) {
        SpaceTimeMesh m = random_space_time_mesh(d, rng, 450);
        DofMap dm = build_dof_map(m);
        ProblemSpec p = catalog(d == 1 ? "ex1_1d" : "ex1_2d");
        SparseSystem sys = assemble(m, dm, p, {4, opt.threads});
        std::vector<double> x;
        SolveStats st = pcg(sys, x);
        std::vector<double> xd = dense_ldlt_solve(sys, sys.rhs);
        double diff = 0.0, scale = 0.0;
        for (int i = 0; i < sys.n; ++i) {
          diff += (x[i] - xd[i]) * (x[i] - xd[i]);
          scale += xd[i] * xd[i];
        }
        if (!st.converged || std::sqrt(diff) > 1e-7 * std::max(1.0, std::sqrt(scale))) {
          ok = false;
          msg = "mismatch " + std::to_string(std::sqrt(diff));
        }
        ++checked;
      }
    rep.line("solver", ok, ok ? std::to_string(checked) + " systems match the dense solve" : msg);
  }

  {  // identity: eta^2 = |f|^2 + |u0|^2 - l(u_h, sigma_h) at the solution
    bool ok = true;
    std::string msg;
    for (const char* id : {"ex1_1d", "ex2_1d", "ex1_2d"}) {
      ProblemSpec p = catalog(id);
      SpaceTimeMesh m = p.initial_mesh();
      if (p.d == 1)
        for (int round = 0; round < 2; ++round) {
          std::vector<int> all(m.n_elements());
          for (int k = 0; k < m.n_elements(); ++k) all[k] = k;
          m = bisect(m, all);
        }
      DofMap dm = build_dof_map(m);
      SparseSystem sys = assemble(m, dm, p, {4, opt.threads});
      std::vector<double> x;
      pcg(sys, x);
      DiscretePair w{&m, dm, x};
      IndicatorField ind = local_indicators(w, p, {4, opt.threads});
      double data2 = data_norm_squared(m, p);
      double lin = 0.0;
      for (int i = 0; i < sys.n; ++i) lin += sys.rhs[i] * x[i];
      double gap = std::abs(ind.total - (data2 - lin));
      if (gap > 1e-6 * std::max(1.0, data2)) {
        ok = false;
        msg = std::string(id) + " gap " + std::to_string(gap);
        break;
      }
    }
    rep.line("identity", ok, ok ? "estimator matches the assembled functional" : msg);
  }

  {  // projection: residual orthogonal to the nodal basis
    bool ok = true;
    std::string msg;
    for (int d : {1, 2}) {
      SpatialMesh sm = random_spatial_mesh(d, rng);
      auto g = [d](const Point& x) {
        double v = 1.0 + 2.0 * x[0] - x[0] * x[0] * x[0];
        if (d == 2) v += x[0] * x[1] * x[1] - x[1];
        return v;
      };
      for (bool constrained : {false, true}) {
        std::vector<double> coeff = l2_projection(sm, g, constrained);
        std::vector<char> bnd = spatial_boundary_vertices(sm);
        const QuadratureRule& rule = simplex_rule(d, 5);
        std::vector<double> resid(sm.n_vertices(), 0.0);
        for (int e = 0; e < sm.n_elements(); ++e) {
          SpatialGeometry geo = spatial_element_geometry(sm, e);
          for (const auto& qp : rule.points) {
            Point x{0, 0, 0};
            double ph = 0.0;
            for (int i = 0; i <= d; ++i) {
              int v = sm.elements[e][i];
              ph += qp.bary[i] * coeff[v];
              for (int c = 0; c < d; ++c) x[c] += qp.bary[i] * sm.vertices[v][c];
            }
            double w = qp.weight * geo.measure * (g(x) - ph);
            for (int i = 0; i <= d; ++i) resid[sm.elements[e][i]] += w * qp.bary[i];
          }
        }
        for (int v = 0; v < sm.n_vertices(); ++v) {
          if (constrained && bnd[v]) continue;
          if (std::abs(resid[v]) > 1e-10) {
            ok = false;
            msg = "d=" + std::to_string(d) + " vertex " + std::to_string(v);
          }
        }
      }
    }
    rep.line("projection", ok, ok ? "residuals orthogonal to the nodal basis" : msg);
  }

  os << (rep.failures == 0 ? "self-check passed\n" : "self-check FAILED\n");
  return rep.failures;
}

}  // namespace stls
