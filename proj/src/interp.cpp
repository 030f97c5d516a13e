#include "interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"
#include "solver.hpp"

namespace stls {

std::vector<double> l2_projection(const SpatialMesh& sm, const SpatialFn& g, bool constrained,
                                  int data_order) {
  const int n = sm.n_vertices();
  const int nv = sm.d + 1;
  std::vector<char> bnd = constrained ? spatial_boundary_vertices(sm) : std::vector<char>(n, 0);
  std::vector<int> dof(n, -1);
  int nd = 0;
  for (int v = 0; v < n; ++v)
    if (!bnd[v]) dof[v] = nd++;

  std::vector<double> mass(static_cast<std::size_t>(nd) * nd, 0.0);
  std::vector<double> rhs(nd, 0.0);
  const QuadratureRule& rule = simplex_rule(sm.d, data_order);
  for (int e = 0; e < sm.n_elements(); ++e) {
    SpatialGeometry geo = spatial_element_geometry(sm, e);
    double diag = 2.0 * geo.measure / (nv * (nv + 1.0));
    double off = geo.measure / (nv * (nv + 1.0));
    for (int i = 0; i < nv; ++i) {
      int di = dof[sm.elements[e][i]];
      if (di < 0) continue;
      for (int j = 0; j < nv; ++j) {
        int dj = dof[sm.elements[e][j]];
        if (dj >= 0) mass[static_cast<std::size_t>(di) * nd + dj] += i == j ? diag : off;
      }
    }
    for (const auto& qp : rule.points) {
      Point x{0, 0, 0};
      for (int i = 0; i < nv; ++i)
        for (int c = 0; c < sm.d; ++c) x[c] += qp.bary[i] * sm.vertices[sm.elements[e][i]][c];
      double val = qp.weight * geo.measure * g(x);
      for (int i = 0; i < nv; ++i) {
        int di = dof[sm.elements[e][i]];
        if (di >= 0) rhs[di] += val * qp.bary[i];
      }
    }
  }
  std::vector<double> c = dense_spd_solve(std::move(mass), std::move(rhs));
  std::vector<double> out(n, 0.0);
  for (int v = 0; v < n; ++v)
    if (dof[v] >= 0) out[v] = c[dof[v]];
  return out;
}

double TimeInterpolant::operator()(const Point& q) const {
  const auto& t = tp.nodes;
  double tt = q[0];
  auto it = std::upper_bound(t.begin(), t.end(), tt);
  int k = static_cast<int>(it - t.begin()) - 1;
  k = std::clamp(k, 0, static_cast<int>(t.size()) - 2);
  double theta = (tt - t[k]) / (t[k + 1] - t[k]);
  return (1.0 - theta) * snapshots[k](q) + theta * snapshots[k + 1](q);
}

TimeInterpolant time_interpolate(const ScalarField& u, const TimePartition& tp) {
  TimeInterpolant out;
  out.tp = tp;
  for (double tk : tp.nodes)
    out.snapshots.push_back([u, tk](const Point& q) {
      Point r = q;
      r[0] = tk;
      return u(r);
    });
  return out;
}

TensorFunction tensor_interpolant(const ScalarField& u, const TimePartition& tp,
                                  const SpatialMesh& sm, bool constrained, int data_order) {
  TensorFunction tf;
  tf.tp = tp;
  tf.sm = sm;
  tf.constrained = constrained;
  for (double tk : tp.nodes) {
    auto snapshot = [&u, tk](const Point& x) {
      Point q{tk, x[0], x[1]};
      return u(q);
    };
    tf.nodes.push_back(l2_projection(sm, snapshot, constrained, data_order));
  }
  return tf;
}

std::vector<double> simplicial_transfer(const TensorFunction& tf, const SpaceTimeMesh& stm) {
  const int nvs = tf.sm.n_vertices();
  const int nt = static_cast<int>(tf.tp.nodes.size());
  if (stm.n_vertices() != nvs * nt) throw std::invalid_argument("vertex-set mismatch");
  const double tol = 1e-12 * (1.0 + stm.dim);
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < nvs; ++i) {
      const Point& p = stm.vertices[k * nvs + i];
      if (std::abs(p[0] - tf.tp.nodes[k]) > tol) throw std::invalid_argument("vertex-set mismatch");
      for (int c = 0; c < tf.sm.d; ++c)
        if (std::abs(p[c + 1] - tf.sm.vertices[i][c]) > tol)
          throw std::invalid_argument("vertex-set mismatch");
    }
  std::vector<double> vals(stm.n_vertices());
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < nvs; ++i) vals[k * nvs + i] = tf.nodes[k][i];
  return vals;
}

TensorErrors tensor_errors(const ScalarField& u, const VectorField& grad_u,
                           const ScalarField& dt_u, const TensorFunction& tf) {
  const SpatialMesh& sm = tf.sm;
  const int nv = sm.d + 1;
  const QuadratureRule& trule = simplex_rule(1, 5);
  const QuadratureRule& xrule = simplex_rule(sm.d, 4);
  double l2 = 0.0, h1 = 0.0, dt = 0.0;
  for (int k = 0; k + 1 < static_cast<int>(tf.tp.nodes.size()); ++k) {
    double t0 = tf.tp.nodes[k], t1 = tf.tp.nodes[k + 1];
    double hk = t1 - t0;
    for (const auto& tq : trule.points) {
      double theta = tq.bary[1];
      double t = t0 + theta * hk;
      double wt = tq.weight * hk;
      for (int e = 0; e < sm.n_elements(); ++e) {
        SpatialGeometry geo = spatial_element_geometry(sm, e);
        double ga[2] = {0, 0}, gb[2] = {0, 0};
        for (int i = 0; i < nv; ++i) {
          int v = sm.elements[e][i];
          for (int c = 0; c < sm.d; ++c) {
            ga[c] += tf.nodes[k][v] * geo.grad[i][c];
            gb[c] += tf.nodes[k + 1][v] * geo.grad[i][c];
          }
        }
        for (const auto& xq : xrule.points) {
          Point x{t, 0, 0};
          double va = 0.0, vb = 0.0;
          for (int i = 0; i < nv; ++i) {
            int v = sm.elements[e][i];
            va += xq.bary[i] * tf.nodes[k][v];
            vb += xq.bary[i] * tf.nodes[k + 1][v];
            for (int c = 0; c < sm.d; ++c) x[c + 1] += xq.bary[i] * sm.vertices[v][c];
          }
          double w = wt * xq.weight * geo.measure;
          double val = (1.0 - theta) * va + theta * vb;
          double du = u(x) - val;
          l2 += w * du * du;
          h1 += w * du * du;
          auto gu = grad_u(x);
          for (int c = 0; c < sm.d; ++c) {
            double dg = gu[c] - ((1.0 - theta) * ga[c] + theta * gb[c]);
            h1 += w * dg * dg;
          }
          double dd = dt_u(x) - (vb - va) / hk;
          dt += w * dd * dd;
        }
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(dt)};
}

SimplicialErrors simplicial_errors(const ScalarField& u, const VectorField& grad_u,
                                   const ScalarField& dt_u, const SpaceTimeMesh& stm,
                                   const std::vector<double>& vals) {
  const QuadratureRule& rule = simplex_rule(stm.dim, 4);
  const int nv = stm.dim + 1;
  const int d = stm.dim - 1;
  double l2 = 0.0, h1 = 0.0, dt = 0.0;
  for (int k = 0; k < stm.n_elements(); ++k) {
    ElementGeometry g = element_geometry(stm, k);
    const Element& el = stm.elements[k];
    double gt = 0.0;
    double gx[2] = {0, 0};
    for (int i = 0; i < nv; ++i) {
      gt += vals[el.v[i]] * g.grad[i][0];
      for (int c = 0; c < d; ++c) gx[c] += vals[el.v[i]] * g.grad[i][c + 1];
    }
    for (const auto& qp : rule.points) {
      Point x = element_point(stm, k, qp.bary.data());
      double val = 0.0;
      for (int i = 0; i < nv; ++i) val += qp.bary[i] * vals[el.v[i]];
      double w = qp.weight * g.volume;
      double du = u(x) - val;
      l2 += w * du * du;
      h1 += w * du * du;
      auto gu = grad_u(x);
      for (int c = 0; c < d; ++c) {
        double dg = gu[c] - gx[c];
        h1 += w * dg * dg;
      }
      double dd = dt_u(x) - gt;
      dt += w * dd * dd;
    }
  }
  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(dt)};
}

double simplicial_vector_error(const VectorField& w, const SpaceTimeMesh& stm,
                               const std::vector<std::vector<double>>& comps) {
  const QuadratureRule& rule = simplex_rule(stm.dim, 4);
  const int nv = stm.dim + 1;
  const int d = stm.dim - 1;
  double s = 0.0;
  for (int k = 0; k < stm.n_elements(); ++k) {
    double vol = element_volume(stm, k);
    const Element& el = stm.elements[k];
    for (const auto& qp : rule.points) {
      Point x = element_point(stm, k, qp.bary.data());
      auto wx = w(x);
      for (int c = 0; c < d; ++c) {
        double val = 0.0;
        for (int i = 0; i < nv; ++i) val += qp.bary[i] * comps[c][el.v[i]];
        double diff = wx[c] - val;
        s += qp.weight * vol * diff * diff;
      }
    }
  }
  return std::sqrt(s);
}

std::vector<InterpStudyRow> interp_rate_study(const ScalarField& u, const VectorField& grad_u,
                                              const ScalarField& dt_u, int d, int levels) {
  std::vector<InterpStudyRow> rows;
  const int n0 = d == 1 ? 4 : 2;
  for (int level = 0; level < levels; ++level) {
    int n = n0 << level;
    TimePartition tp = TimePartition::uniform(1.0, n);
    SpatialMesh sm = d == 1 ? make_interval_mesh(n) : make_rect_mesh(n, n, 0, 0, 1, 1);
    SpaceTimeMesh stm = build_tensor_product_mesh(tp, sm);

    InterpStudyRow row;
    row.level = level;
    row.h = 1.0 / n;
    TensorFunction tfree = tensor_interpolant(u, tp, sm, false);
    TensorFunction tzero = tensor_interpolant(u, tp, sm, true);
    TensorErrors ef = tensor_errors(u, grad_u, dt_u, tfree);
    TensorErrors ez = tensor_errors(u, grad_u, dt_u, tzero);
    row.tensor_l2 = ef.l2;
    row.tensor_h1 = ef.h1;
    row.tensor0_h1 = ez.h1;
    row.tensor0_dt = ez.dt;

    SimplicialErrors sf = simplicial_errors(u, grad_u, dt_u, stm, simplicial_transfer(tfree, stm));
    SimplicialErrors sz = simplicial_errors(u, grad_u, dt_u, stm, simplicial_transfer(tzero, stm));
    row.simp_h1 = sf.h1;
    row.simp0_h1 = sz.h1;
    row.simp0_dt = sz.dt;

    std::vector<std::vector<double>> comps;
    for (int c = 0; c < d; ++c) {
      auto comp = [&grad_u, c](const Point& q) { return grad_u(q)[c]; };
      comps.push_back(simplicial_transfer(tensor_interpolant(comp, tp, sm, false), stm));
    }
    row.flux = simplicial_vector_error(grad_u, stm, comps);
    rows.push_back(row);
  }
  return rows;
}

DiscretePair interpolant_pair(const SpaceTimeMesh& stm, const TimePartition& tp,
                              const SpatialMesh& sm, const ScalarField& u,
                              const VectorField& grad_u) {
  std::vector<double> uval = simplicial_transfer(tensor_interpolant(u, tp, sm, true), stm);
  std::vector<std::vector<double>> comps;
  const int d = stm.dim - 1;
  for (int c = 0; c < d; ++c) {
    auto comp = [&grad_u, c](const Point& q) { return grad_u(q)[c]; };
    comps.push_back(simplicial_transfer(tensor_interpolant(comp, tp, sm, false), stm));
  }
  DiscretePair out;
  out.mesh = &stm;
  out.dofmap = build_dof_map(stm);
  out.coeffs.assign(out.dofmap.n_total, 0.0);
  for (int v = 0; v < stm.n_vertices(); ++v) {
    int ud = out.dofmap.u_dof[v];
    if (ud >= 0) out.coeffs[ud] = uval[v];
    for (int c = 0; c < d; ++c) out.coeffs[out.dofmap.sigma_dof(v, c)] = comps[c][v];
  }
  return out;
}

}  // namespace stls
