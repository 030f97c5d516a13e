#include "fe_space.hpp"

#include <stdexcept>

namespace stls {

DofMap build_dof_map(const SpaceTimeMesh& m) {
  DofMap dm;
  dm.dim = m.dim;
  dm.u_dof.assign(m.n_vertices(), -1);
  int next = 0;
  for (int v = 0; v < m.n_vertices(); ++v)
    if (!m.vertex_lateral[v]) dm.u_dof[v] = next++;
  dm.n_u = next;
  dm.n_total = next + (m.dim - 1) * m.n_vertices();
  return dm;
}

ElementValues element_values(const DiscretePair& w, int k) {
  const SpaceTimeMesh& m = *w.mesh;
  const Element& el = m.elements[k];
  ElementValues ev;
  for (int i = 0; i <= m.dim; ++i) {
    int v = el.v[i];
    int ud = w.dofmap.u_dof[v];
    ev.u[i] = ud >= 0 ? w.coeffs[ud] : 0.0;
    for (int c = 0; c < m.dim - 1; ++c) ev.sigma[i][c] = w.coeffs[w.dofmap.sigma_dof(v, c)];
  }
  return ev;
}

FieldSample sample_field(const DiscretePair& w, int k, const double* bary) {
  const SpaceTimeMesh& m = *w.mesh;
  ElementValues ev = element_values(w, k);
  ElementGeometry g = element_geometry(m, k);
  FieldSample s;
  const int d = m.dim - 1;
  for (int i = 0; i <= m.dim; ++i) {
    s.u += bary[i] * ev.u[i];
    s.du_dt += ev.u[i] * g.grad[i][0];
    for (int c = 0; c < d; ++c) {
      s.grad_u[c] += ev.u[i] * g.grad[i][c + 1];
      s.sigma[c] += bary[i] * ev.sigma[i][c];
      s.div_sigma += ev.sigma[i][c] * g.grad[i][c + 1];
    }
  }
  return s;
}

double facet_trace_u(const DiscretePair& w, const Facet& f, const double* facet_bary) {
  const SpaceTimeMesh& m = *w.mesh;
  double u = 0.0;
  for (int i = 0; i < m.dim; ++i) {
    int ud = w.dofmap.u_dof[f.v[i]];
    u += facet_bary[i] * (ud >= 0 ? w.coeffs[ud] : 0.0);
  }
  return u;
}

DiscretePair prolong(const DiscretePair& w, const SpaceTimeMesh& fine) {
  const SpaceTimeMesh& coarse = *w.mesh;
  if (fine.n_vertices() < coarse.n_vertices())
    throw std::invalid_argument("prolongation target is not a refinement");
  const int d = fine.dim - 1;
  // nodal values on the fine mesh, computed in vertex creation order
  std::vector<double> u(fine.n_vertices());
  std::vector<std::array<double, 2>> sg(fine.n_vertices());
  for (int v = 0; v < fine.n_vertices(); ++v) {
    if (v < coarse.n_vertices()) {
      int ud = w.dofmap.u_dof[v];
      u[v] = ud >= 0 ? w.coeffs[ud] : 0.0;
      for (int c = 0; c < d; ++c) sg[v][c] = w.coeffs[w.dofmap.sigma_dof(v, c)];
    } else {
      auto [a, b] = fine.vertex_parents[v];
      u[v] = 0.5 * (u[a] + u[b]);
      for (int c = 0; c < d; ++c) sg[v][c] = 0.5 * (sg[a][c] + sg[b][c]);
    }
  }
  DiscretePair out;
  out.mesh = &fine;
  out.dofmap = build_dof_map(fine);
  out.coeffs.assign(out.dofmap.n_total, 0.0);
  for (int v = 0; v < fine.n_vertices(); ++v) {
    int ud = out.dofmap.u_dof[v];
    if (ud >= 0) out.coeffs[ud] = u[v];
    for (int c = 0; c < d; ++c) out.coeffs[out.dofmap.sigma_dof(v, c)] = sg[v][c];
  }
  return out;
}

}  // namespace stls
