#pragma once

#include <vector>

#include "mesh.hpp"

namespace stls {

// Unknowns of the first-order system (u, sigma): u is continuous and
// piecewise affine with zero trace on the lateral boundary, each component of
// sigma is continuous and piecewise affine without constraints.  Numbering:
// all u unknowns first (vertex order), then sigma grouped by vertex.
struct DofMap {
  int dim = 2;          // d+1
  int n_u = 0;          // free u unknowns
  int n_total = 0;      // n_u + d * n_vertices
  std::vector<int> u_dof;  // per vertex, -1 on the lateral boundary

  int sigma_dof(int vertex, int comp) const { return n_u + vertex * (dim - 1) + comp; }
};

DofMap build_dof_map(const SpaceTimeMesh& m);

// Coefficient vector paired with its mesh and numbering.
struct DiscretePair {
  const SpaceTimeMesh* mesh = nullptr;
  DofMap dofmap;
  std::vector<double> coeffs;
};

// Nodal values of one element: u and sigma at the element vertices, with the
// lateral constraint already applied.
struct ElementValues {
  std::array<double, 4> u{};
  std::array<std::array<double, 2>, 4> sigma{};
};

ElementValues element_values(const DiscretePair& w, int k);

struct FieldSample {
  double u = 0.0;
  double du_dt = 0.0;
  std::array<double, 2> grad_u{};   // spatial gradient
  std::array<double, 2> sigma{};
  double div_sigma = 0.0;           // spatial divergence, constant per element
};

// Evaluates (u_h, sigma_h) and their derivatives at a barycentric point of
// element k.
FieldSample sample_field(const DiscretePair& w, int k, const double* bary);

// Trace of u_h at a barycentric point of an initial or terminal facet.
double facet_trace_u(const DiscretePair& w, const Facet& f, const double* facet_bary);

// Transfers coefficients to a mesh obtained from w.mesh by bisection: new
// vertices average their parent edge endpoints, so the function is unchanged.
DiscretePair prolong(const DiscretePair& w, const SpaceTimeMesh& fine);

}  // namespace stls
