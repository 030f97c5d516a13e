#pragma once

#include <functional>
#include <vector>

#include "fe_space.hpp"
#include "mesh.hpp"
#include "problems.hpp"

namespace stls {

// Spatial function; the time entry of the point is ignored by callers that
// evaluate snapshots.
using SpatialFn = std::function<double(const Point&)>;

// L2-orthogonal projection onto spatial P1 (constrained: onto the subspace
// with zero boundary values).  Returns one coefficient per vertex; boundary
// coefficients are zero in the constrained variant.
std::vector<double> l2_projection(const SpatialMesh& sm, const SpatialFn& g, bool constrained,
                                  int data_order = 4);

// Piecewise-linear-in-time interpolant through arbitrary time snapshots.
struct TimeInterpolant {
  TimePartition tp;
  std::vector<SpatialFn> snapshots;  // one per time node

  double operator()(const Point& q) const;
};

TimeInterpolant time_interpolate(const ScalarField& u, const TimePartition& tp);

// Semidiscrete function: affine in time between nodes, spatial P1 at each
// node.  Realizes the composition of time interpolation with the spatial
// projection.
struct TensorFunction {
  TimePartition tp;
  SpatialMesh sm;
  bool constrained = false;
  std::vector<std::vector<double>> nodes;  // nodes[k][vertex]
};

TensorFunction tensor_interpolant(const ScalarField& u, const TimePartition& tp,
                                  const SpatialMesh& sm, bool constrained, int data_order = 4);

// Nodal copy onto the tensor-product space-time mesh built from (tp, sm);
// vertex (k, i) receives nodes[k][i].  Throws if the vertex sets mismatch.
std::vector<double> simplicial_transfer(const TensorFunction& tf, const SpaceTimeMesh& stm);

// Norms of (u - tf) over the cylinder by slab/element tensor quadrature.
struct TensorErrors {
  double l2 = 0.0;    // |u - tf|
  double h1 = 0.0;    // (|u - tf|^2 + |grad(u - tf)|^2)^(1/2)
  double dt = 0.0;    // |(u - tf)'|
};
TensorErrors tensor_errors(const ScalarField& u, const VectorField& grad_u,
                           const ScalarField& dt_u, const TensorFunction& tf);

// Norms of (u - nodal field) over the simplicial mesh, order-4 quadrature.
struct SimplicialErrors {
  double l2 = 0.0;
  double h1 = 0.0;
  double dt = 0.0;
};
SimplicialErrors simplicial_errors(const ScalarField& u, const VectorField& grad_u,
                                   const ScalarField& dt_u, const SpaceTimeMesh& stm,
                                   const std::vector<double>& vals);

// |w - field|_{L2} for a vector of nodal fields interpolating the components
// of w on stm.
double simplicial_vector_error(const VectorField& w, const SpaceTimeMesh& stm,
                               const std::vector<std::vector<double>>& comps);

struct InterpStudyRow {
  int level = 0;
  double h = 0.0;
  double tensor_l2;    // |u - J u| tensor variant
  double tensor_h1;
  double tensor0_h1;   // constrained
  double tensor0_dt;
  double simp_h1;      // |u - J u| on the simplicial mesh
  double simp0_h1;
  double simp0_dt;
  double flux;         // |grad u - J grad u|
};

// Four-level refinement study for a smooth function; h halves per level.
std::vector<InterpStudyRow> interp_rate_study(const ScalarField& u, const VectorField& grad_u,
                                              const ScalarField& dt_u, int d, int levels = 4);

// Discrete pair with u = constrained interpolant of u and sigma = interpolant
// of grad_u, on the tensor mesh built from (tp, sm); the comparison function
// for the quasi-optimality of the least-squares solution.
DiscretePair interpolant_pair(const SpaceTimeMesh& stm, const TimePartition& tp,
                              const SpatialMesh& sm, const ScalarField& u,
                              const VectorField& grad_u);

}  // namespace stls
