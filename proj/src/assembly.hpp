#pragma once

#include <iosfwd>
#include <vector>

#include "fe_space.hpp"
#include "mesh.hpp"
#include "problems.hpp"

namespace stls {

struct SparseSystem {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;
  std::vector<double> rhs;

  void multiply(const double* x, double* y) const;
  // scatter-add; the entry must exist in the pattern
  void add(int i, int j, double v);
  double get(int i, int j) const;
};

// Dense local contribution over an explicit list of global unknowns.
struct LocalMatrix {
  std::vector<int> dofs;
  std::vector<double> a;  // row-major, dofs.size()^2, symmetric
};

struct LocalVector {
  std::vector<int> dofs;
  std::vector<double> b;
};

// Exact integral of (grad u - sigma, grad v - psi) + (dt u - div sigma, dt v - div psi)
// over element k for the P1 basis pair; closed-form barycentric integrals.
LocalMatrix element_matrix(const SpaceTimeMesh& m, int k, const DofMap& dm);

// Mass matrix of the u traces on an initial facet.
LocalMatrix initial_facet_matrix(const SpaceTimeMesh& m, const Facet& f, const DofMap& dm);

// (f, dt v - div psi) over element k; the test-function factor is constant per
// element, data integrated with the given quadrature order.
LocalVector element_load(const SpaceTimeMesh& m, int k, const DofMap& dm, const ScalarField& f,
                         int data_order);

// (u0, v(0)) over an initial facet.
LocalVector initial_facet_load(const SpaceTimeMesh& m, const Facet& f, const DofMap& dm,
                               const ScalarField& u0, int data_order);

struct AssemblyOptions {
  int data_order = 4;
  int threads = 1;
};

SparseSystem assemble(const SpaceTimeMesh& m, const DofMap& dm, const ProblemSpec& p,
                      const AssemblyOptions& opt = {});

// Coordinate-format export (1-based indices).
void write_matrix_market(std::ostream& os, const SparseSystem& s);

}  // namespace stls
