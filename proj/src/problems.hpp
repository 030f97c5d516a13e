#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mesh.hpp"

namespace stls {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<std::array<double, 2>(const Point&)>;

// One experiment: domain/initial mesh, data f and u0, and the exact solution
// when available.  Points carry the time coordinate first; u0 is evaluated at
// points with t = 0.
struct ProblemSpec {
  std::string id;
  int d = 1;
  double t_end = 1.0;
  ScalarField f;
  ScalarField u0;
  bool has_exact = false;
  ScalarField exact_u;
  VectorField exact_grad;  // spatial gradient
  ScalarField exact_dt;
  std::function<SpaceTimeMesh()> initial_mesh;
};

// Catalog of the seven benchmark configurations
// (ex1_1d ex2_1d ex3_1d ex4_1d ex1_2d ex2_2d ex3_2d).
ProblemSpec catalog(const std::string& id);
std::vector<std::string> catalog_ids();

// f = 0, u0 = 0; exact solution zero.  Used by regression tests.
ProblemSpec make_zero_problem(int d);

// Experimental orders of convergence: slope_i = -log(q_{i+1}/q_i)/log(N_{i+1}/N_i).
std::vector<double> eoc(const std::vector<double>& n, const std::vector<double>& q);

// Least-squares log-log slope over the records with n >= sqrt(n_front * n_back);
// the asymptotic tail of a convergence history.
double fit_rate(const std::vector<double>& n, const std::vector<double>& q);

}  // namespace stls
