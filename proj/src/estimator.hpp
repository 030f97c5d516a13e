#pragma once

#include <vector>

#include "fe_space.hpp"
#include "problems.hpp"

namespace stls {

struct IndicatorField {
  std::vector<double> eta2;  // per element, >= 0
  double total = 0.0;        // sum in element order
};

struct EstimatorOptions {
  int data_order = 4;
  int threads = 1;
};

// Local least-squares indicators
//   eta(K)^2 = |sigma_h - grad u_h|_K^2 + |dt u_h - div sigma_h - f|_K^2
//            + |u_h(0) - u0|^2 on the initial facet of K (if any).
// The first term is integrated exactly, the data terms with the data rule.
IndicatorField local_indicators(const DiscretePair& w, const ProblemSpec& p,
                                const EstimatorOptions& opt = {});

// |f|^2 over the cylinder plus |u0|^2 over the initial plane, with the same
// quadrature as the indicators; ties the estimator to the assembled
// functional through eta^2 = |f|^2 + |u0|^2 - l(u_h, sigma_h).
double data_norm_squared(const SpaceTimeMesh& m, const ProblemSpec& p, int data_order = 4);

struct ErrorReport {
  double err_l2 = 0.0;    // |u - u_h| over the cylinder
  double err_u0 = 0.0;    // |u(0) - u_h(0)| over the initial plane
  double err_uT = 0.0;    // |u(T) - u_h(T)| over the terminal plane
  double err_flux = 0.0;  // |grad u - sigma_h| over the cylinder
  double err_dt = 0.0;    // |dt u - dt u_h| over the cylinder
  bool has_l2 = false, has_u0 = false, has_uT = false, has_flux = false, has_dt = false;

  // root of the sum of squares of the available components
  double total() const;
};

// Errors against the exact solution; components without callbacks are marked
// unavailable (err_u0 only needs the initial data).
ErrorReport error_norms(const DiscretePair& w, const ProblemSpec& p,
                        const EstimatorOptions& opt = {});

}  // namespace stls
