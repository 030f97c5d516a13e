#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mesh.hpp"

namespace stls {

// Quadrature node in barycentric coordinates; weights sum to one, so a rule
// integrates f over a simplex S as |S| * sum_q w_q f(x_q).
struct QuadraturePoint {
  std::array<double, 4> bary;
  double weight;
};

struct QuadratureRule {
  int dim;    // simplex dimension, 1..3
  int order;  // exact for polynomials up to this total degree
  std::vector<QuadraturePoint> points;
};

// Cached rule of at least the requested order (dim in 1..3, order in 1..5).
// All rules have positive weights.
const QuadratureRule& simplex_rule(int dim, int order);

// Integral of f over element k.
double integrate_on_element(const SpaceTimeMesh& m, int k, const QuadratureRule& rule,
                            const std::function<double(const Point&)>& f);

// Integral of f over a facet (one dimension down).
double integrate_on_facet(const SpaceTimeMesh& m, const Facet& f, const QuadratureRule& rule,
                          const std::function<double(const Point&)>& fn);

}  // namespace stls
