#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stls {

namespace {

QuadratureRule gauss_interval(int npts) {
  QuadratureRule r;
  r.dim = 1;
  r.order = 2 * npts - 1;
  // Gauss-Legendre on [0,1], node s listed as bary (1-s, s)
  if (npts == 1) {
    r.points = {{{0.5, 0.5, 0, 0}, 1.0}};
  } else if (npts == 2) {
    double a = 0.5 - 0.5 / std::sqrt(3.0);
    r.points = {{{1 - a, a, 0, 0}, 0.5}, {{a, 1 - a, 0, 0}, 0.5}};
  } else {
    double a = 0.5 - 0.5 * std::sqrt(0.6);
    r.points = {{{1 - a, a, 0, 0}, 5.0 / 18.0},
                {{0.5, 0.5, 0, 0}, 8.0 / 18.0},
                {{a, 1 - a, 0, 0}, 5.0 / 18.0}};
  }
  return r;
}

void orbit3(QuadratureRule& r, double a, double b, double c, double w) {
  // distinct permutations of (a, b, c)
  std::array<std::array<double, 3>, 6> perms = {
      {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
  std::vector<std::array<double, 3>> uniq;
  for (auto& p : perms) {
    bool seen = false;
    for (auto& q : uniq) seen = seen || q == p;
    if (!seen) uniq.push_back(p);
  }
  for (auto& p : uniq) r.points.push_back({{p[0], p[1], p[2], 0}, w});
}

QuadratureRule triangle_rule(int order) {
  QuadratureRule r;
  r.dim = 2;
  if (order <= 1) {
    r.order = 1;
    r.points = {{{1.0 / 3, 1.0 / 3, 1.0 / 3, 0}, 1.0}};
  } else if (order == 2) {
    r.order = 2;
    orbit3(r, 2.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3);
  } else if (order <= 4) {
    r.order = 4;
    orbit3(r, 0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322);
    orbit3(r, 0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011);
  } else {
    r.order = 5;
    r.points.push_back({{1.0 / 3, 1.0 / 3, 1.0 / 3, 0}, 0.225});
    orbit3(r, 0.797426985353087, 0.101286507323456, 0.101286507323456, 0.125939180544827);
    orbit3(r, 0.059715871789770, 0.470142064105115, 0.470142064105115, 0.132394152788506);
  }
  return r;
}

void orbit4(QuadratureRule& r, std::array<double, 4> p, double w) {
  std::sort(p.begin(), p.end());
  std::vector<std::array<double, 4>> uniq;
  do {
    uniq.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (auto& q : uniq) r.points.push_back({q, w});
}

QuadratureRule tet_rule(int order) {
  QuadratureRule r;
  r.dim = 3;
  if (order <= 1) {
    r.order = 1;
    r.points = {{{0.25, 0.25, 0.25, 0.25}, 1.0}};
  } else if (order == 2) {
    r.order = 2;
    double a = 0.585410196624969, b = 0.138196601125011;
    orbit4(r, {a, b, b, b}, 0.25);
  } else {
    // 14-point rule, exact to degree 5
    r.order = 5;
    orbit4(r, {0.3108859192633005, 0.3108859192633005, 0.3108859192633005, 0.0673422422100983},
           0.1126879257180162);
    orbit4(r, {0.0927352503108912, 0.0927352503108912, 0.0927352503108912, 0.7217942490673264},
           0.0734930431163619);
    orbit4(r, {0.4544962958743503, 0.4544962958743503, 0.0455037041256496, 0.0455037041256496},
           0.0425460207770812);
  }
  return r;
}

}  // namespace

const QuadratureRule& simplex_rule(int dim, int order) {
  if (dim < 1 || dim > 3 || order < 1 || order > 5) throw std::invalid_argument("no such rule");
  static std::array<std::array<QuadratureRule, 5>, 3> cache = [] {
    std::array<std::array<QuadratureRule, 5>, 3> c;
    for (int o = 1; o <= 5; ++o) {
      c[0][o - 1] = gauss_interval(o <= 1 ? 1 : o <= 3 ? 2 : 3);
      c[1][o - 1] = triangle_rule(o);
      c[2][o - 1] = tet_rule(o);
    }
    return c;
  }();
  return cache[dim - 1][order - 1];
}

double integrate_on_element(const SpaceTimeMesh& m, int k, const QuadratureRule& rule,
                            const std::function<double(const Point&)>& f) {
  double vol = element_volume(m, k);
  double s = 0.0;
  for (const auto& qp : rule.points) s += qp.weight * f(element_point(m, k, qp.bary.data()));
  return vol * s;
}

double integrate_on_facet(const SpaceTimeMesh& m, const Facet& f, const QuadratureRule& rule,
                          const std::function<double(const Point&)>& fn) {
  double meas = facet_measure(m, f);
  double s = 0.0;
  for (const auto& qp : rule.points) {
    Point p{0, 0, 0};
    for (int i = 0; i < m.dim; ++i)
      for (int c = 0; c < m.dim; ++c) p[c] += qp.bary[i] * m.vertices[f.v[i]][c];
    s += qp.weight * fn(p);
  }
  return meas * s;
}

}  // namespace stls
