#include "problems.hpp"

#include <cmath>
#include <stdexcept>

namespace stls {

namespace {

const double pi = std::acos(-1.0);

SpaceTimeMesh tensor_start(const SpatialMesh& sm, int pre_refinements) {
  SpaceTimeMesh m = build_tensor_product_mesh(TimePartition::uniform(1.0, 1), sm);
  for (int r = 0; r < pre_refinements; ++r) {
    std::vector<int> all(m.n_elements());
    for (int k = 0; k < m.n_elements(); ++k) all[k] = k;
    m = bisect(m, all);
  }
  return m;
}

SpatialMesh corner_domain_mesh() {
  // (-1,1)^2 with the closed triangle conv{(0,0),(0,-1),(1,-1)} removed;
  // seven triangles on the 3x3 grid
  SpatialMesh sm;
  sm.d = 2;
  for (int iy = 0; iy < 3; ++iy)
    for (int ix = 0; ix < 3; ++ix) sm.vertices.push_back({ix - 1.0, iy - 1.0, 0.0});
  sm.elements = {{0, 1, 3}, {1, 3, 4}, {2, 4, 5}, {3, 4, 6}, {4, 6, 7}, {4, 5, 8}, {4, 7, 8}};
  sm.normalize();
  return sm;
}

ProblemSpec smooth_1d() {
  ProblemSpec p;
  p.id = "ex1_1d";
  p.d = 1;
  p.has_exact = true;
  p.exact_u = [](const Point& q) { return std::cos(pi * q[0]) * std::sin(pi * q[1]); };
  p.exact_grad = [](const Point& q) {
    return std::array<double, 2>{pi * std::cos(pi * q[0]) * std::cos(pi * q[1]), 0.0};
  };
  p.exact_dt = [](const Point& q) { return -pi * std::sin(pi * q[0]) * std::sin(pi * q[1]); };
  p.f = [](const Point& q) {
    return (-pi * std::sin(pi * q[0]) + pi * pi * std::cos(pi * q[0])) * std::sin(pi * q[1]);
  };
  p.u0 = [](const Point& q) { return std::sin(pi * q[1]); };
  p.initial_mesh = [] { return make_square_cross_mesh(); };
  return p;
}

ProblemSpec hat_1d() {
  ProblemSpec p;
  p.id = "ex2_1d";
  p.d = 1;
  p.f = [](const Point&) { return 1.0; };
  p.u0 = [](const Point& q) { return 1.0 - 2.0 * std::abs(q[1] - 0.5); };
  p.initial_mesh = [] { return make_square_cross_mesh(); };
  return p;
}

ProblemSpec strip_1d() {
  ProblemSpec p;
  p.id = "ex3_1d";
  p.d = 1;
  // source of strength one on a strip moving right with speed one, active for
  // 1/10 < t < 1/2
  p.f = [](const Point& q) {
    double t = q[0], x = q[1];
    bool on = t > 0.1 && t < 0.5 && x > 0.0 && x < 1.0 && x - 0.1 <= t && t <= x - 0.05;
    return on ? 1.0 : 0.0;
  };
  p.u0 = [](const Point&) { return 0.0; };
  p.initial_mesh = [] { return make_square_cross_mesh(); };
  return p;
}

ProblemSpec rough_1d() {
  ProblemSpec p;
  p.id = "ex4_1d";
  p.d = 1;
  p.f = [](const Point&) { return 2.0; };
  p.u0 = [](const Point&) { return 1.0; };
  p.initial_mesh = [] { return make_square_cross_mesh(); };
  return p;
}

ProblemSpec smooth_2d() {
  ProblemSpec p;
  p.id = "ex1_2d";
  p.d = 2;
  p.has_exact = true;
  auto s = [](double a) { return std::sin(pi * a); };
  auto c = [](double a) { return std::cos(pi * a); };
  p.exact_u = [=](const Point& q) { return c(q[0]) * s(q[1]) * s(q[2]); };
  p.exact_grad = [=](const Point& q) {
    return std::array<double, 2>{pi * c(q[0]) * c(q[1]) * s(q[2]),
                                 pi * c(q[0]) * s(q[1]) * c(q[2])};
  };
  p.exact_dt = [=](const Point& q) { return -pi * s(q[0]) * s(q[1]) * s(q[2]); };
  p.f = [=](const Point& q) {
    return (-pi * s(q[0]) + 2.0 * pi * pi * c(q[0])) * s(q[1]) * s(q[2]);
  };
  p.u0 = [=](const Point& q) { return s(q[1]) * s(q[2]); };
  p.initial_mesh = [] { return tensor_start(make_rect_mesh(1, 1, 0, 0, 1, 1), 2); };
  return p;
}

ProblemSpec corner_2d() {
  ProblemSpec p;
  p.id = "ex2_2d";
  p.d = 2;
  p.f = [](const Point& q) {
    return q[1] * q[1] + q[2] * q[2] < 0.25 ? q[0] : 0.0;
  };
  p.u0 = [](const Point&) { return 0.0; };
  p.initial_mesh = [] { return tensor_start(corner_domain_mesh(), 2); };
  return p;
}

ProblemSpec rough_2d() {
  ProblemSpec p;
  p.id = "ex3_2d";
  p.d = 2;
  p.f = [](const Point&) { return 0.0; };
  p.u0 = [](const Point&) { return 1.0; };
  p.initial_mesh = [] { return tensor_start(make_rect_mesh(1, 1, 0, 0, 1, 1), 2); };
  return p;
}

}  // namespace

ProblemSpec catalog(const std::string& id) {
  if (id == "ex1_1d") return smooth_1d();
  if (id == "ex2_1d") return hat_1d();
  if (id == "ex3_1d") return strip_1d();
  if (id == "ex4_1d") return rough_1d();
  if (id == "ex1_2d") return smooth_2d();
  if (id == "ex2_2d") return corner_2d();
  if (id == "ex3_2d") return rough_2d();
  throw std::invalid_argument("unknown problem id: " + id);
}

std::vector<std::string> catalog_ids() {
  return {"ex1_1d", "ex2_1d", "ex3_1d", "ex4_1d", "ex1_2d", "ex2_2d", "ex3_2d"};
}

ProblemSpec make_zero_problem(int d) {
  ProblemSpec p;
  p.id = d == 1 ? "zero_1d" : "zero_2d";
  p.d = d;
  p.has_exact = true;
  p.f = [](const Point&) { return 0.0; };
  p.u0 = [](const Point&) { return 0.0; };
  p.exact_u = [](const Point&) { return 0.0; };
  p.exact_grad = [](const Point&) { return std::array<double, 2>{0.0, 0.0}; };
  p.exact_dt = [](const Point&) { return 0.0; };
  if (d == 1)
    p.initial_mesh = [] { return make_square_cross_mesh(); };
  else
    p.initial_mesh = [] { return tensor_start(make_rect_mesh(1, 1, 0, 0, 1, 1), 1); };
  return p;
}

std::vector<double> eoc(const std::vector<double>& n, const std::vector<double>& q) {
  if (n.size() != q.size() || n.size() < 2) throw std::invalid_argument("need matching histories");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < n.size(); ++i) {
    if (!(q[i] > 0.0) || !(q[i + 1] > 0.0) || !(n[i + 1] > n[i]))
      throw std::invalid_argument("eoc needs positive quantities and increasing n");
    out.push_back(-std::log(q[i + 1] / q[i]) / std::log(n[i + 1] / n[i]));
  }
  return out;
}

double fit_rate(const std::vector<double>& n, const std::vector<double>& q) {
  if (n.size() != q.size() || n.size() < 2) throw std::invalid_argument("need matching histories");
  double cut = std::sqrt(n.front() * n.back());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < cut) continue;
    if (!(q[i] > 0.0)) throw std::invalid_argument("fit_rate needs positive quantities");
    double x = std::log(n[i]), y = std::log(q[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw std::invalid_argument("fit_rate needs two records past the cut");
  double denom = m * sxx - sx * sx;
  return -(m * sxy - sx * sy) / denom;
}

}  // namespace stls
