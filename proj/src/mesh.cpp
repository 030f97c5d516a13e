#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace stls {

namespace {

constexpr int kIdBits = 21;  // vertex ids packed three to a 64-bit facet key
constexpr int kIdMax = (1 << kIdBits) - 1;

std::uint64_t facet_key(std::array<int, 3> f) {
  std::sort(f.begin(), f.end());
  // missing third id (d = 1) maps to the sentinel kIdMax
  std::uint64_t a = f[0] < 0 ? kIdMax : static_cast<std::uint64_t>(f[0]);
  std::uint64_t b = f[1] < 0 ? kIdMax : static_cast<std::uint64_t>(f[1]);
  std::uint64_t c = f[2] < 0 ? kIdMax : static_cast<std::uint64_t>(f[2]);
  return (a << (2 * kIdBits)) | (b << kIdBits) | c;
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

double det2(const double* c0, const double* c1) { return c0[0] * c1[1] - c0[1] * c1[0]; }

double det3(const double* c0, const double* c1, const double* c2) {
  return c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1]) +
         c2[0] * (c0[1] * c1[2] - c0[2] * c1[1]);
}

// facets of element k: the dim subsets omitting one local vertex each
std::array<int, 3> facet_of(const Element& el, int dim, int omit) {
  std::array<int, 3> f{-1, -1, -1};
  int n = 0;
  for (int i = 0; i <= dim; ++i)
    if (i != omit) f[n++] = el.v[i];
  std::sort(f.begin(), f.begin() + dim);
  return f;
}

}  // namespace

void SpatialMesh::normalize() {
  for (auto& el : elements) std::sort(el.begin(), el.begin() + d + 1);
}

TimePartition TimePartition::uniform(double t_end, int n_slabs) {
  if (n_slabs < 1 || !(t_end > 0)) throw std::invalid_argument("bad time partition");
  TimePartition tp;
  tp.nodes.resize(n_slabs + 1);
  for (int k = 0; k <= n_slabs; ++k) tp.nodes[k] = t_end * k / n_slabs;
  return tp;
}

double element_volume(const SpaceTimeMesh& m, int k) {
  const Element& el = m.elements[k];
  const Point& p0 = m.vertices[el.v[0]];
  double e[3][3] = {};
  for (int i = 1; i <= m.dim; ++i)
    for (int c = 0; c < m.dim; ++c) e[i - 1][c] = m.vertices[el.v[i]][c] - p0[c];
  double det = m.dim == 2 ? det2(e[0], e[1]) : det3(e[0], e[1], e[2]);
  double fact = m.dim == 2 ? 2.0 : 6.0;
  return std::abs(det) / fact;
}

ElementGeometry element_geometry(const SpaceTimeMesh& m, int k) {
  const Element& el = m.elements[k];
  const int n = m.dim;
  const Point& p0 = m.vertices[el.v[0]];
  ElementGeometry g{};
  if (n == 2) {
    double a00 = m.vertices[el.v[1]][0] - p0[0], a10 = m.vertices[el.v[1]][1] - p0[1];
    double a01 = m.vertices[el.v[2]][0] - p0[0], a11 = m.vertices[el.v[2]][1] - p0[1];
    double det = a00 * a11 - a01 * a10;
    if (det == 0.0) throw std::runtime_error("degenerate element");
    g.volume = std::abs(det) / 2.0;
    // rows of the inverse of [p1-p0 | p2-p0] are the gradients of lambda_1,2
    g.grad[1] = {a11 / det, -a01 / det, 0.0};
    g.grad[2] = {-a10 / det, a00 / det, 0.0};
  } else {
    double a[3][3];
    for (int j = 1; j <= 3; ++j)
      for (int c = 0; c < 3; ++c) a[c][j - 1] = m.vertices[el.v[j]][c] - p0[c];
    double c0[3] = {a[0][0], a[1][0], a[2][0]};
    double c1[3] = {a[0][1], a[1][1], a[2][1]};
    double c2[3] = {a[0][2], a[1][2], a[2][2]};
    double d = det3(c0, c1, c2);
    if (d == 0.0) throw std::runtime_error("degenerate element");
    g.volume = std::abs(d) / 6.0;
    // inverse via cofactors; row j of A^{-1} = gradient of lambda_j
    double inv[3][3];
    inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
    inv[0][1] = -(a[0][1] * a[2][2] - a[0][2] * a[2][1]) / d;
    inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
    inv[1][0] = -(a[1][0] * a[2][2] - a[1][2] * a[2][0]) / d;
    inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
    inv[1][2] = -(a[0][0] * a[1][2] - a[0][2] * a[1][0]) / d;
    inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
    inv[2][1] = -(a[0][0] * a[2][1] - a[0][1] * a[2][0]) / d;
    inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
    for (int j = 1; j <= 3; ++j)
      for (int c = 0; c < 3; ++c) g.grad[j][c] = inv[j - 1][c];
  }
  for (int c = 0; c < n; ++c) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += g.grad[j][c];
    g.grad[0][c] = -s;
  }
  return g;
}

Point element_point(const SpaceTimeMesh& m, int k, const double* bary) {
  const Element& el = m.elements[k];
  Point p{0.0, 0.0, 0.0};
  for (int i = 0; i <= m.dim; ++i)
    for (int c = 0; c < m.dim; ++c) p[c] += bary[i] * m.vertices[el.v[i]][c];
  return p;
}

double element_quality(const SpaceTimeMesh& m, int k) {
  const int n = m.dim;
  double vol = element_volume(m, k);
  double surf = 0.0;
  const Element& el = m.elements[k];
  for (int omit = 0; omit <= n; ++omit) {
    Facet f;
    f.v = facet_of(el, n, omit);
    surf += facet_measure(m, f);
  }
  double inradius = n * vol / surf;
  double diam = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) {
        double d = m.vertices[el.v[i]][c] - m.vertices[el.v[j]][c];
        s += d * d;
      }
      diam = std::max(diam, s);
    }
  diam = std::sqrt(diam);
  return inradius / diam;
}

double facet_measure(const SpaceTimeMesh& m, const Facet& f) {
  if (m.dim == 2) {
    double s = 0.0;
    for (int c = 0; c < 2; ++c) {
      double d = m.vertices[f.v[1]][c] - m.vertices[f.v[0]][c];
      s += d * d;
    }
    return std::sqrt(s);
  }
  const Point& a = m.vertices[f.v[0]];
  const Point& b = m.vertices[f.v[1]];
  const Point& c = m.vertices[f.v[2]];
  double u[3], w[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = b[i] - a[i];
    w[i] = c[i] - a[i];
  }
  double cx = u[1] * w[2] - u[2] * w[1];
  double cy = u[2] * w[0] - u[0] * w[2];
  double cz = u[0] * w[1] - u[1] * w[0];
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

SpatialGeometry spatial_element_geometry(const SpatialMesh& sm, int e) {
  SpatialGeometry g{};
  const auto& el = sm.elements[e];
  if (sm.d == 1) {
    double h = sm.vertices[el[1]][0] - sm.vertices[el[0]][0];
    if (h == 0.0) throw std::runtime_error("degenerate spatial element");
    g.measure = std::abs(h);
    g.grad[0][0] = -1.0 / h;
    g.grad[1][0] = 1.0 / h;
  } else {
    const Point& p0 = sm.vertices[el[0]];
    double a00 = sm.vertices[el[1]][0] - p0[0], a10 = sm.vertices[el[1]][1] - p0[1];
    double a01 = sm.vertices[el[2]][0] - p0[0], a11 = sm.vertices[el[2]][1] - p0[1];
    double det = a00 * a11 - a01 * a10;
    if (det == 0.0) throw std::runtime_error("degenerate spatial element");
    g.measure = std::abs(det) / 2.0;
    g.grad[1] = {a11 / det, -a01 / det};
    g.grad[2] = {-a10 / det, a00 / det};
    for (int c = 0; c < 2; ++c) g.grad[0][c] = -g.grad[1][c] - g.grad[2][c];
  }
  return g;
}

std::vector<char> spatial_boundary_vertices(const SpatialMesh& sm) {
  std::vector<char> out(sm.vertices.size(), 0);
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& el : sm.elements) {
    if (sm.d == 1) {
      count[el[0]]++;
      count[el[1]]++;
    } else {
      count[edge_key(el[0], el[1])]++;
      count[edge_key(el[0], el[2])]++;
      count[edge_key(el[1], el[2])]++;
    }
  }
  for (const auto& [key, c] : count) {
    if (c != 1) continue;
    if (sm.d == 1) {
      out[key] = 1;
    } else {
      out[key >> 32] = 1;
      out[key & 0xffffffffu] = 1;
    }
  }
  return out;
}

void SpaceTimeMesh::classify_boundary() {
  initial_facets.clear();
  terminal_facets.clear();
  lateral_facets.clear();
  vertex_lateral.assign(vertices.size(), 0);
  if (n_vertices() > kIdMax) throw std::runtime_error("mesh too large for facet keys");

  double tmin = vertices.empty() ? 0.0 : vertices[0][0];
  double tmax = tmin;
  double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
  for (const auto& p : vertices) {
    tmin = std::min(tmin, p[0]);
    tmax = std::max(tmax, p[0]);
    for (int c = 0; c < dim; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  }
  double diam2 = 0.0;
  for (int c = 0; c < dim; ++c) diam2 += (hi[c] - lo[c]) * (hi[c] - lo[c]);
  double tol = 1e-12 * std::sqrt(diam2);
  t_begin = tmin;
  t_end = tmax;

  struct Slot {
    int count = 0;
    Facet facet;
  };
  std::unordered_map<std::uint64_t, Slot> map;
  map.reserve(elements.size() * (dim + 1));
  for (int k = 0; k < n_elements(); ++k)
    for (int omit = 0; omit <= dim; ++omit) {
      Facet f;
      f.v = facet_of(elements[k], dim, omit);
      f.element = k;
      auto& slot = map[facet_key(f.v)];
      if (slot.count == 0) slot.facet = f;
      slot.count++;
    }

  for (const auto& [key, slot] : map) {
    (void)key;
    if (slot.count != 1) continue;
    const Facet& f = slot.facet;
    bool all_begin = true, all_end = true;
    for (int i = 0; i < dim; ++i) {
      double t = vertices[f.v[i]][0];
      all_begin = all_begin && std::abs(t - tmin) <= tol;
      all_end = all_end && std::abs(t - tmax) <= tol;
    }
    if (all_begin)
      initial_facets.push_back(f);
    else if (all_end)
      terminal_facets.push_back(f);
    else {
      lateral_facets.push_back(f);
      for (int i = 0; i < dim; ++i) vertex_lateral[f.v[i]] = 1;
    }
  }
  auto by_ids = [](const Facet& a, const Facet& b) { return a.v < b.v; };
  std::sort(initial_facets.begin(), initial_facets.end(), by_ids);
  std::sort(terminal_facets.begin(), terminal_facets.end(), by_ids);
  std::sort(lateral_facets.begin(), lateral_facets.end(), by_ids);
}

double SpaceTimeMesh::total_volume() const {
  double s = 0.0;
  for (int k = 0; k < n_elements(); ++k) s += element_volume(*this, k);
  return s;
}

std::vector<Element> split_prism(const SpaceTimeMesh& m, const std::array<int, 3>& bottom,
                                 const std::array<int, 3>& top, int d) {
  for (int i = 0; i + 1 <= d; ++i)
    if (!(bottom[i] < bottom[i + 1]) || !(top[i] < top[i + 1]))
      throw std::invalid_argument("non-monotone vertex order");
  std::vector<Element> out;
  for (int ell = 0; ell <= d; ++ell) {
    // path vertices: bottom[ell..d], then top[0..ell]
    std::array<int, 4> path{-1, -1, -1, -1};
    int n = 0;
    for (int i = ell; i <= d; ++i) path[n++] = bottom[i];
    for (int i = 0; i <= ell; ++i) path[n++] = top[i];
    Element el;
    el.gen = 0;
    el.type = 0;
    if (d == 2) {
      // refinement edge = first-last of the path (the vertical edge)
      el.v = {path[0], path[3], path[1], path[2]};
    } else {
      // triangles: longest edge first; in a rectangular cell this is the
      // diagonal path[0]-path[2]
      double best = -1.0;
      int bi = 0, bj = 1;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          double s = 0.0;
          for (int c = 0; c < 2; ++c) {
            double dd = m.vertices[path[i]][c] - m.vertices[path[j]][c];
            s += dd * dd;
          }
          int pi = std::min(path[i], path[j]), pj = std::max(path[i], path[j]);
          int qi = std::min(path[bi], path[bj]), qj = std::max(path[bi], path[bj]);
          if (s > best * (1.0 + 1e-12) ||
              (s > best * (1.0 - 1e-12) && std::pair(pi, pj) < std::pair(qi, qj))) {
            best = s;
            bi = i;
            bj = j;
          }
        }
      int rest = 3 - bi - bj;
      el.v = {path[bi], path[bj], path[rest], -1};
    }
    out.push_back(el);
  }
  return out;
}

SpaceTimeMesh build_tensor_product_mesh(const TimePartition& tp, const SpatialMesh& sm) {
  if (tp.n_slabs() < 1) throw std::invalid_argument("empty time partition");
  for (int k = 0; k < tp.n_slabs(); ++k)
    if (!(tp.nodes[k] < tp.nodes[k + 1])) throw std::invalid_argument("non-increasing time nodes");
  SpaceTimeMesh m;
  m.dim = sm.d + 1;
  const int nvs = sm.n_vertices();
  m.vertices.reserve(static_cast<std::size_t>(nvs) * (tp.n_slabs() + 1));
  for (int k = 0; k <= tp.n_slabs(); ++k)
    for (int i = 0; i < nvs; ++i) {
      Point p{tp.nodes[k], sm.vertices[i][0], sm.d == 2 ? sm.vertices[i][1] : 0.0};
      m.vertices.push_back(p);
    }
  m.vertex_parents.assign(m.vertices.size(), {-1, -1});

  for (int k = 0; k < tp.n_slabs(); ++k)
    for (int e = 0; e < sm.n_elements(); ++e) {
      std::array<int, 3> bottom{-1, -1, -1}, top{-1, -1, -1};
      for (int i = 0; i <= sm.d; ++i) {
        int vi = sm.elements[e][i];
        bottom[i] = k * nvs + vi;
        top[i] = (k + 1) * nvs + vi;
      }
      auto cells = split_prism(m, bottom, top, sm.d);
      for (auto& el : cells) m.elements.push_back(el);
    }
  for (int k = 0; k < m.n_elements(); ++k)
    if (!(element_volume(m, k) > 0.0)) throw std::invalid_argument("degenerate spatial simplex");
  m.reference_volume = m.total_volume();
  m.classify_boundary();
  return m;
}

namespace {

// storage (v0..vn) has refinement edge v0-v1; the bisection path order is
// (v0, v2, ..., vn, v1)
std::array<int, 4> to_path(const std::array<int, 4>& v, int n) {
  std::array<int, 4> s{-1, -1, -1, -1};
  s[0] = v[0];
  s[n] = v[1];
  for (int i = 1; i < n; ++i) s[i] = v[i + 1];
  return s;
}

std::array<int, 4> from_path(const std::array<int, 4>& s, int n) {
  std::array<int, 4> v{-1, -1, -1, -1};
  v[0] = s[0];
  v[1] = s[n];
  for (int i = 1; i < n; ++i) v[i + 1] = s[i];
  return v;
}

struct Bisector {
  SpaceTimeMesh& m;
  std::unordered_map<std::uint64_t, int> midpoint;

  int midpoint_of(int a, int b) {
    auto key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Point p;
    for (int c = 0; c < 3; ++c) p[c] = 0.5 * (m.vertices[a][c] + m.vertices[b][c]);
    int id = m.n_vertices();
    m.vertices.push_back(p);
    m.vertex_parents.push_back({a, b});
    midpoint.emplace(key, id);
    return id;
  }

  bool has_split_edge(const Element& el, int n) const {
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (midpoint.count(edge_key(el.v[i], el.v[j]))) return true;
    return false;
  }

  // replaces element k by its first child, appends the second
  void split(int k) {
    const int n = m.dim;
    Element el = m.elements[k];
    int z = midpoint_of(el.v[0], el.v[1]);
    auto s = to_path(el.v, n);
    int gamma = el.type;
    std::array<int, 4> c1{-1, -1, -1, -1}, c2{-1, -1, -1, -1};
    c1[0] = s[0];
    c1[1] = z;
    for (int i = 1; i < n; ++i) c1[i + 1] = s[i];
    c2[0] = s[n];
    c2[1] = z;
    int p = 2;
    for (int i = 1; i <= gamma; ++i) c2[p++] = s[i];
    for (int i = n - 1; i > gamma; --i) c2[p++] = s[i];
    Element a, b;
    a.v = from_path(c1, n);
    b.v = from_path(c2, n);
    a.type = b.type = static_cast<std::uint8_t>((gamma + 1) % n);
    a.gen = b.gen = el.gen + 1;
    m.elements[k] = a;
    m.elements.push_back(b);
  }
};

}  // namespace

SpaceTimeMesh bisect(const SpaceTimeMesh& in, const std::vector<int>& marked) {
  SpaceTimeMesh m = in;
  Bisector bis{m, {}};
  std::vector<int> remaining(m.elements.size(), 0);
  for (int idx : marked) {
    if (idx < 0 || idx >= m.n_elements()) throw std::out_of_range("marked element out of range");
    remaining[idx] = m.dim;
  }
  const std::size_t cap = 100 * std::max<std::size_t>(m.elements.size(), 1);
  std::size_t created = 0;
  std::vector<int> work;
  for (;;) {
    work.clear();
    const int ne = m.n_elements();
    for (int e = 0; e < ne; ++e)
      if (remaining[e] > 0 || (!bis.midpoint.empty() && bis.has_split_edge(m.elements[e], m.dim)))
        work.push_back(e);
    if (work.empty()) break;
    for (int e : work) {
      int rem = remaining[e] > 0 ? remaining[e] - 1 : 0;
      bis.split(e);
      remaining[e] = rem;
      remaining.push_back(rem);
      if (++created > cap) throw std::runtime_error("bisection closure did not terminate");
    }
  }
  m.classify_boundary();
  return m;
}

namespace {

// does vertex w lie in the closed facet f without being one of its corners?
bool vertex_in_facet(const SpaceTimeMesh& m, const Facet& f, int w, int dim) {
  for (int i = 0; i < dim; ++i)
    if (f.v[i] == w) return false;
  const Point& a = m.vertices[f.v[0]];
  const Point& p = m.vertices[w];
  if (dim == 2) {
    const Point& b = m.vertices[f.v[1]];
    double e[2], r[2];
    for (int c = 0; c < 2; ++c) {
      e[c] = b[c] - a[c];
      r[c] = p[c] - a[c];
    }
    double len2 = e[0] * e[0] + e[1] * e[1];
    if (len2 == 0.0) return false;
    double s = (r[0] * e[0] + r[1] * e[1]) / len2;
    double d0 = r[0] - s * e[0], d1 = r[1] - s * e[1];
    double dist2 = d0 * d0 + d1 * d1;
    return s > -1e-10 && s < 1.0 + 1e-10 && dist2 <= 1e-20 * len2;
  }
  const Point& b = m.vertices[f.v[1]];
  const Point& c = m.vertices[f.v[2]];
  double e1[3], e2[3], r[3];
  for (int i = 0; i < 3; ++i) {
    e1[i] = b[i] - a[i];
    e2[i] = c[i] - a[i];
    r[i] = p[i] - a[i];
  }
  double g11 = 0, g12 = 0, g22 = 0, r1 = 0, r2 = 0;
  for (int i = 0; i < 3; ++i) {
    g11 += e1[i] * e1[i];
    g12 += e1[i] * e2[i];
    g22 += e2[i] * e2[i];
    r1 += r[i] * e1[i];
    r2 += r[i] * e2[i];
  }
  double det = g11 * g22 - g12 * g12;
  if (det <= 0.0) return false;
  double s = (g22 * r1 - g12 * r2) / det;
  double t = (g11 * r2 - g12 * r1) / det;
  double res2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    double d = r[i] - s * e1[i] - t * e2[i];
    res2 += d * d;
  }
  double scale2 = std::max(g11, g22);
  return s > -1e-10 && t > -1e-10 && s + t < 1.0 + 1e-10 && res2 <= 1e-20 * scale2;
}

}  // namespace

AdmissibilityReport check_admissibility(const SpaceTimeMesh& m, CheckLevel level) {
  AdmissibilityReport rep;
  for (int k = 0; k < m.n_elements(); ++k)
    if (!(element_volume(m, k) > 0.0)) {
      rep.pass = false;
      rep.message = "degenerate element " + std::to_string(k);
      return rep;
    }
  if (m.reference_volume > 0.0) {
    double vol = m.total_volume();
    if (std::abs(vol - m.reference_volume) > 1e-12 * m.reference_volume) {
      rep.pass = false;
      rep.message = "volume not conserved";
      return rep;
    }
  }

  struct Slot {
    int count = 0;
    Facet facet;
  };
  std::unordered_map<std::uint64_t, Slot> map;
  map.reserve(m.elements.size() * (m.dim + 1));
  for (int k = 0; k < m.n_elements(); ++k)
    for (int omit = 0; omit <= m.dim; ++omit) {
      Facet f;
      f.v = facet_of(m.elements[k], m.dim, omit);
      f.element = k;
      auto& slot = map[facet_key(f.v)];
      if (slot.count == 0) slot.facet = f;
      slot.count++;
    }
  std::vector<Facet> boundary;
  for (const auto& [key, slot] : map) {
    (void)key;
    if (slot.count == 1)
      boundary.push_back(slot.facet);
    else if (slot.count != 2) {
      rep.pass = false;
      rep.offending_facets.push_back(slot.facet.v);
    }
  }
  if (!rep.pass) {
    rep.message = "facet shared by more than two elements";
    return rep;
  }
  if (level == CheckLevel::full) {
    for (const Facet& f : boundary)
      for (int w = 0; w < m.n_vertices(); ++w)
        if (vertex_in_facet(m, f, w, m.dim)) {
          rep.pass = false;
          rep.offending_facets.push_back(f.v);
        }
    if (!rep.pass) {
      rep.message = "hanging vertex on facet";
      std::sort(rep.offending_facets.begin(), rep.offending_facets.end());
      rep.offending_facets.erase(
          std::unique(rep.offending_facets.begin(), rep.offending_facets.end()),
          rep.offending_facets.end());
    }
  }
  return rep;
}

void dump_mesh(std::ostream& os, const SpaceTimeMesh& m, const std::vector<double>* element_extra) {
  os << std::setprecision(17);
  os << m.dim << ' ' << m.n_vertices() << ' ' << m.n_elements() << '\n';
  for (const auto& p : m.vertices) {
    os << p[0];
    for (int c = 1; c < m.dim; ++c) os << ' ' << p[c];
    os << '\n';
  }
  for (int k = 0; k < m.n_elements(); ++k) {
    const Element& el = m.elements[k];
    os << el.v[0];
    for (int i = 1; i <= m.dim; ++i) os << ' ' << el.v[i];
    if (element_extra) os << ' ' << (*element_extra)[k];
    os << '\n';
  }
  auto put = [&](const char* name, const std::vector<Facet>& fs) {
    for (const Facet& f : fs) {
      os << name;
      for (int i = 0; i < m.dim; ++i) os << ' ' << f.v[i];
      os << '\n';
    }
  };
  put("initial", m.initial_facets);
  put("terminal", m.terminal_facets);
  put("lateral", m.lateral_facets);
}

SpatialMesh make_interval_mesh(int n_cells, double a, double b) {
  std::vector<double> nodes(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i) nodes[i] = a + (b - a) * i / n_cells;
  return make_interval_mesh(nodes);
}

SpatialMesh make_interval_mesh(const std::vector<double>& nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("interval mesh needs two nodes");
  SpatialMesh sm;
  sm.d = 1;
  for (double x : nodes) sm.vertices.push_back({x, 0.0, 0.0});
  for (int i = 0; i + 1 < static_cast<int>(nodes.size()); ++i) sm.elements.push_back({i, i + 1, -1});
  return sm;
}

SpatialMesh make_rect_mesh(int nx, int ny, double x0, double y0, double x1, double y1) {
  SpatialMesh sm;
  sm.d = 2;
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix)
      sm.vertices.push_back({x0 + (x1 - x0) * ix / nx, y0 + (y1 - y0) * iy / ny, 0.0});
  auto id = [&](int ix, int iy) { return iy * (nx + 1) + ix; };
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      int bl = id(ix, iy), br = id(ix + 1, iy), tl = id(ix, iy + 1), tr = id(ix + 1, iy + 1);
      // split along the top-left / bottom-right diagonal
      sm.elements.push_back({tl, br, bl});
      sm.elements.push_back({tl, br, tr});
    }
  sm.normalize();
  return sm;
}

SpaceTimeMesh make_square_cross_mesh() {
  SpaceTimeMesh m;
  m.dim = 2;
  m.vertices = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {0.5, 0.5, 0}};
  m.vertex_parents.assign(5, {-1, -1});
  auto add = [&](int a, int b, int w) {
    Element el;
    el.v = {a, b, w, -1};
    m.elements.push_back(el);
  };
  // refinement edges on the outer square
  add(0, 1, 4);
  add(2, 3, 4);
  add(0, 2, 4);
  add(1, 3, 4);
  m.reference_volume = m.total_volume();
  m.classify_boundary();
  return m;
}

}  // namespace stls
