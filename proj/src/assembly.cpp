#include "assembly.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "quadrature.hpp"

namespace stls {

void SparseSystem::multiply(const double* x, double* y) const {
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
}

void SparseSystem::add(int i, int j, double v) {
  const int* b = col_idx.data() + row_ptr[i];
  const int* e = col_idx.data() + row_ptr[i + 1];
  const int* it = std::lower_bound(b, e, j);
  if (it == e || *it != j) throw std::runtime_error("entry outside sparsity pattern");
  values[row_ptr[i] + (it - b)] += v;
}

double SparseSystem::get(int i, int j) const {
  const int* b = col_idx.data() + row_ptr[i];
  const int* e = col_idx.data() + row_ptr[i + 1];
  const int* it = std::lower_bound(b, e, j);
  if (it == e || *it != j) return 0.0;
  return values[row_ptr[i] + (it - b)];
}

namespace {

constexpr int kMaxLocal = 12;  // (d+2) vertices * (1 + d) fields

// Local system of one element: global dof ids and the symmetric matrix of the
// two volume terms.  u slots (non-lateral vertices) first, then sigma slots
// vertex-major.  Returns the local dimension.
int element_matrix_into(const SpaceTimeMesh& m, int k, const DofMap& dm, int* dofs, double* a) {
  const Element& el = m.elements[k];
  const int nv = m.dim + 1;
  const int d = m.dim - 1;
  ElementGeometry g = element_geometry(m, k);
  const double vol = g.volume;

  int u_vertex[4];
  int nu = 0;
  for (int i = 0; i < nv; ++i) {
    int ud = dm.u_dof[el.v[i]];
    if (ud >= 0) {
      u_vertex[nu] = i;
      dofs[nu++] = ud;
    }
  }
  const int nl = nu + nv * d;
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) dofs[nu + i * d + c] = dm.sigma_dof(el.v[i], c);

  // r = dt(basis_u) resp. -div(basis_sigma), constant per element
  double r[kMaxLocal];
  for (int p = 0; p < nu; ++p) r[p] = g.grad[u_vertex[p]][0];
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) r[nu + i * d + c] = -g.grad[i][c + 1];

  const double mass_diag = 2.0 * vol / (nv * (nv + 1.0));  // int lambda_i^2
  const double mass_off = vol / (nv * (nv + 1.0));         // int lambda_i lambda_j
  const double hat_int = vol / nv;                         // int lambda_i

  for (int p = 0; p < nl; ++p)
    for (int q = p; q < nl; ++q) {
      double val = vol * r[p] * r[q];
      if (p < nu && q < nu) {
        const double* gi = g.grad[u_vertex[p]].data();
        const double* gj = g.grad[u_vertex[q]].data();
        double dot = 0.0;
        for (int c = 1; c <= d; ++c) dot += gi[c] * gj[c];
        val += vol * dot;
      } else if (p < nu) {
        int j = (q - nu) / d, c = (q - nu) % d;
        (void)j;
        val -= g.grad[u_vertex[p]][c + 1] * hat_int;
      } else {
        int i = (p - nu) / d, c = (p - nu) % d;
        int j = (q - nu) / d, e = (q - nu) % d;
        if (c == e) val += i == j ? mass_diag : mass_off;
      }
      a[p * nl + q] = val;
      a[q * nl + p] = val;
    }
  return nl;
}

int element_load_into(const SpaceTimeMesh& m, int k, const DofMap& dm, const ScalarField& f,
                      int data_order, int* dofs, double* b) {
  const Element& el = m.elements[k];
  const int nv = m.dim + 1;
  const int d = m.dim - 1;
  ElementGeometry g = element_geometry(m, k);
  int u_vertex[4];
  int nu = 0;
  for (int i = 0; i < nv; ++i) {
    int ud = dm.u_dof[el.v[i]];
    if (ud >= 0) {
      u_vertex[nu] = i;
      dofs[nu++] = ud;
    }
  }
  const int nl = nu + nv * d;
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) dofs[nu + i * d + c] = dm.sigma_dof(el.v[i], c);

  const QuadratureRule& rule = simplex_rule(m.dim, data_order);
  double base = 0.0;
  for (const auto& qp : rule.points) base += qp.weight * f(element_point(m, k, qp.bary.data()));
  base *= g.volume;

  for (int p = 0; p < nu; ++p) b[p] = g.grad[u_vertex[p]][0] * base;
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) b[nu + i * d + c] = -g.grad[i][c + 1] * base;
  return nl;
}

}  // namespace

LocalMatrix element_matrix(const SpaceTimeMesh& m, int k, const DofMap& dm) {
  int dofs[kMaxLocal];
  double a[kMaxLocal * kMaxLocal];
  int nl = element_matrix_into(m, k, dm, dofs, a);
  LocalMatrix out;
  out.dofs.assign(dofs, dofs + nl);
  out.a.assign(a, a + nl * nl);
  return out;
}

LocalMatrix initial_facet_matrix(const SpaceTimeMesh& m, const Facet& f, const DofMap& dm) {
  const int nfv = m.dim;  // facet vertex count = d+1
  LocalMatrix out;
  int slot_vertex[3];
  for (int i = 0; i < nfv; ++i) {
    int ud = dm.u_dof[f.v[i]];
    if (ud >= 0) {
      slot_vertex[out.dofs.size()] = i;
      out.dofs.push_back(ud);
    }
  }
  const int nl = static_cast<int>(out.dofs.size());
  out.a.assign(nl * nl, 0.0);
  double meas = facet_measure(m, f);
  double diag = 2.0 * meas / (nfv * (nfv + 1.0));
  double off = meas / (nfv * (nfv + 1.0));
  for (int p = 0; p < nl; ++p)
    for (int q = 0; q < nl; ++q)
      out.a[p * nl + q] = slot_vertex[p] == slot_vertex[q] ? diag : off;
  return out;
}

LocalVector element_load(const SpaceTimeMesh& m, int k, const DofMap& dm, const ScalarField& f,
                         int data_order) {
  int dofs[kMaxLocal];
  double b[kMaxLocal];
  int nl = element_load_into(m, k, dm, f, data_order, dofs, b);
  LocalVector out;
  out.dofs.assign(dofs, dofs + nl);
  out.b.assign(b, b + nl);
  return out;
}

LocalVector initial_facet_load(const SpaceTimeMesh& m, const Facet& f, const DofMap& dm,
                               const ScalarField& u0, int data_order) {
  const int nfv = m.dim;
  LocalVector out;
  int slots[3];
  int nl = 0;
  for (int i = 0; i < nfv; ++i) {
    int ud = dm.u_dof[f.v[i]];
    if (ud >= 0) {
      slots[nl++] = i;
      out.dofs.push_back(ud);
    }
  }
  out.b.assign(nl, 0.0);
  const QuadratureRule& rule = simplex_rule(m.dim - 1, data_order);
  double meas = facet_measure(m, f);
  for (const auto& qp : rule.points) {
    Point p{0, 0, 0};
    for (int i = 0; i < nfv; ++i)
      for (int c = 0; c < m.dim; ++c) p[c] += qp.bary[i] * m.vertices[f.v[i]][c];
    double val = qp.weight * u0(p);
    for (int s = 0; s < nl; ++s) out.b[s] += val * qp.bary[slots[s]];
  }
  for (int s = 0; s < nl; ++s) out.b[s] *= meas;
  return out;
}

SparseSystem assemble(const SpaceTimeMesh& m, const DofMap& dm, const ProblemSpec& p,
                      const AssemblyOptions& opt) {
  const int nv = m.n_vertices();
  const int nvl = m.dim + 1;
  const int d = m.dim - 1;
  SparseSystem sys;
  sys.n = dm.n_total;

  // vertex adjacency (including self), sorted
  std::vector<std::uint64_t> pairs;
  pairs.reserve(static_cast<std::size_t>(m.n_elements()) * nvl * nvl);
  for (const Element& el : m.elements)
    for (int i = 0; i < nvl; ++i)
      for (int j = 0; j < nvl; ++j)
        pairs.push_back((static_cast<std::uint64_t>(el.v[i]) << 32) |
                        static_cast<std::uint32_t>(el.v[j]));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<int> adj_ptr(nv + 1, 0);
  std::vector<int> adj(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    adj_ptr[(pairs[q] >> 32) + 1]++;
    adj[q] = static_cast<int>(pairs[q] & 0xffffffffu);
  }
  pairs.clear();
  pairs.shrink_to_fit();
  for (int v = 0; v < nv; ++v) adj_ptr[v + 1] += adj_ptr[v];

  // one u row per non-lateral vertex, d sigma rows per vertex
  std::vector<int> u_vertex(dm.n_u);
  for (int v = 0; v < nv; ++v)
    if (dm.u_dof[v] >= 0) u_vertex[dm.u_dof[v]] = v;

  sys.row_ptr.assign(sys.n + 1, 0);
  auto row_len = [&](int v) {
    int cnt_u = 0;
    for (int q = adj_ptr[v]; q < adj_ptr[v + 1]; ++q)
      if (dm.u_dof[adj[q]] >= 0) ++cnt_u;
    return cnt_u + d * (adj_ptr[v + 1] - adj_ptr[v]);
  };
  for (int r = 0; r < sys.n; ++r) {
    int v = r < dm.n_u ? u_vertex[r] : (r - dm.n_u) / d;
    sys.row_ptr[r + 1] = row_len(v);
  }
  for (int r = 0; r < sys.n; ++r) sys.row_ptr[r + 1] += sys.row_ptr[r];
  sys.col_idx.resize(sys.row_ptr[sys.n]);
  sys.values.assign(sys.row_ptr[sys.n], 0.0);
  sys.rhs.assign(sys.n, 0.0);
  for (int r = 0; r < sys.n; ++r) {
    int v = r < dm.n_u ? u_vertex[r] : (r - dm.n_u) / d;
    int w = sys.row_ptr[r];
    for (int q = adj_ptr[v]; q < adj_ptr[v + 1]; ++q)
      if (int ud = dm.u_dof[adj[q]]; ud >= 0) sys.col_idx[w++] = ud;
    for (int q = adj_ptr[v]; q < adj_ptr[v + 1]; ++q)
      for (int c = 0; c < d; ++c) sys.col_idx[w++] = dm.sigma_dof(adj[q], c);
  }

  // element contributions; with threads, local systems are precomputed in
  // chunks and scattered serially in element order, so results do not depend
  // on the thread count
  const int threads = std::max(1, opt.threads);
  const int ne = m.n_elements();
  if (threads == 1) {
    int dofs[kMaxLocal];
    double a[kMaxLocal * kMaxLocal];
    double b[kMaxLocal];
    for (int k = 0; k < ne; ++k) {
      int nl = element_matrix_into(m, k, dm, dofs, a);
      for (int p = 0; p < nl; ++p) {
        for (int q = 0; q < nl; ++q) sys.add(dofs[p], dofs[q], a[p * nl + q]);
      }
      nl = element_load_into(m, k, dm, p.f, opt.data_order, dofs, b);
      for (int s = 0; s < nl; ++s) sys.rhs[dofs[s]] += b[s];
    }
  } else {
    const int chunk = 4096;
    std::vector<int> cdofs(chunk * kMaxLocal);
    std::vector<int> cnl(chunk);
    std::vector<double> ca(static_cast<std::size_t>(chunk) * kMaxLocal * kMaxLocal);
    std::vector<double> cb(chunk * kMaxLocal);
    for (int base = 0; base < ne; base += chunk) {
      const int count = std::min(chunk, ne - base);
      auto worker = [&](int t) {
        int dofs[kMaxLocal];
        double bloc[kMaxLocal];
        for (int i = t; i < count; i += threads) {
          int nl = element_matrix_into(m, base + i, dm, cdofs.data() + i * kMaxLocal,
                                       ca.data() + static_cast<std::size_t>(i) * kMaxLocal * kMaxLocal);
          cnl[i] = nl;
          int nl2 = element_load_into(m, base + i, dm, p.f, opt.data_order, dofs, bloc);
          (void)nl2;
          std::copy(bloc, bloc + nl, cb.data() + i * kMaxLocal);
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
      worker(0);
      for (auto& th : pool) th.join();
      for (int i = 0; i < count; ++i) {
        const int nl = cnl[i];
        const int* dofs = cdofs.data() + i * kMaxLocal;
        const double* a = ca.data() + static_cast<std::size_t>(i) * kMaxLocal * kMaxLocal;
        for (int p2 = 0; p2 < nl; ++p2)
          for (int q = 0; q < nl; ++q) sys.add(dofs[p2], dofs[q], a[p2 * nl + q]);
        const double* b = cb.data() + i * kMaxLocal;
        for (int s = 0; s < nl; ++s) sys.rhs[dofs[s]] += b[s];
      }
    }
  }

  for (const Facet& f : m.initial_facets) {
    LocalMatrix lm = initial_facet_matrix(m, f, dm);
    const int nl = static_cast<int>(lm.dofs.size());
    for (int p2 = 0; p2 < nl; ++p2)
      for (int q = 0; q < nl; ++q) sys.add(lm.dofs[p2], lm.dofs[q], lm.a[p2 * nl + q]);
    LocalVector lv = initial_facet_load(m, f, dm, p.u0, opt.data_order);
    for (std::size_t s = 0; s < lv.dofs.size(); ++s) sys.rhs[lv.dofs[s]] += lv.b[s];
  }
  return sys;
}

void write_matrix_market(std::ostream& os, const SparseSystem& s) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << std::setprecision(17);
  os << s.n << ' ' << s.n << ' ' << s.row_ptr[s.n] << '\n';
  for (int i = 0; i < s.n; ++i)
    for (int p = s.row_ptr[i]; p < s.row_ptr[i + 1]; ++p)
      os << i + 1 << ' ' << s.col_idx[p] + 1 << ' ' << s.values[p] << '\n';
}

}  // namespace stls
