#include "estimator.hpp"

#include <cmath>
#include <thread>

#include "quadrature.hpp"

namespace stls {

namespace {

// exact integral of |sigma_h - grad u_h|^2 over element k via the nodal
// representation sum_m lambda_m W_m with W_m = sigma(v_m) - grad u
double flux_misfit_sq(const SpaceTimeMesh& m, const ElementValues& ev,
                      const ElementGeometry& g) {
  const int nv = m.dim + 1;
  const int d = m.dim - 1;
  double gu[2] = {0.0, 0.0};
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) gu[c] += ev.u[i] * g.grad[i][c + 1];
  double w[4][2];
  for (int i = 0; i < nv; ++i)
    for (int c = 0; c < d; ++c) w[i][c] = ev.sigma[i][c] - gu[c];
  const double diag = 2.0 * g.volume / (nv * (nv + 1.0));
  const double off = g.volume / (nv * (nv + 1.0));
  double s = 0.0;
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      double dot = 0.0;
      for (int c = 0; c < d; ++c) dot += w[i][c] * w[j][c];
      s += dot * (i == j ? diag : off);
    }
  return s;
}

double residual_term_sq(const SpaceTimeMesh& m, int k, const DiscretePair& w,
                        const ScalarField& f, const QuadratureRule& rule) {
  double bary0[4] = {0.25, 0.25, 0.25, 0.25};
  FieldSample fs = sample_field(w, k, bary0);
  double r = fs.du_dt - fs.div_sigma;
  double vol = element_volume(m, k);
  double s = 0.0;
  for (const auto& qp : rule.points) {
    double diff = r - f(element_point(m, k, qp.bary.data()));
    s += qp.weight * diff * diff;
  }
  return vol * s;
}

double trace_term_sq(const SpaceTimeMesh& m, const Facet& fac, const DiscretePair& w,
                     const ScalarField& u0, const QuadratureRule& rule) {
  double meas = facet_measure(m, fac);
  double s = 0.0;
  for (const auto& qp : rule.points) {
    Point p{0, 0, 0};
    for (int i = 0; i < m.dim; ++i)
      for (int c = 0; c < m.dim; ++c) p[c] += qp.bary[i] * m.vertices[fac.v[i]][c];
    double diff = facet_trace_u(w, fac, qp.bary.data()) - u0(p);
    s += qp.weight * diff * diff;
  }
  return meas * s;
}

}  // namespace

IndicatorField local_indicators(const DiscretePair& w, const ProblemSpec& p,
                                const EstimatorOptions& opt) {
  const SpaceTimeMesh& m = *w.mesh;
  const QuadratureRule& vrule = simplex_rule(m.dim, opt.data_order);
  const QuadratureRule& frule = simplex_rule(m.dim - 1, opt.data_order);
  IndicatorField out;
  out.eta2.assign(m.n_elements(), 0.0);

  auto run = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      ElementValues ev = element_values(w, k);
      ElementGeometry g = element_geometry(m, k);
      out.eta2[k] = flux_misfit_sq(m, ev, g) + residual_term_sq(m, k, w, p.f, vrule);
    }
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    run(0, m.n_elements());
  } else {
    std::vector<std::thread> pool;
    int per = (m.n_elements() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int b = t * per, e = std::min(m.n_elements(), b + per);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (const Facet& fac : m.initial_facets)
    out.eta2[fac.element] += trace_term_sq(m, fac, w, p.u0, frule);

  out.total = 0.0;
  for (double v : out.eta2) out.total += v;
  return out;
}

double data_norm_squared(const SpaceTimeMesh& m, const ProblemSpec& p, int data_order) {
  const QuadratureRule& vrule = simplex_rule(m.dim, data_order);
  const QuadratureRule& frule = simplex_rule(m.dim - 1, data_order);
  double s = 0.0;
  for (int k = 0; k < m.n_elements(); ++k)
    s += integrate_on_element(m, k, vrule, [&](const Point& q) {
      double v = p.f(q);
      return v * v;
    });
  for (const Facet& fac : m.initial_facets)
    s += integrate_on_facet(m, fac, frule, [&](const Point& q) {
      double v = p.u0(q);
      return v * v;
    });
  return s;
}

double ErrorReport::total() const {
  double s = 0.0;
  if (has_l2) s += err_l2 * err_l2;
  if (has_u0) s += err_u0 * err_u0;
  if (has_uT) s += err_uT * err_uT;
  if (has_flux) s += err_flux * err_flux;
  if (has_dt) s += err_dt * err_dt;
  return std::sqrt(s);
}

ErrorReport error_norms(const DiscretePair& w, const ProblemSpec& p, const EstimatorOptions& opt) {
  const SpaceTimeMesh& m = *w.mesh;
  const QuadratureRule& vrule = simplex_rule(m.dim, opt.data_order);
  const QuadratureRule& frule = simplex_rule(m.dim - 1, opt.data_order);
  const int d = m.dim - 1;
  ErrorReport rep;
  rep.has_u0 = static_cast<bool>(p.u0);
  rep.has_l2 = rep.has_uT = p.has_exact && static_cast<bool>(p.exact_u);
  rep.has_flux = p.has_exact && static_cast<bool>(p.exact_grad);
  rep.has_dt = p.has_exact && static_cast<bool>(p.exact_dt);

  double l2 = 0.0, flux = 0.0, dt = 0.0;
  if (rep.has_l2 || rep.has_flux || rep.has_dt) {
    for (int k = 0; k < m.n_elements(); ++k) {
      double vol = element_volume(m, k);
      for (const auto& qp : vrule.points) {
        FieldSample fs = sample_field(w, k, qp.bary.data());
        Point q = element_point(m, k, qp.bary.data());
        if (rep.has_l2) {
          double e = p.exact_u(q) - fs.u;
          l2 += vol * qp.weight * e * e;
        }
        if (rep.has_flux) {
          auto gr = p.exact_grad(q);
          for (int c = 0; c < d; ++c) {
            double e = gr[c] - fs.sigma[c];
            flux += vol * qp.weight * e * e;
          }
        }
        if (rep.has_dt) {
          double e = p.exact_dt(q) - fs.du_dt;
          dt += vol * qp.weight * e * e;
        }
      }
    }
  }
  double u0 = 0.0, uT = 0.0;
  if (rep.has_u0)
    for (const Facet& fac : m.initial_facets) u0 += trace_term_sq(m, fac, w, p.u0, frule);
  if (rep.has_uT) {
    auto u_at = [&](const Point& q) { return p.exact_u(q); };
    for (const Facet& fac : m.terminal_facets) uT += trace_term_sq(m, fac, w, u_at, frule);
  }
  rep.err_l2 = std::sqrt(l2);
  rep.err_u0 = std::sqrt(u0);
  rep.err_uT = std::sqrt(uT);
  rep.err_flux = std::sqrt(flux);
  rep.err_dt = std::sqrt(dt);
  return rep;
}

}  // namespace stls
