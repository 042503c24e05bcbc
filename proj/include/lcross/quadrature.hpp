#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals (7-point Gauss with
// 15-point Kronrod extension, worst-interval-first bisection). Infinite or
// singular endpoints are handled by substitution at call sites.

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lcross {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int subdivisions = 0;
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights for the
// even-indexed abscissae.
inline constexpr double kGK15X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kGK15X[i]);
    fv[14 - i] = f(c + h * kGK15X[i]);
  }
  fv[7] = f(c);
  double kron = kGK15WK[7] * fv[7];
  double gauss = kGK15WG[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    kron += kGK15WK[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kGK15WG[i / 2] * (fv[i] + fv[14 - i]);
  }
  value = kron * h;
  error = std::fabs((kron - gauss) * h);
}

}  // namespace detail

// Integrates f over [a, b]. Converged means the summed error estimate fell
// below max(abs_tol, rel_tol * |value|) before the subdivision budget ran out.
template <class F>
inline QuadratureResult integrate(const F& f, double a, double b,
                                  const QuadratureConfig& cfg = {}) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, true, 0};
    throw std::invalid_argument("integrate: interval must satisfy a <= b");
  }
  struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
  };
  std::priority_queue<Segment> heap;
  double v0, e0;
  detail::gk15(f, a, b, v0, e0);
  heap.push({a, b, v0, e0});
  double total_v = v0, total_e = e0;
  int subdivisions = 0;
  while (total_e > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_v)) &&
         subdivisions < cfg.max_subdivisions) {
    const Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {  // interval at floating-point resolution
      total_e = 0.0;
      for (auto copy = heap; !copy.empty(); copy.pop()) total_e += copy.top().error;
      break;
    }
    double vl, el, vr, er;
    detail::gk15(f, s.a, mid, vl, el);
    detail::gk15(f, mid, s.b, vr, er);
    total_v += vl + vr - s.value;
    total_e += el + er - s.error;
    heap.push({s.a, mid, vl, el});
    heap.push({mid, s.b, vr, er});
    ++subdivisions;
  }
  const bool ok = total_e <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_v));
  return {total_v, total_e, ok, subdivisions};
}

// Integral over [a, +inf) via x = a + t/(1-t), t in [0,1).
template <class F>
inline QuadratureResult integrate_to_inf(const F& f, double a, const QuadratureConfig& cfg = {}) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    return f(x) / (om * om);
  };
  return integrate(g, 0.0, 1.0 - 1e-14, cfg);
}

}  // namespace lcross
