#pragma once

// Closed-form limit laws and small-matrix crossing distributions, used as
// reference targets by the statistical gates. Everything here is independent
// of the interpolation pipeline.
//
// Conventions (matching ensemble.hpp):
//   complex Ginibre entries     E|z|^2 = 1
//   GOE                         off-diagonal N(0,1), diagonal N(0,2)
//   GUE                         diagonal N(0,1), off-diagonal E|z|^2 = 1
//   real Ginibre entries        N(0,1)
// The 2x2 real Ginibre pencil is handled through its four symmetric-basis
// components (plus, minus, delta, trace); sign-invariant quantities below do
// not depend on the component variance, the quadratic-form density is stated
// for unit-variance components.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special.hpp"

namespace lcross::theory {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;

// ---- sphere-uniform family (large-n complex limit; 2x2 real-orthogonal) ----

// Plane density of a point uniform on the unit sphere, pushed through
// stereographic projection: 1 / (pi (1 + |l|^2)^2).
inline double sphere_uniform_plane_density(cplx l) {
  const double r2 = std::norm(l);
  return 1.0 / (kPi * (1.0 + r2) * (1.0 + r2));
}

inline double sphere_uniform_radial_cdf(double r) {
  if (r <= 0.0) return 0.0;
  return r * r / (1.0 + r * r);
}

// ---- 2x2 Hermitian pencil (complex off-diagonal) ----------------------------

// Plane density of a uniformly chosen crossing of the conjugate pair.
inline double gue2_plane_density(cplx l) {
  const double x = l.real(), y = l.imag();
  const double d = 1.0 + x * x + y * y;
  return 4.0 * std::abs(y) / (kPi * d * d * d);
}

// Density of the crossing in the upper half-plane (twice the plane law).
inline double gue2_upper_density(cplx l) { return 2.0 * gue2_plane_density(l); }

// CDF of |Y| for the sphere image of the crossing, Y the vertical coordinate.
inline double gue2_abs_y_cdf(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return y * y;
}

// Joint (psi, Y) density on the cylinder chart: uniform in psi, |Y| / (2 pi).
inline double gue2_cylinder_y_density(double y) {
  if (std::abs(y) > 1.0) return 0.0;
  return std::abs(y) / kTwoPi;
}

// ---- 2x2 real symmetric pencil ----------------------------------------------

// Upper half-plane crossing density (the sphere-uniform law restricted).
inline double goe2_upper_density(cplx l) {
  return l.imag() > 0.0 ? 2.0 * sphere_uniform_plane_density(l) : 0.0;
}

// ---- eigenvalue gap laws of the 2x2 unperturbed matrix ----------------------

inline double goe2_gap_joint_density(double a1, double a2) {
  if (a2 < a1) return 0.0;
  return (a2 - a1) / (4.0 * std::sqrt(2.0 * kPi)) * std::exp(-(a1 * a1 + a2 * a2) / 4.0);
}

inline double gue2_gap_joint_density(double a1, double a2) {
  const double d = a2 - a1;
  if (d < 0.0) return 0.0;
  return d * d / (2.0 * kPi) * std::exp(-(a1 * a1 + a2 * a2) / 2.0);
}

inline double goe2_gap_density(double d) {
  if (d < 0.0) return 0.0;
  return 0.25 * d * std::exp(-d * d / 8.0);
}

inline double gue2_gap_density(double d) {
  if (d < 0.0) return 0.0;
  return d * d / (2.0 * std::sqrt(kPi)) * std::exp(-d * d / 4.0);
}

// ---- crossing laws conditioned on the gap, upper half-plane -----------------

inline double goe2_conditional_crossing_density(double delta, cplx l) {
  if (l.imag() <= 0.0) return 0.0;
  const double r2 = std::norm(l);
  return delta * delta / (4.0 * kPi * r2 * r2) * std::exp(-delta * delta / (8.0 * r2));
}

inline double gue2_conditional_crossing_density(double delta, cplx l) {
  const double y = l.imag();
  if (y <= 0.0) return 0.0;
  const double r2 = std::norm(l);
  return y * delta * delta * delta * std::exp(-delta * delta / (4.0 * r2)) /
         (4.0 * std::sqrt(kPi) * r2 * r2 * r2);
}

// ---- 2x2 real Ginibre pencil -------------------------------------------------

inline double real2_both_real_probability() { return 1.0 / kSqrt2; }

namespace detail {

// Splits [0, sqrt(2)] so that the layer of width ~1/|x| around s = 1, where
// the midpoint integrands concentrate for large |x|, gets its own panels.
// Without the split the subdivision heap can converge before sampling the
// layer at all. Pure relative tolerance keeps the tail (values ~1/x^2)
// resolved instead of being waved through by the absolute floor.
template <class F>
inline double midpoint_integral(const F& integrand, double x) {
  const QuadratureConfig cfg{0.0, 1e-9, 10000};
  const double layer = std::min(kSqrt2 - 1.0, 8.0 / (1.0 + std::abs(x)));
  double sum = 0.0;
  for (auto [a, b] :
       {std::pair{0.0, 1.0 - layer}, {1.0 - layer, 1.0}, {1.0, 1.0 + layer}, {1.0 + layer, kSqrt2}})
    sum += integrate(integrand, a, b, cfg).value;
  return sum;
}

}  // namespace detail

// Density of the midpoint of the two crossings (always real). Normalized.
inline double real2_midpoint_density(double x) {
  auto integrand = [x](double s) {
    const double u = std::abs(1.0 - s * s);
    const double den = x * x * u * u + 1.0;
    return u / (den * den);
  };
  return kSqrt2 / kPi * detail::midpoint_integral(integrand, x);
}

inline double real2_midpoint_density_zero() { return (4.0 * kSqrt2 - 2.0) / (3.0 * kPi); }

// CDF of the midpoint: the inner x-integral is elementary, leaving one
// s-integral per evaluation. Its tail is heavy, 1 - F(x) ~ 1/(sqrt(2) pi x).
inline double real2_midpoint_cdf(double x) {
  auto g = [](double y) { return 0.5 * (y / (1.0 + y * y) + std::atan(y)); };
  auto integrand = [&](double s) { return g(x * std::abs(1.0 - s * s)); };
  return 0.5 + kSqrt2 / kPi * detail::midpoint_integral(integrand, x);
}

// Density of the quadratic form plus^2 - minus^2 + delta^2 for iid N(0,1)
// components. Positive with probability 1/sqrt(2).
inline double real2_quadratic_form_density(double d) {
  const double c = 1.0 / (2.0 * kSqrt2);
  if (d >= 0.0) return c * std::exp(-d / 2.0);
  return c * std::exp(d / 2.0) * erfcx(std::sqrt(-d));
}

inline double real2_quadratic_form_positive_probability() { return 1.0 / kSqrt2; }

// Density of the product of the two crossings (the ratio of the two quadratic
// forms, always real). Closed forms except in a small window around the
// removable singularity at x = -1, where the integral representation is used.
inline double real2_product_density(double x) {
  if (x >= 0.0) {
    const double same_sign = 1.0 / (2.0 * (x + 1.0) * (x + 1.0));
    const double sx = std::sqrt(x);
    auto integrand = [&](double u) {
      return 0.25 * u * u * u * std::exp(-(1.0 + x) * u * u / 2.0) * erfcx(u) * erfcx(sx * u);
    };
    const auto tail = integrate_to_inf(integrand, 0.0);
    return same_sign + tail.value;
  }
  if (std::abs(x + 1.0) <= 1e-3) {
    const double sx = std::sqrt(-x);
    auto integrand = [&](double u) {
      return 0.25 * u * u * u * std::exp((x - 1.0) * u * u / 2.0) * (erfcx(u) + erfcx(sx * u));
    };
    return integrate_to_inf(integrand, 0.0).value;
  }
  const double sx = std::sqrt(-x);
  const double pre = 1.0 / (2.0 * (x + 1.0) * (x + 1.0));
  const double shared = kSqrt2 * std::pow(1.0 - x, 1.5);
  return pre * (2.0 + ((3.0 * x - 1.0) + (x - 3.0) * sx) / shared);
}

// Crossing mass on the real axis, written as a planar (conformal) density
// restricted to y = 0; its x-integral equals the axis mass 1/sqrt(2).
inline double real2_real_axis_density(double x) {
  const double d = 1.0 + x * x;
  return kSqrt2 / (kPi * d * d);
}

// Normalized CDF of real-crossing locations. SO(2) pair rotations act on the
// compactified real axis as rotations of a great circle and preserve the
// ensemble, so locations are uniform on that circle; pushing the uniform
// measure through stereographic coordinates gives the Cauchy law. This is the
// planar form above times the transverse conformal width (1 + x^2),
// renormalized to total mass 1.
inline double real2_real_axis_cdf(double x) {
  return std::atan(x) / kPi + 0.5;
}

// Probability that both crossings are real, conditioned on the symmetric-basis
// components of the unperturbed matrix. Scale invariant.
inline double real2_kappa(double aplus, double aminus, double adelta) {
  const double d = aplus * aplus - aminus * aminus + adelta * adelta;
  if (d < 0.0) return 1.0;
  const double denom = aplus * aplus + adelta * adelta;
  if (denom == 0.0) return 1.0;  // all components zero is degenerate anyway
  const double ratio = std::min(1.0, aminus * aminus / denom);
  return 1.0 - std::acos(ratio) / kPi;
}

// Contribution of the nonnegative-form region to the realness probability;
// together with the mass 1 - 1/sqrt(2) of the negative region this sums to
// the total 1/sqrt(2).
inline double real2_mean_kappa_positive_part() { return kSqrt2 - 1.0; }

// ---- Monte Carlo estimator of the off-axis crossing plane density ----------

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

namespace detail {

// One importance-sampling draw of the one-crossing law at (x, y), y != 0.
//
// Derivation sketch: crossings are the lambda with Q(u + lambda w) = 0, where
// u, w are the traceless symmetric-basis vectors of the pair (components iid
// N(0, 1/2)) and Q is the signature-(2,1) form. Rotations of the two positive
// directions reduce w to (r, b, 0) with r the radial part (chi-weighted law)
// and b the negative-direction component. Splitting u = s - x w over the
// Q-orthogonal plane of w and solving |Im lambda| = y leaves one Gaussian
// line integral over that plane, sampled here as tau. All proposal factors
// cancel into a bounded weight, so the estimator variance is finite.
inline double plane_density_sample(double x, double y, Rng& rng) {
  const double r = std::sqrt(-std::log(rng.uniform()));
  const double b = rng.normal() / kSqrt2;
  const double q = r * r - b * b;
  if (q <= 0.0) return 0.0;  // crossings of such pairs are never complex
  const double tau = x * b / r + rng.normal() / (2.0 * r);
  return std::abs(y) * q * std::sqrt(q) * std::exp(-q * (x * x + y * y)) /
         (kSqrt2 * kPi * r * std::sqrt(y * y + tau * tau));
}

}  // namespace detail

// Plane density of a uniformly chosen crossing of the 2x2 real Ginibre
// pencil at y != 0, by Monte Carlo. Even in y; integrates to 1 - 1/sqrt(2)
// over the plane, the complement of the real-axis mass. The upper-crossing
// intensity is twice this.
inline McEstimate real2_plane_density_mc(double x, double y, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = detail::plane_density_sample(x, y, rng);
    sum += v;
    sum2 += v * v;
  }
  McEstimate e;
  e.value = sum / double(n);
  const double var = std::max(0.0, sum2 / double(n) - e.value * e.value);
  e.std_error = std::sqrt(var / double(n));
  return e;
}

// Total off-axis mass by Monte Carlo: (x, y) is drawn from the sphere-uniform
// plane law as the proposal and the density sample is importance-weighted.
inline McEstimate real2_offaxis_mass_mc(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double rad = std::sqrt(u / (1.0 - u));  // radial CDF r^2/(1+r^2)
    const double ang = kTwoPi * rng.uniform();
    const double x = rad * std::cos(ang), y = rad * std::sin(ang);
    const double q = sphere_uniform_plane_density(cplx(x, y));
    const double v = detail::plane_density_sample(x, y, rng) / q;
    sum += v;
    sum2 += v * v;
  }
  McEstimate e;
  e.value = sum / double(n);
  const double var = std::max(0.0, sum2 / double(n) - e.value * e.value);
  e.std_error = std::sqrt(var / double(n));
  return e;
}

// ---- numeric CDF for densities without elementary antiderivatives ----------

// Cumulative of a density tabulated on a compactified grid w = x / (1 + |x|),
// trapezoid-integrated and normalized; evaluation is monotone linear
// interpolation. Adequate when the downstream tolerance is well above the
// grid resolution.
class TabulatedCdf {
 public:
  explicit TabulatedCdf(const std::function<double(double)>& density, int knots = 16385,
                        double w_margin = 1e-6) {
    if (knots < 3) throw std::invalid_argument("TabulatedCdf: too few knots");
    w_.resize(static_cast<std::size_t>(knots));
    cum_.resize(static_cast<std::size_t>(knots));
    const double lo = -1.0 + w_margin, hi = 1.0 - w_margin;
    std::vector<double> f(static_cast<std::size_t>(knots));
    for (int i = 0; i < knots; ++i) {
      const double w = lo + (hi - lo) * i / (knots - 1);
      const double x = w / (1.0 - std::abs(w));
      const double jac = 1.0 / ((1.0 - std::abs(w)) * (1.0 - std::abs(w)));
      w_[static_cast<std::size_t>(i)] = w;
      f[static_cast<std::size_t>(i)] = density(x) * jac;
    }
    cum_[0] = 0.0;
    for (int i = 1; i < knots; ++i)
      cum_[static_cast<std::size_t>(i)] =
          cum_[static_cast<std::size_t>(i - 1)] +
          0.5 * (f[static_cast<std::size_t>(i)] + f[static_cast<std::size_t>(i - 1)]) *
              (w_[static_cast<std::size_t>(i)] - w_[static_cast<std::size_t>(i - 1)]);
    const double total = cum_.back();
    if (!(total > 0.0)) throw std::invalid_argument("TabulatedCdf: density has no mass");
    for (auto& c : cum_) c /= total;
  }

  double operator()(double x) const {
    const double w = x / (1.0 + std::abs(x));
    if (w <= w_.front()) return 0.0;
    if (w >= w_.back()) return 1.0;
    const auto it = std::upper_bound(w_.begin(), w_.end(), w);
    const std::size_t i = static_cast<std::size_t>(it - w_.begin());
    const double t = (w - w_[i - 1]) / (w_[i] - w_[i - 1]);
    return cum_[i - 1] + t * (cum_[i] - cum_[i - 1]);
  }

 private:
  std::vector<double> w_;
  std::vector<double> cum_;
};

}  // namespace lcross::theory
