#pragma once

// Dense complex polynomials in one variable, plus the solver stack used by the
// pencil pipeline: characteristic polynomials via the Faddeev-LeVerrier
// recurrence, simultaneous root finding via the Aberth-Ehrlich iteration, and
// least-squares Vandermonde fitting.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace lcross {

using cplx = std::complex<double>;

// Coefficients ascending: coeffs[k] multiplies x^k. Canonical form keeps the
// leading coefficient nonzero; the zero polynomial is the empty list.
struct ComplexPolynomial {
  std::vector<cplx> coeffs;

  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<cplx> c) : coeffs(std::move(c)) { trim(); }

  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == cplx(0.0, 0.0)) coeffs.pop_back();
  }

  cplx evaluate(cplx x) const {
    cplx acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }

  ComplexPolynomial derivative() const {
    if (coeffs.size() <= 1) return ComplexPolynomial{};
    std::vector<cplx> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
    return ComplexPolynomial(std::move(d));
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }
};

// prod (x - r_i), expanded. Exact convolution; used by tests and initializers.
inline ComplexPolynomial polynomial_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{cplx(1.0, 0.0)};
  for (const cplx& r : roots) {
    c.push_back(cplx(0.0, 0.0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return ComplexPolynomial(std::move(c));
}

// Fujiwara bound: every root of a_n x^n + ... + a_0 has modulus at most
// 2 * max_k |a_{n-k}/a_n|^{1/k}, with the k = n term halved inside the power.
inline double fujiwara_bound(const ComplexPolynomial& p) {
  const int n = p.degree();
  if (n < 1) return 0.0;
  const double lead = std::abs(p.coeffs[static_cast<std::size_t>(n)]);
  double best = 0.0;
  for (int k = 1; k <= n; ++k) {
    double ratio = std::abs(p.coeffs[static_cast<std::size_t>(n - k)]) / lead;
    if (k == n) ratio *= 0.5;
    if (ratio > 0.0) best = std::max(best, std::pow(ratio, 1.0 / k));
  }
  return 2.0 * best;
}

// det(M + t I) as a monic polynomial in t, by the Faddeev-LeVerrier recurrence
// applied to -M (n matrix products; no balancing needed at these sizes).
inline ComplexPolynomial characteristic_polynomial(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_polynomial: square matrix required");
  if (n > 16) throw std::invalid_argument("characteristic_polynomial: n must be <= 16");
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = cplx(1.0, 0.0);
  if (n == 0) return ComplexPolynomial(std::move(c));
  const Eigen::MatrixXcd neg = -m;
  Eigen::MatrixXcd mk = neg;
  for (int k = 1; k <= n; ++k) {
    const cplx ck = -mk.trace() / double(k);
    c[static_cast<std::size_t>(n - k)] = ck;
    if (k < n) mk = neg * (mk + ck * Eigen::MatrixXcd::Identity(n, n));
  }
  return ComplexPolynomial(std::move(c));
}

// All roots of p via Aberth-Ehrlich. The polynomial is normalized to monic
// and balanced to the substitution w = z / R at the Fujiwara radius R, which
// bounds every scaled coefficient by 2^-k; the iteration therefore never sees
// a badly graded coefficient list no matter how the input is scaled. Initial
// points sit on the unit-order circle at rotated roots of unity.
// A point where |p| sits at the evaluation round-off floor counts as
// converged even if its update has not contracted to tol: near a multiple
// root the updates stall around sqrt(eps), and no better position exists in
// double precision anyway. Fails with convergence_error (carrying the
// partial set) after max_iterations rounds otherwise.
inline std::vector<cplx> roots(const ComplexPolynomial& p, double tol = 1e-13,
                               int max_iterations = 200) {
  const int deg = p.degree();
  if (deg < 0) throw std::invalid_argument("roots: zero polynomial");
  if (deg == 0) return {};

  std::vector<cplx> a(p.coeffs.size());
  const cplx lead_inv = cplx(1.0, 0.0) / p.coeffs.back();
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = p.coeffs[k] * lead_inv;
  a.back() = cplx(1.0, 0.0);

  const double root_scale = std::max(fujiwara_bound(ComplexPolynomial{std::vector<cplx>(a)}), 1e-12);
  // balance each coefficient by repeated division so intermediates never
  // overflow or underflow past the final value
  for (int k = 0; k < deg; ++k) {
    cplx b = a[static_cast<std::size_t>(k)];
    for (int j = 0; j < deg - k; ++j) b /= root_scale;
    a[static_cast<std::size_t>(k)] = b;
  }
  ComplexPolynomial monic(std::move(a));
  monic.coeffs.resize(static_cast<std::size_t>(deg) + 1);  // keep degree if trim dropped zeros
  monic.coeffs.back() = cplx(1.0, 0.0);
  const ComplexPolynomial dmonic = monic.derivative();

  std::vector<double> abs_coeffs(monic.coeffs.size());
  for (std::size_t k = 0; k < abs_coeffs.size(); ++k) abs_coeffs[k] = std::abs(monic.coeffs[k]);
  const double floor_factor = 4.0 * deg * std::numeric_limits<double>::epsilon();
  const auto value_floor = [&](double az) {
    double b = 0.0;
    for (std::size_t k = abs_coeffs.size(); k-- > 0;) b = b * az + abs_coeffs[k];
    return floor_factor * b;
  };

  const double radius = std::max(fujiwara_bound(monic), 1e-12);
  std::vector<cplx> z(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) {
    // offset angle breaks the conjugation symmetry of real-coefficient input
    const double ang = 6.283185307179586 * (i + 0.376) / deg;
    z[static_cast<std::size_t>(i)] = radius * cplx(std::cos(ang), std::sin(ang));
  }

  for (int it = 0; it < max_iterations; ++it) {
    double max_update = 0.0;
    for (int i = 0; i < deg; ++i) {
      const cplx zi = z[static_cast<std::size_t>(i)];
      const cplx pv = monic.evaluate(zi);
      if (std::abs(pv) <= value_floor(std::abs(zi))) continue;  // at the round-off floor
      const cplx dv = dmonic.evaluate(zi);
      if (dv == cplx(0.0, 0.0)) {
        // stationary point: nudge off it deterministically
        z[static_cast<std::size_t>(i)] = zi + 1e-6 * (std::abs(zi) + 1.0) * cplx(0.7, 0.7);
        max_update = std::max(max_update, 1.0);
        continue;
      }
      const cplx newton = pv / dv;
      cplx sum(0.0, 0.0);
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        const cplx d = zi - z[static_cast<std::size_t>(j)];
        if (d == cplx(0.0, 0.0)) continue;
        sum += cplx(1.0, 0.0) / d;
      }
      const cplx denom = cplx(1.0, 0.0) - newton * sum;
      const cplx w = (denom == cplx(0.0, 0.0)) ? newton : newton / denom;
      z[static_cast<std::size_t>(i)] = zi - w;
      max_update = std::max(max_update, std::abs(w) / (1.0 + std::abs(zi)));
    }
    if (max_update < tol) {
      // final Newton polish, one pass, then undo the balancing
      for (auto& r : z) {
        const cplx dv = dmonic.evaluate(r);
        if (dv != cplx(0.0, 0.0)) {
          const cplx step = monic.evaluate(r) / dv;
          if (std::abs(step) < 0.1 * (1.0 + std::abs(r))) r -= step;
        }
        r *= root_scale;
      }
      return z;
    }
  }
  for (auto& r : z) r *= root_scale;
  throw convergence_error("roots: Aberth-Ehrlich did not converge", z);
}

// Groups roots lying within cluster_radius of each other (transitively).
// Returns the list of cluster sizes aligned with a representative per cluster.
struct RootCluster {
  cplx center;
  int multiplicity;
};

inline std::vector<RootCluster> cluster_roots(const std::vector<cplx>& r, double cluster_radius) {
  std::vector<RootCluster> out;
  std::vector<char> used(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (used[i]) continue;
    // grow the cluster transitively
    std::vector<std::size_t> members{i};
    used[i] = 1;
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(r[members[m]] - r[j]) <= cluster_radius) {
          used[j] = 1;
          members.push_back(j);
        }
      }
    }
    cplx c(0.0, 0.0);
    for (std::size_t m : members) c += r[m];
    out.push_back({c / double(members.size()), static_cast<int>(members.size())});
  }
  return out;
}

// Eigenvalues of a square complex matrix: characteristic polynomial, then
// Aberth-Ehrlich, then one Newton step on log det(M - mu I) via LU. For
// Hermitian input the imaginary parts land below 1e-9 * (1 + ||M||).
inline std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  const ComplexPolynomial chi = characteristic_polynomial(m);
  for (const cplx& c : chi.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ill_conditioned_error("eigenvalues: characteristic polynomial overflowed",
                                  m.cwiseAbs().maxCoeff());
  // chi(t) = det(M + tI), so eigenvalues are the negated roots.
  std::vector<cplx> r = roots(chi);
  for (auto& x : r) x = -x;
  if (n >= 2) {
    Eigen::MatrixXcd shifted(n, n);
    for (auto& mu : r) {
      shifted = m - mu * Eigen::MatrixXcd::Identity(n, n);
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
      const cplx tr_inv = lu.inverse().trace();
      if (tr_inv != cplx(0.0, 0.0)) {
        const cplx step = cplx(1.0, 0.0) / tr_inv;
        if (std::isfinite(step.real()) && std::isfinite(step.imag()) &&
            std::abs(step) < 0.1 * (1.0 + std::abs(mu)))
          mu += step;
      }
    }
  }
  return r;
}

struct FitResult {
  ComplexPolynomial poly;
  double residual = 0.0;  // max |poly(x_k) - y_k| over the nodes
};

// Least-squares polynomial of degree <= max_degree through (points, values).
// Needs at least max_degree + 1 distinct points; circle nodes give a
// well-conditioned system. Columns are scaled by the node radius so large
// degrees stay balanced.
inline FitResult interpolate(const std::vector<cplx>& points, const std::vector<cplx>& values,
                             int max_degree) {
  if (points.size() != values.size())
    throw std::invalid_argument("interpolate: points/values size mismatch");
  if (max_degree < 0) throw std::invalid_argument("interpolate: negative degree");
  const std::size_t m = points.size();
  const std::size_t cols = static_cast<std::size_t>(max_degree) + 1;
  if (m < cols) throw std::invalid_argument("interpolate: need at least max_degree + 1 points");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (points[i] == points[j]) throw std::invalid_argument("interpolate: duplicate points");

  double scale = 0.0;
  for (const cplx& p : points) scale = std::max(scale, std::abs(p));
  if (scale == 0.0) scale = 1.0;

  Eigen::MatrixXcd v(m, cols);
  Eigen::VectorXcd y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const cplx w = points[i] / scale;
    cplx pw(1.0, 0.0);
    for (std::size_t j = 0; j < cols; ++j) {
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pw;
      pw *= w;
    }
    y(static_cast<Eigen::Index>(i)) = values[i];
  }
  Eigen::VectorXcd sol = v.householderQr().solve(y);

  std::vector<cplx> coeffs(cols);
  double s = 1.0;
  for (std::size_t j = 0; j < cols; ++j) {
    coeffs[j] = sol(static_cast<Eigen::Index>(j)) / s;
    s *= scale;
  }
  ComplexPolynomial poly{coeffs};  // deliberately un-trimmed until residual is known
  double resid = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    resid = std::max(resid, std::abs(poly.evaluate(points[i]) - values[i]));
  poly.trim();
  return {std::move(poly), resid};
}

}  // namespace lcross
