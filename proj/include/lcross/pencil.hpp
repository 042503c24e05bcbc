#pragma once

// Level crossings of a matrix pencil A + lambda B: the parameter values where
// the spectrum degenerates. They are the roots of the discriminant (in t) of
// det(A + lambda B + t I), a polynomial of degree n(n-1) in lambda, recovered
// here by evaluation at circle nodes and least-squares interpolation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ensemble.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "polynomial.hpp"

namespace lcross {

struct PencilConfig {
  double degree_drop_tol = 1e-11;  // a coefficient whose term stays below this fraction of
                                   // max |D(node)| on the sampling circle is treated as absent
  double residual_gate = 1e-6;     // interpolation residual gate, rel. to max node value
  double cluster_tol = 1e-6;       // coincidence gate for roots, rel. to 1 + |lambda|
  double tau_real = 1e-9;          // |Im| <= tau_real * (1 + |lambda|) counts as real
};

struct DiscriminantQuality {
  double node_radius = 1.0;
  double fit_residual = 0.0;             // relative to max |D(node)|
  double symmetrization_residual = 0.0;  // imaginary mass dropped for real-structured pairs
  double max_node_value = 0.0;           // max |D(node)| itself, the natural scale
};

struct CrossingPoint {
  ProjectivePoint point;
  bool is_real = false;
  std::optional<std::size_t> conj_partner;  // index of the conjugate crossing, if paired

  cplx affine() const { return point.affine(); }
};

struct CrossingSet {
  std::vector<CrossingPoint> points;  // affine crossings; conjugate pairs are exact
  int at_infinity_multiplicity = 0;
  ComplexPolynomial discriminant;
  bool degenerate = false;
  DiscriminantQuality quality;

  // n(n-1) unless degenerate
  int total_count() const {
    return static_cast<int>(points.size()) + at_infinity_multiplicity;
  }
};

namespace detail {

// Product of squared eigenvalue differences of A + lambda B.
inline cplx discriminant_value(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cplx lambda) {
  const std::vector<cplx> mu = eigenvalues(a + lambda * b);
  cplx prod(1.0, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      const cplx d = mu[i] - mu[j];
      prod *= d * d;
    }
  return prod;
}

inline double log_abs_discriminant(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                   cplx lambda) {
  const std::vector<cplx> mu = eigenvalues(a + lambda * b);
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) acc += 2.0 * std::log(std::abs(mu[i] - mu[j]));
  return acc;
}

// Complex logarithm of the same product.  The plain value overflows the double
// range once |lambda| reaches a few hundred (ninety factors each of size
// ~|lambda|), but Newton only ever needs value ratios, and those follow from
// log differences at any radius.  The imaginary part is defined modulo 2 pi,
// which cancels in exp(log f1 - log f0).
inline cplx discriminant_log(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cplx lambda) {
  const std::vector<cplx> mu = eigenvalues(a + lambda * b);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) {
      const cplx d = mu[i] - mu[j];
      if (d == cplx(0.0, 0.0))
        return cplx(-std::numeric_limits<double>::infinity(), 0.0);
      acc += 2.0 * std::log(d);
    }
  return acc;
}

}  // namespace detail

// Discriminant of det(A + lambda B + t I) with respect to t, as a polynomial
// in lambda of degree n(n-1) (less if crossings sit at infinity; the trailing
// near-zero coefficients are kept and thresholded by the caller).
//
// Node radius: the geometric mean of the root magnitudes, (|D(0)/D_lead|)^(1/deg),
// estimated from two log-magnitude evaluations and clamped to [1/4, 4]; circle
// nodes at that radius give a balanced Vandermonde system. A positive
// forced_radius overrides the estimate, which lets the caller sample the same
// discriminant on several circles.
inline ComplexPolynomial discriminant_in_lambda(const MatrixPair& pair,
                                                DiscriminantQuality* quality = nullptr,
                                                const PencilConfig& cfg = {},
                                                double forced_radius = 0.0) {
  const int n = static_cast<int>(pair.a.rows());
  if (pair.a.rows() != pair.a.cols() || pair.b.rows() != pair.b.cols() ||
      pair.a.rows() != pair.b.rows())
    throw std::invalid_argument("discriminant_in_lambda: square pair of equal sizes required");
  const int deg = n * (n - 1);
  if (deg == 0) {
    if (quality) *quality = {};
    return ComplexPolynomial({cplx(1.0, 0.0)});
  }

  double radius = 1.0;
  if (forced_radius > 0.0) {
    radius = forced_radius;
  } else {
    const double log_d0 = detail::log_abs_discriminant(pair.a, pair.b, cplx(0.0, 0.0));
    const double r0 = 8.0;
    const double log_dr =
        detail::log_abs_discriminant(pair.a, pair.b, r0 * cplx(std::cos(0.37), std::sin(0.37)));
    const double log_lead = log_dr - deg * std::log(r0);
    const double est = std::exp((log_d0 - log_lead) / deg);
    if (std::isfinite(est)) radius = std::clamp(est, 0.25, 4.0);
  }

  const int m = 2 * deg + 1;
  std::vector<cplx> values(static_cast<std::size_t>(m));
  double max_val = 0.0;
  for (int k = 0; k < m; ++k) {
    const double ang = kTwoPi * k / m;
    const cplx node = radius * cplx(std::cos(ang), std::sin(ang));
    values[static_cast<std::size_t>(k)] = detail::discriminant_value(pair.a, pair.b, node);
    const double av = std::abs(values[static_cast<std::size_t>(k)]);
    if (!std::isfinite(av))
      throw ill_conditioned_error("discriminant_in_lambda: non-finite node value", av);
    max_val = std::max(max_val, av);
  }

  // Uniform circle nodes make the normal equations diagonal: the least-squares
  // coefficients are inverse-DFT sums, scaled back by radius^j.
  std::vector<cplx> coeffs(static_cast<std::size_t>(deg) + 1);
  for (int j = 0; j <= deg; ++j) {
    cplx acc(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
      const double ang = -kTwoPi * j * k / m;
      acc += values[static_cast<std::size_t>(k)] * cplx(std::cos(ang), std::sin(ang));
    }
    coeffs[static_cast<std::size_t>(j)] = acc / (double(m) * std::pow(radius, j));
  }

  double sym_residual = 0.0;
  if (pair.spec.real_structured()) {
    double imag2 = 0.0, total2 = 0.0;
    for (auto& c : coeffs) {
      imag2 += c.imag() * c.imag();
      total2 += std::norm(c);
    }
    sym_residual = total2 > 0.0 ? std::sqrt(imag2 / total2) : 0.0;
    for (auto& c : coeffs) c = cplx(c.real(), 0.0);
  }

  ComplexPolynomial poly{coeffs};  // keep trailing coefficients; thresholding is the caller's
  double residual = 0.0;
  for (int k = 0; k < m; ++k) {
    const double ang = kTwoPi * k / m;
    const cplx node = radius * cplx(std::cos(ang), std::sin(ang));
    residual = std::max(residual,
                        std::abs(poly.evaluate(node) - values[static_cast<std::size_t>(k)]));
  }
  const double rel_residual = max_val > 0.0 ? residual / max_val : 0.0;
  if (rel_residual > cfg.residual_gate)
    throw ill_conditioned_error("discriminant_in_lambda: interpolation residual beyond gate",
                                rel_residual);
  if (quality) *quality = {radius, rel_residual, sym_residual, max_val};
  return poly;
}

namespace detail {

// Conjugation pairing for roots of a real-coefficient polynomial: repeatedly
// take the unpaired root of largest |Im|; if the root nearest to its conjugate
// is itself, it is real, otherwise the two form an exact conjugate pair.
struct PairedRoots {
  std::vector<cplx> values;
  std::vector<bool> real_flag;
  std::vector<std::optional<std::size_t>> partner;
  bool ambiguous = false;
};

inline PairedRoots pair_conjugates(std::vector<cplx> roots, double tau_real) {
  PairedRoots out;
  const std::size_t n = roots.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(roots[i].imag()) > std::abs(roots[j].imag());
  });
  std::vector<char> used(n, 0);
  out.values.resize(n);
  out.real_flag.assign(n, false);
  out.partner.assign(n, std::nullopt);
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    if (used[i]) continue;
    const cplx target = std::conj(roots[i]);
    std::size_t best = i;
    double best_d = std::abs(target - roots[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || j == i) continue;
      const double d = std::abs(target - roots[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == i) {
      used[i] = 1;
      const cplx r(roots[i].real(), 0.0);
      if (std::abs(roots[i].imag()) > tau_real * (1.0 + std::abs(roots[i])))
        out.ambiguous = true;  // self-paired but visibly off the axis
      out.values[i] = r;
      out.real_flag[i] = true;
    } else {
      used[i] = 1;
      used[best] = 1;
      const cplx mid = 0.5 * (roots[i] + std::conj(roots[best]));
      out.values[i] = mid;
      out.values[best] = std::conj(mid);
      out.partner[i] = best;
      out.partner[best] = i;
    }
  }
  return out;
}

// Finite-difference Newton refinement against direct discriminant evaluations.
// The interpolated polynomial only has to land each root in its basin; the
// final position is then set by the exact evaluator, not by the fit, whose
// coefficient noise floor grows with the degree.  Working from log values
// keeps the step well defined even where the discriminant itself overflows
// (a crossing pushed to |lambda| ~ 1e3 by a near-degenerate B already does).
// The budget allows for the linear phase a tight root cluster forces on
// Newton before the quadratic phase kicks in.  Returns false when the
// iteration fails to contract.
inline bool polish_root(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, cplx& lambda) {
  for (int it = 0; it < 40; ++it) {
    const double scale = 1.0 + std::abs(lambda);
    const cplx l0 = discriminant_log(a, b, lambda);
    if (l0.real() == -std::numeric_limits<double>::infinity()) return true;  // exactly on a root
    const cplx h(1e-7 * scale, 0.0);
    const cplx l1 = discriminant_log(a, b, lambda + h);
    if (l1.real() == -std::numeric_limits<double>::infinity()) {
      lambda += h;
      return true;
    }
    const cplx ratio = std::exp(l1 - l0);  // f(lambda+h) / f(lambda)
    // the ratio only overflows when f0 is smaller by ~e^700, i.e. on a root
    if (!(std::isfinite(ratio.real()) && std::isfinite(ratio.imag()))) return true;
    if (ratio == cplx(1.0, 0.0)) return false;  // no slope information
    const cplx step = h / (ratio - 1.0);  // = f0 / ((f1 - f0) / h)
    if (!(std::isfinite(step.real()) && std::isfinite(step.imag()))) return false;
    if (std::abs(step) > 0.5 * scale) return false;  // left the basin
    lambda -= step;
    if (std::abs(step) <= 1e-11 * scale) return true;
  }
  return false;
}

// Maehly variant: Newton on the discriminant deflated by the roots already
// accepted, without forming the quotient explicitly.  Iterates are repelled
// from found roots, so a start near a tight cluster walks member to member
// instead of rediscovering the same one; and once most roots are known the
// deflated function is low-degree, so even a distant start converges fast.
inline bool polish_root_deflated(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                                 const std::vector<cplx>& found, cplx& lambda) {
  for (int it = 0; it < 60; ++it) {
    const double scale = 1.0 + std::abs(lambda);
    const cplx l0 = discriminant_log(a, b, lambda);
    if (l0.real() == -std::numeric_limits<double>::infinity()) return true;
    const cplx h(1e-7 * scale, 0.0);
    const cplx l1 = discriminant_log(a, b, lambda + h);
    if (l1.real() == -std::numeric_limits<double>::infinity()) {
      lambda += h;
      return true;
    }
    cplx repulsion(0.0, 0.0);
    for (const cplx& r : found) {
      const cplx diff = lambda - r;
      if (diff != cplx(0.0, 0.0)) repulsion += 1.0 / diff;
    }
    const cplx ratio = std::exp(l1 - l0);
    if (!(std::isfinite(ratio.real()) && std::isfinite(ratio.imag()))) return true;
    const cplx denom = (ratio - 1.0) / h - repulsion;  // = f'/f - sum 1/(lambda - r)
    if (denom == cplx(0.0, 0.0)) return false;
    cplx step = 1.0 / denom;
    if (!(std::isfinite(step.real()) && std::isfinite(step.imag()))) return false;
    // long hops are legitimate here: with most roots deflated the step spans
    // the full distance to a remaining root, so damp instead of aborting
    if (std::abs(step) > 0.5 * scale) step *= 0.5 * scale / std::abs(step);
    lambda -= step;
    if (std::abs(step) <= 1e-11 * scale) return true;
  }
  return false;
}

}  // namespace detail

// All level crossings of the pair, with exact conjugate symmetry for
// real-structured ensembles and the degree drop counted at infinity.
inline CrossingSet level_crossings(const MatrixPair& pair, const PencilConfig& cfg = {}) {
  const int n = static_cast<int>(pair.a.rows());
  const int full_degree = n * (n - 1);
  CrossingSet out;
  out.discriminant = discriminant_in_lambda(pair, &out.quality, cfg);

  // Visible coefficient window of a fit: the indices whose terms rise above
  // the noise floor on that fit's own circle.  Comparing raw coefficients
  // against max |c_k| would misfire at high degree, where the middle
  // coefficients dwarf the extreme ones by the usual binomial growth; the
  // on-circle contribution is the scale the interpolation actually controls.
  struct CircleFit {
    double radius = 1.0;
    ComplexPolynomial poly;
    DiscriminantQuality quality;
    int k_low = -1, k_high = -1;
  };
  const auto find_window = [&cfg](CircleFit& f) {
    f.k_low = f.k_high = -1;
    for (int k = 0; k <= f.poly.degree(); ++k) {
      const double contribution =
          std::abs(f.poly.coeffs[static_cast<std::size_t>(k)]) * std::pow(f.radius, k);
      if (contribution > cfg.degree_drop_tol * f.quality.max_node_value) {
        if (f.k_low < 0) f.k_low = k;
        f.k_high = k;
      }
    }
  };

  CircleFit base{out.quality.node_radius, out.discriminant, out.quality, -1, -1};
  find_window(base);
  if (base.k_high < 0) {
    out.degenerate = true;  // identically negligible discriminant
    return out;
  }

  std::vector<cplx> rts;
  if (base.k_high <= 5 && base.k_low == 0) {
    // compact path: the whole structure is visible on one circle at low degree
    out.at_infinity_multiplicity = full_degree - base.k_high;
    if (base.k_high == 0) return out;
    ComplexPolynomial trimmed;
    trimmed.coeffs.assign(out.discriminant.coeffs.begin(),
                          out.discriminant.coeffs.begin() + base.k_high + 1);
    try {
      rts = roots(trimmed);
    } catch (const convergence_error&) {
      out.degenerate = true;
      return out;
    }
    for (const auto& cl : cluster_roots(rts, cfg.cluster_tol * base.radius))
      if (cl.multiplicity > 1) out.degenerate = true;
  } else {
    // One circle cannot hold the whole coefficient range once the root radii
    // span several decades: terms of the far-out roots sit below the fit's
    // noise floor at the inner radius and vice versa.  Sample the same
    // discriminant on a ladder of circles instead.  Each circle contributes
    // root candidates from its own visible window; the outermost circle,
    // where the leading coefficient dominates, decides the effective degree.
    std::vector<CircleFit> fits{base};
    const double r1 = base.radius;
    const double out_limit = (full_degree > 42 ? 16.0 : 64.0) * r1;  // keeps |D| finite
    while (fits.back().radius < out_limit) {
      const CircleFit& f = fits.back();
      double top = 0.0;
      if (f.poly.degree() == full_degree)
        top = std::abs(f.poly.coeffs.back()) * std::pow(f.radius, full_degree);
      if (top > 1e-3 * f.quality.max_node_value) break;  // leading term comfortably visible
      CircleFit next;
      next.radius = f.radius * std::numbers::sqrt2;
      next.poly = discriminant_in_lambda(pair, &next.quality, cfg, next.radius);
      find_window(next);
      fits.push_back(std::move(next));
    }
    while (fits.front().k_low != 0 && fits.front().radius > r1 / 64.0) {
      CircleFit next;
      next.radius = fits.front().radius / std::numbers::sqrt2;
      next.poly = discriminant_in_lambda(pair, &next.quality, cfg, next.radius);
      find_window(next);
      fits.insert(fits.begin(), std::move(next));
    }
    if (fits.front().k_low != 0) {
      out.degenerate = true;  // unresolved root mass at the origin
      return out;
    }
    const int eff_degree = fits.back().k_high;
    if (eff_degree < 0) {
      out.degenerate = true;
      return out;
    }
    out.at_infinity_multiplicity = full_degree - eff_degree;
    if (eff_degree == 0) return out;

    std::vector<cplx> candidates;
    for (std::size_t fi = 0; fi < fits.size(); ++fi) {
      const auto& f = fits[fi];
      if (f.k_high <= f.k_low || f.k_low < 0) continue;
      // quotient over the window: dividing by lambda^k_low only discards the
      // roots this circle cannot see anyway; solve in w = lambda / radius
      std::vector<cplx> scaled(static_cast<std::size_t>(f.k_high - f.k_low) + 1);
      double rk = 1.0;
      for (int k = f.k_low; k <= f.k_high; ++k) {
        scaled[static_cast<std::size_t>(k - f.k_low)] =
            f.poly.coeffs[static_cast<std::size_t>(k)] * rk;
        rk *= f.radius;
      }
      const cplx lead = scaled.back();
      for (auto& c : scaled) c /= lead;
      // trust band: the window quotient tracks the discriminant only near its
      // own circle; moving off it, the dropped terms gain on the local value by
      // a power of the radial offset per index of gap.  Inward is the fragile
      // direction (the missing low-order terms barely decay while the local
      // value plunges), so the band must stay well inside a factor of 2.  A
      // band of 1.25 each way still overlaps the sqrt(2) ladder spacing.
      const double lo = fi == 0 ? 0.0 : f.radius / 1.25;
      const double hi =
          fi + 1 == fits.size() ? std::numeric_limits<double>::infinity() : f.radius * 1.25;
      try {
        const auto ws = roots(ComplexPolynomial{std::move(scaled)}, 1e-13, 400);
        for (const cplx& w : ws) {
          const cplx lambda = w * f.radius;
          if (std::abs(lambda) >= lo && std::abs(lambda) <= hi) candidates.push_back(lambda);
        }
      } catch (const convergence_error&) {
        // this circle contributes nothing; the count check below arbitrates
      }
    }

    // Polish every candidate against exact discriminant values, drop the ones
    // that fail to contract, merge coincident survivors.  Requiring the final
    // count to match the effective degree is what makes the ladder honest:
    // any lost or doubled root shows up as a mismatch.
    const auto accept = [&](cplx lambda) {
      for (const cplx& f : rts)
        if (std::abs(lambda - f) <=
            cfg.cluster_tol * (1.0 + std::max(std::abs(lambda), std::abs(f))))
          return;
      rts.push_back(lambda);
    };
    for (cplx lambda : candidates) {
      if (detail::polish_root(pair.a, pair.b, lambda)) accept(lambda);
    }
    // Tight clusters defeat independent polishing: the quotient scatters its
    // candidates around the cluster and plain Newton funnels them all into the
    // same member.  Re-running the leftovers deflated against the accepted set
    // walks the remaining members instead.
    for (int sweep = 0; sweep < 2 && static_cast<int>(rts.size()) < eff_degree; ++sweep) {
      for (cplx lambda : candidates) {
        if (static_cast<int>(rts.size()) >= eff_degree) break;
        if (detail::polish_root_deflated(pair.a, pair.b, rts, lambda)) accept(lambda);
      }
    }
    if (static_cast<int>(rts.size()) != eff_degree) {
      out.degenerate = true;
      return out;
    }
  }

  out.points.reserve(rts.size());
  if (pair.spec.real_structured()) {
    const auto paired = detail::pair_conjugates(std::move(rts), cfg.tau_real);
    if (paired.ambiguous) out.degenerate = true;
    for (std::size_t i = 0; i < paired.values.size(); ++i) {
      CrossingPoint cp;
      cp.point = ProjectivePoint::from_affine(paired.values[i]);
      cp.is_real = paired.real_flag[i];
      cp.conj_partner = paired.partner[i];
      out.points.push_back(cp);
    }
  } else {
    for (const cplx& r : rts) {
      CrossingPoint cp;
      cp.point = ProjectivePoint::from_affine(r);
      cp.is_real = std::abs(r.imag()) <= cfg.tau_real * (1.0 + std::abs(r));
      out.points.push_back(cp);
    }
  }
  return out;
}

struct RealComplexCount {
  int real_count = 0;
  int complex_pair_count = 0;
  int at_infinity = 0;
};

inline RealComplexCount classify_real(const CrossingSet& s) {
  RealComplexCount c;
  c.at_infinity = s.at_infinity_multiplicity;
  for (const auto& p : s.points) {
    if (p.is_real)
      ++c.real_count;
  }
  c.complex_pair_count = (static_cast<int>(s.points.size()) - c.real_count) / 2;
  return c;
}

// ---- closed forms for 2x2 Hermitian (incl. real symmetric) pairs ----------

// Upper-half crossing for A = diag(0, delta) in the eigenbasis of A, given the
// entries of B in that basis; the second crossing is the conjugate.
inline cplx crossing_from_gap(double delta, double b11, double b22, cplx b12) {
  const double den = (b22 - b11) * (b22 - b11) + 4.0 * std::norm(b12);
  return delta * cplx(b11 - b22, 2.0 * std::abs(b12)) / den;
}

// Both crossings of a 2x2 Hermitian pair, by explicit diagonalization of A
// (phase rotation to make the off-diagonal real, then a Jacobi rotation).
// Independent of the interpolation pipeline; used as its cross-check.
inline std::pair<cplx, cplx> crossings_hermitian2_closed_form(const MatrixPair& pair) {
  if (pair.a.rows() != 2 || pair.a.cols() != 2)
    throw std::invalid_argument("crossings_hermitian2_closed_form: 2x2 pair required");
  const cplx w = pair.a(0, 1);
  Eigen::Matrix2cd v = Eigen::Matrix2cd::Identity();
  if (w != cplx(0.0, 0.0)) v(1, 1) = std::abs(w) / w;  // e^{-i arg w}
  Eigen::Matrix2cd a1 = v.adjoint() * pair.a * v;      // real off-diagonal now
  const double p = a1(0, 0).real(), q = a1(1, 1).real(), r = a1(0, 1).real();
  const double theta = 0.5 * std::atan2(2.0 * r, p - q);
  Eigen::Matrix2cd g;
  const double c = std::cos(theta), s = std::sin(theta);
  g << c, -s, s, c;
  Eigen::Matrix2cd u = v * g;
  Eigen::Matrix2cd ad = u.adjoint() * pair.a * u;
  double a_lo = ad(0, 0).real(), a_hi = ad(1, 1).real();
  if (a_lo > a_hi) {  // order the eigenbasis so the gap is nonnegative
    Eigen::Matrix2cd swap;
    swap << 0, 1, 1, 0;
    u = u * swap;
    ad = u.adjoint() * pair.a * u;
    a_lo = ad(0, 0).real();
    a_hi = ad(1, 1).real();
  }
  const Eigen::Matrix2cd bd = u.adjoint() * pair.b * u;
  const cplx lam = crossing_from_gap(a_hi - a_lo, bd(0, 0).real(), bd(1, 1).real(), bd(0, 1));
  return {lam, std::conj(lam)};
}

// ---- Pauli route for 2x2 matrices ------------------------------------------

// M = trace_part * I + plus * s1 + (i * minus) * s2 + delta * s3 with the
// standard Pauli matrices s1, s2, s3; all four components are real exactly
// when M is real. The associated quadratic form is plus^2 - minus^2 + delta^2.
struct PauliVector {
  cplx plus{0.0, 0.0};
  cplx minus{0.0, 0.0};
  cplx delta{0.0, 0.0};
  cplx trace_part{0.0, 0.0};

  Eigen::Matrix2cd reconstruct() const {
    Eigen::Matrix2cd m;
    m(0, 0) = trace_part + delta;
    m(1, 1) = trace_part - delta;
    m(0, 1) = plus + minus;
    m(1, 0) = plus - minus;
    return m;
  }

  cplx minkowski_sq() const { return plus * plus - minus * minus + delta * delta; }
};

inline PauliVector pauli_decompose(const Eigen::MatrixXcd& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument("pauli_decompose: 2x2 matrix required");
  PauliVector p;
  p.trace_part = 0.5 * (m(0, 0) + m(1, 1));
  p.delta = 0.5 * (m(0, 0) - m(1, 1));
  p.plus = 0.5 * (m(0, 1) + m(1, 0));
  p.minus = 0.5 * (m(0, 1) - m(1, 0));
  return p;
}

// Signature (+, -, +) bilinear form matching minkowski_sq.
inline cplx pauli_minkowski_dot(const PauliVector& a, const PauliVector& b) {
  return a.plus * b.plus - a.minus * b.minus + a.delta * b.delta;
}

struct Pauli2x2Crossings {
  cplx first{0.0, 0.0};
  cplx second{0.0, 0.0};
  bool second_at_infinity = false;
};

// Crossings of a 2x2 pencil as roots of D_B lambda^2 + 2 (A.B) lambda + D_A,
// where D_X is the quadratic form and A.B the associated bilinear form of the
// traceless parts. Trace parts never matter. When D_B degenerates, one
// crossing escapes to infinity and the finite one is -D_A / (2 A.B).
inline Pauli2x2Crossings crossings_pauli_2x2(const PauliVector& a, const PauliVector& b) {
  const cplx da = a.minkowski_sq();
  const cplx db = b.minkowski_sq();
  const cplx dot = pauli_minkowski_dot(a, b);
  Pauli2x2Crossings out;
  if (std::abs(db) <= 1e-12) {
    out.second_at_infinity = true;
    out.first = -da / (2.0 * dot);
    return out;
  }
  const cplx s = std::sqrt(dot * dot - da * db);
  out.first = (-dot + s) / db;
  out.second = (-dot - s) / db;
  return out;
}

// ---- equivariance helpers ---------------------------------------------------

inline std::vector<ProjectivePoint> all_projective_points(const CrossingSet& s) {
  std::vector<ProjectivePoint> pts;
  pts.reserve(s.points.size() + static_cast<std::size_t>(s.at_infinity_multiplicity));
  for (const auto& p : s.points) pts.push_back(p.point);
  for (int k = 0; k < s.at_infinity_multiplicity; ++k) pts.push_back(ProjectivePoint::infinity());
  return pts;
}

inline std::vector<ProjectivePoint> mobius_image(const std::vector<ProjectivePoint>& pts, cplx u,
                                                 cplx v) {
  std::vector<ProjectivePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(mobius_su2(p, u, v));
  return out;
}

// Symmetric Hausdorff distance between point multisets in the chordal metric.
inline double hausdorff_chordal(const std::vector<ProjectivePoint>& s1,
                                const std::vector<ProjectivePoint>& s2) {
  if (s1.empty() && s2.empty()) return 0.0;
  if (s1.empty() || s2.empty()) return 2.0;
  double h = 0.0;
  auto one_sided = [&](const std::vector<ProjectivePoint>& from,
                       const std::vector<ProjectivePoint>& to) {
    for (const auto& p : from) {
      double best = 2.0;
      for (const auto& q : to) best = std::min(best, chordal_distance(p, q));
      h = std::max(h, best);
    }
  };
  one_sided(s1, s2);
  one_sided(s2, s1);
  return h;
}

}  // namespace lcross
