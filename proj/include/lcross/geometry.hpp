#pragma once

// The projective line, the unit sphere, and the charts between them.
//
// Conventions, used consistently everywhere:
//   * a projective point (a : b) has affine coordinate lambda = b / a, so the
//     point at infinity is (0 : 1);
//   * plane_to_sphere maps 0 to the south pole (0,0,-1), infinity to the north
//     pole (0,0,1), 1 to (1,0,0) and i to (0,1,0);
//   * the unit-norm pair (u, v) acts on (a : b) by
//     (a : b) -> (conj(u) a + conj(v) b : -v a + u b),
//     matching the pair action (A,B) -> (uA + vB, -conj(v)A + conj(u)B): the
//     transformed pencil degenerates exactly at the transformed points. For
//     real (u, v) = (cos t, sin t) this rotates the (psi, Y) cylinder chart by
//     psi -> psi - 2t and leaves Y unchanged.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace lcross {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Normalized homogeneous coordinates: the larger-modulus component is exactly 1.
struct ProjectivePoint {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  static ProjectivePoint normalized(cplx a_, cplx b_) {
    if (a_ == cplx(0.0, 0.0) && b_ == cplx(0.0, 0.0))
      throw std::invalid_argument("ProjectivePoint: (0, 0) is not a point");
    ProjectivePoint p;
    if (std::abs(a_) >= std::abs(b_)) {
      p.a = cplx(1.0, 0.0);
      p.b = b_ / a_;
    } else {
      p.a = a_ / b_;
      p.b = cplx(1.0, 0.0);
    }
    return p;
  }

  static ProjectivePoint from_affine(cplx lambda) { return normalized(cplx(1.0, 0.0), lambda); }
  static ProjectivePoint infinity() { return normalized(cplx(0.0, 0.0), cplx(1.0, 0.0)); }

  bool is_infinity(double tol = 0.0) const { return std::abs(a) <= tol * std::abs(b); }

  // affine coordinate; +/-inf components when the point is at infinity
  cplx affine() const {
    if (a == cplx(0.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return b / a;
  }
};

// Chord length in R^3 between the sphere images; 0 for equal points, 2 for
// antipodal ones. Scale-invariant in the homogeneous coordinates.
inline double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const double num = std::abs(p.a * q.b - q.a * p.b);
  const double np = std::sqrt(std::norm(p.a) + std::norm(p.b));
  const double nq = std::sqrt(std::norm(q.a) + std::norm(q.b));
  return 2.0 * num / (np * nq);
}

inline double chordal_distance(cplx z, cplx w) {
  return chordal_distance(ProjectivePoint::from_affine(z), ProjectivePoint::from_affine(w));
}

struct SpherePoint {
  double x = 0.0, y = 0.0, z = -1.0;  // unit vector
};

struct CylindricalY {
  double psi = 0.0;  // angle of (X, Z) in [0, 2*pi)
  double y = 0.0;    // height along the Y axis, in [-1, 1]
};

namespace detail {
inline double wrap_two_pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}
}  // namespace detail

inline SpherePoint plane_to_sphere(cplx lambda) {
  const double x = lambda.real(), y = lambda.imag();
  const double d = x * x + y * y + 1.0;
  return {2.0 * x / d, 2.0 * y / d, (x * x + y * y - 1.0) / d};
}

inline SpherePoint plane_to_sphere(const ProjectivePoint& p) {
  if (p.a == cplx(0.0, 0.0)) return {0.0, 0.0, 1.0};
  return plane_to_sphere(p.affine());
}

inline ProjectivePoint sphere_to_plane(const SpherePoint& s) {
  // inverse stereographic projection from the north pole
  if (1.0 - s.z <= 1e-15) return ProjectivePoint::infinity();
  const double d = 1.0 - s.z;
  return ProjectivePoint::from_affine(cplx(s.x / d, s.y / d));
}

inline CylindricalY sphere_to_cyl_y(const SpherePoint& s) {
  return {detail::wrap_two_pi(std::atan2(s.z, s.x)), s.y};
}

inline SpherePoint cyl_y_to_sphere(const CylindricalY& c) {
  if (std::abs(c.y) > 1.0 + 1e-12)
    throw std::invalid_argument("cyl_y_to_sphere: |Y| must be <= 1");
  const double y = std::clamp(c.y, -1.0, 1.0);
  const double rho = std::sqrt(std::max(0.0, 1.0 - y * y));
  return {rho * std::cos(c.psi), y, rho * std::sin(c.psi)};
}

// Area-preserving cylinder chart around the Z axis: (phi, Z) with
// dA = dphi dZ on the unit sphere.
struct PhiZ {
  double phi = 0.0;  // angle of (X, Y) in [0, 2*pi)
  double z = 0.0;
};

inline PhiZ sphere_to_phi_z(const SpherePoint& s) {
  return {detail::wrap_two_pi(std::atan2(s.y, s.x)), s.z};
}

inline SpherePoint phi_z_to_sphere(const PhiZ& c) {
  if (std::abs(c.z) > 1.0 + 1e-12) throw std::invalid_argument("phi_z_to_sphere: |Z| must be <= 1");
  const double z = std::clamp(c.z, -1.0, 1.0);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(c.phi), rho * std::sin(c.phi), z};
}

// Projective action of the unit-norm pair (u, v); see header comment for the
// convention and its compatibility with the pair action.
inline ProjectivePoint mobius_su2(const ProjectivePoint& p, cplx u, cplx v) {
  return ProjectivePoint::normalized(std::conj(u) * p.a + std::conj(v) * p.b,
                                     -v * p.a + u * p.b);
}

inline ProjectivePoint mobius_su2(cplx lambda, cplx u, cplx v) {
  return mobius_su2(ProjectivePoint::from_affine(lambda), u, v);
}

// The same rotation expressed on the (psi, Y) cylinder: psi drops by 2*theta,
// Y is exactly preserved.
inline CylindricalY so2_cyl_action(const CylindricalY& c, double theta) {
  return {detail::wrap_two_pi(c.psi - 2.0 * theta), c.y};
}

}  // namespace lcross
