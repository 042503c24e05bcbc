#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "lcross/ensemble.hpp"
#include "lcross/geometry.hpp"
#include "lcross/rng.hpp"

using namespace lcross;

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx random_point(Rng& rng) { return 2.0 * rng.complex_normal(); }
}  // namespace

TEST_CASE("plane-sphere round trip") {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const cplx l = random_point(rng);
    const SpherePoint s = plane_to_sphere(l);
    REQUIRE(std::abs(s.x * s.x + s.y * s.y + s.z * s.z - 1.0) < 1e-12);
    const ProjectivePoint back = sphere_to_plane(s);
    REQUIRE(std::abs(back.affine() - l) < 1e-12 * (1.0 + std::abs(l)));
  }
}

TEST_CASE("poles and reference points") {
  const SpherePoint south = plane_to_sphere(cplx(0.0, 0.0));
  REQUIRE(south.z == -1.0);
  REQUIRE(sphere_to_plane(SpherePoint{0.0, 0.0, 1.0}).is_infinity());
  const SpherePoint inf = plane_to_sphere(ProjectivePoint::infinity());
  REQUIRE(inf.z == 1.0);

  const SpherePoint one = plane_to_sphere(cplx(1.0, 0.0));
  REQUIRE(std::abs(one.x - 1.0) < 1e-15);
  REQUIRE(std::abs(one.y) < 1e-15);
  REQUIRE(std::abs(one.z) < 1e-15);

  const SpherePoint eye = plane_to_sphere(cplx(0.0, 1.0));
  REQUIRE(std::abs(eye.y - 1.0) < 1e-15);
}

TEST_CASE("cylinder chart wraps and inverts") {
  const CylindricalY c = sphere_to_cyl_y(SpherePoint{0.0, 0.0, -1.0});
  REQUIRE(std::abs(c.psi - 1.5 * kPi) < 1e-15);
  REQUIRE(std::abs(c.y) < 1e-15);

  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const SpherePoint s = plane_to_sphere(random_point(rng));
    const CylindricalY cy = sphere_to_cyl_y(s);
    REQUIRE(cy.psi >= 0.0);
    REQUIRE(cy.psi < kTwoPi);
    const SpherePoint back = cyl_y_to_sphere(cy);
    REQUIRE(std::abs(back.x - s.x) < 1e-12);
    REQUIRE(std::abs(back.y - s.y) < 1e-12);
    REQUIRE(std::abs(back.z - s.z) < 1e-12);
  }
}

TEST_CASE("phi-z chart inverts") {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const SpherePoint s = plane_to_sphere(random_point(rng));
    const PhiZ pz = sphere_to_phi_z(s);
    const SpherePoint back = phi_z_to_sphere(pz);
    REQUIRE(std::abs(back.x - s.x) < 1e-12);
    REQUIRE(std::abs(back.y - s.y) < 1e-12);
    REQUIRE(std::abs(back.z - s.z) < 1e-12);
  }
}

TEST_CASE("chordal distance: metric values") {
  REQUIRE(chordal_distance(cplx(1.0, 0.0), cplx(1.0, 0.0)) == 0.0);
  // antipodal pairs sit at distance 2
  REQUIRE(std::abs(chordal_distance(ProjectivePoint::from_affine(cplx(0.0, 0.0)),
                                    ProjectivePoint::infinity()) - 2.0) < 1e-15);
  REQUIRE(std::abs(chordal_distance(cplx(0.0, 1.0), cplx(0.0, -1.0)) - 2.0) < 1e-15);
  // agrees with the Euclidean distance of the sphere images
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const cplx l1 = random_point(rng), l2 = random_point(rng);
    const SpherePoint s1 = plane_to_sphere(l1), s2 = plane_to_sphere(l2);
    const double euclid = std::sqrt((s1.x - s2.x) * (s1.x - s2.x) +
                                    (s1.y - s2.y) * (s1.y - s2.y) +
                                    (s1.z - s2.z) * (s1.z - s2.z));
    REQUIRE(std::abs(chordal_distance(l1, l2) - euclid) < 1e-12);
  }
}

TEST_CASE("stereographic area distortion") {
  // finite-difference Jacobian of the plane-to-sphere map vs 4/(1+|l|^2)^2
  Rng rng(5);
  const double h = 1e-6;
  for (int k = 0; k < 50; ++k) {
    const cplx l = random_point(rng);
    const SpherePoint s0 = plane_to_sphere(l);
    const SpherePoint sx = plane_to_sphere(l + cplx(h, 0.0));
    const SpherePoint sy = plane_to_sphere(l + cplx(0.0, h));
    const double ax = (sx.x - s0.x) / h, ay = (sx.y - s0.y) / h, az = (sx.z - s0.z) / h;
    const double bx = (sy.x - s0.x) / h, by = (sy.y - s0.y) / h, bz = (sy.z - s0.z) / h;
    const double cx = ay * bz - az * by;
    const double cy = az * bx - ax * bz;
    const double cz = ax * by - ay * bx;
    const double area = std::sqrt(cx * cx + cy * cy + cz * cz);
    const double r2 = std::norm(l);
    const double expected = 4.0 / ((1.0 + r2) * (1.0 + r2));
    REQUIRE(std::abs(area - expected) < 1e-4 * expected);
  }
}

TEST_CASE("projective normalization and infinity") {
  const ProjectivePoint p = ProjectivePoint::normalized(cplx(2.0, 0.0), cplx(4.0, 2.0));
  REQUIRE(std::abs(p.affine() - cplx(2.0, 1.0)) < 1e-15);
  REQUIRE_THROWS_AS(ProjectivePoint::normalized(cplx(0.0, 0.0), cplx(0.0, 0.0)),
                    std::invalid_argument);
  REQUIRE(ProjectivePoint::infinity().is_infinity());
  REQUIRE(!ProjectivePoint::from_affine(cplx(1e8, 0.0)).is_infinity());
}

TEST_CASE("unitary Mobius action composes") {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const auto [u1, v1] = random_su2(rng);
    const auto [u2, v2] = random_su2(rng);
    const cplx u3 = u2 * u1 - v2 * std::conj(v1);
    const cplx v3 = u2 * v1 + v2 * std::conj(u1);
    const ProjectivePoint p = ProjectivePoint::from_affine(random_point(rng));
    const ProjectivePoint two = mobius_su2(mobius_su2(p, u1, v1), u2, v2);
    const ProjectivePoint one = mobius_su2(p, u3, v3);
    REQUIRE(chordal_distance(two, one) < 1e-12);
  }
}

TEST_CASE("quarter turn inverts and negates") {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const cplx l = random_point(rng);
    const ProjectivePoint image = mobius_su2(ProjectivePoint::from_affine(l), cplx(0.0, 0.0),
                                             cplx(1.0, 0.0));
    REQUIRE(std::abs(image.affine() - (-1.0 / l)) < 1e-12 * (1.0 + std::abs(1.0 / l)));
  }
}

TEST_CASE("rotation action commutes with the cylinder chart") {
  // plane -> rotate -> cylinder equals plane -> cylinder -> rotation action
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const cplx l = random_point(rng);
    const double theta = kTwoPi * rng.uniform();
    const cplx u(std::cos(theta), 0.0), v(std::sin(theta), 0.0);
    const ProjectivePoint moved = mobius_su2(ProjectivePoint::from_affine(l), u, v);
    const CylindricalY via_plane = sphere_to_cyl_y(plane_to_sphere(moved));
    const CylindricalY via_chart = so2_cyl_action(sphere_to_cyl_y(plane_to_sphere(l)), theta);
    REQUIRE(std::abs(via_plane.y - via_chart.y) < 1e-12);
    const double dpsi = std::remainder(via_plane.psi - via_chart.psi, kTwoPi);
    REQUIRE(std::abs(dpsi) < 1e-9);
  }
}
