#pragma once

// Random matrix pair ensembles and the compact group actions on pairs.
//
// Entry conventions (E|z|^2 denotes the full variance of a complex entry):
//   ComplexGinibre   all entries N(0,1/2) + i N(0,1/2), E|z|^2 = 1
//   RealGinibre      all entries N(0,1)
//   GOE              real symmetric; off-diagonal N(0,1), diagonal N(0,2)
//   GUE              Hermitian; off-diagonal E|z|^2 = 1, diagonal real N(0,1)
//   ComplexSymmetric complex symmetric; off-diagonal E|z|^2 = 1,
//                    diagonal E|z|^2 = diag_variance (default 2)
//   ScaledComplex    ComplexGinibre with diagonal E|z|^2 = diag_variance
//   Subspace         ScaledComplex restricted to a 0/1 pattern (zero outside)
//
// Symmetry classes are preserved exactly (bitwise), both by sampling and by
// the pair actions: mirrored entries are produced by the same arithmetic on
// the same operands.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace lcross {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class EnsembleKind {
  ComplexGinibre,
  RealGinibre,
  GOE,
  GUE,
  ComplexSymmetric,
  ScaledComplex,
  Subspace,
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::ComplexGinibre;
  int n = 2;
  double diag_variance = 1.0;                        // E|z|^2 of diagonal entries
  std::optional<std::vector<std::uint8_t>> pattern;  // row-major n*n mask, Subspace only

  static EnsembleSpec complex_ginibre(int n) { return {EnsembleKind::ComplexGinibre, n, 1.0, {}}; }
  static EnsembleSpec real_ginibre(int n) { return {EnsembleKind::RealGinibre, n, 1.0, {}}; }
  static EnsembleSpec goe(int n) { return {EnsembleKind::GOE, n, 2.0, {}}; }
  static EnsembleSpec gue(int n) { return {EnsembleKind::GUE, n, 1.0, {}}; }
  static EnsembleSpec complex_symmetric(int n, double diag_var = 2.0) {
    return {EnsembleKind::ComplexSymmetric, n, diag_var, {}};
  }
  static EnsembleSpec scaled_complex(int n, double diag_var) {
    return {EnsembleKind::ScaledComplex, n, diag_var, {}};
  }
  static EnsembleSpec subspace(int n, std::vector<std::uint8_t> mask, double diag_var = 1.0) {
    EnsembleSpec s{EnsembleKind::Subspace, n, diag_var, std::move(mask)};
    return s;
  }

  // True when sampled pairs have a real-coefficient discriminant: real entries
  // or Hermitian structure both give characteristic polynomials that are real
  // for real pencil parameters.
  bool real_structured() const {
    return kind == EnsembleKind::RealGinibre || kind == EnsembleKind::GOE ||
           kind == EnsembleKind::GUE;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("ensemble: n must be >= 1");
    if (!(diag_variance > 0.0) || !std::isfinite(diag_variance))
      throw std::invalid_argument("ensemble: diag_variance must be positive and finite");
    if (kind == EnsembleKind::Subspace) {
      if (!pattern || pattern->size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("ensemble: subspace pattern must have n*n entries");
      bool any = false;
      for (auto v : *pattern) {
        if (v > 1) throw std::invalid_argument("ensemble: pattern entries must be 0 or 1");
        any = any || v == 1;
      }
      if (!any) throw std::invalid_argument("ensemble: subspace pattern is all zero");
    } else if (pattern) {
      throw std::invalid_argument("ensemble: pattern is only valid for subspace");
    }
  }

  std::string name() const {
    switch (kind) {
      case EnsembleKind::ComplexGinibre: return "ge-c";
      case EnsembleKind::RealGinibre: return "ge-r";
      case EnsembleKind::GOE: return "goe";
      case EnsembleKind::GUE: return "gue";
      case EnsembleKind::ComplexSymmetric: return "goe-c";
      case EnsembleKind::ScaledComplex: return "ge-c-scaled:" + std::to_string(diag_variance);
      case EnsembleKind::Subspace: return "subspace";
    }
    return "?";
  }
};

struct MatrixPair {
  Matrix a;
  Matrix b;
  EnsembleSpec spec;
};

namespace detail {

inline Matrix sample_one(const EnsembleSpec& s, Rng& rng) {
  const int n = s.n;
  Matrix m = Matrix::Zero(n, n);
  const double sqrt2 = 1.4142135623730950488016887242097;
  switch (s.kind) {
    case EnsembleKind::ComplexGinibre:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
      break;
    case EnsembleKind::RealGinibre:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), 0.0);
      break;
    case EnsembleKind::GOE:
      for (int i = 0; i < n; ++i) {
        m(i, i) = cplx(sqrt2 * rng.normal(), 0.0);
        for (int j = i + 1; j < n; ++j) {
          const cplx g(rng.normal(), 0.0);
          m(i, j) = g;
          m(j, i) = g;
        }
      }
      break;
    case EnsembleKind::GUE:
      for (int i = 0; i < n; ++i) {
        m(i, i) = cplx(rng.normal(), 0.0);
        for (int j = i + 1; j < n; ++j) {
          const cplx z = rng.complex_normal();
          m(i, j) = z;
          m(j, i) = std::conj(z);
        }
      }
      break;
    case EnsembleKind::ComplexSymmetric: {
      const double d = std::sqrt(s.diag_variance);
      for (int i = 0; i < n; ++i) {
        m(i, i) = d * rng.complex_normal();
        for (int j = i + 1; j < n; ++j) {
          const cplx z = rng.complex_normal();
          m(i, j) = z;
          m(j, i) = z;
        }
      }
      break;
    }
    case EnsembleKind::ScaledComplex: {
      const double d = std::sqrt(s.diag_variance);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) = (i == j ? d * rng.complex_normal() : rng.complex_normal());
      break;
    }
    case EnsembleKind::Subspace: {
      const double d = std::sqrt(s.diag_variance);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if ((*s.pattern)[static_cast<std::size_t>(i) * n + j] == 0) continue;
          m(i, j) = (i == j ? d * rng.complex_normal() : rng.complex_normal());
        }
      break;
    }
  }
  return m;
}

}  // namespace detail

// Draws a pair (A, B) of i.i.d. matrices. Pure in (spec, seed): identical
// arguments give bitwise identical pairs.
inline MatrixPair sample(const EnsembleSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  MatrixPair p;
  p.spec = spec;
  p.a = detail::sample_one(spec, rng);
  p.b = detail::sample_one(spec, rng);
  return p;
}

// Pair action of a unit-norm (u, v): (A, B) -> (u A + v B, -conj(v) A + conj(u) B).
// Preserves tr(C C* + D D*) and every linear symmetry class of the pair.
inline MatrixPair apply_su2(const MatrixPair& p, cplx u, cplx v) {
  const double norm = std::norm(u) + std::norm(v);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("apply_su2: |u|^2 + |v|^2 must be 1");
  MatrixPair q;
  q.spec = p.spec;
  q.a = u * p.a + v * p.b;
  q.b = -std::conj(v) * p.a + std::conj(u) * p.b;
  return q;
}

// Real rotation subgroup: (A, B) -> (cos(t) A + sin(t) B, -sin(t) A + cos(t) B).
// For real-structured pairs this keeps entries exactly real / Hermitian.
inline MatrixPair apply_so2(const MatrixPair& p, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("apply_so2: theta must be finite");
  const double c = std::cos(theta), s = std::sin(theta);
  MatrixPair q;
  q.spec = p.spec;
  q.a = c * p.a + s * p.b;
  q.b = -s * p.a + c * p.b;
  return q;
}

// Uniform random element of the unit 3-sphere, as (u, v) with |u|^2+|v|^2 = 1.
inline std::pair<cplx, cplx> random_su2(Rng& rng) {
  double x[4];
  double r2 = 0.0;
  do {
    r2 = 0.0;
    for (double& c : x) {
      c = rng.normal();
      r2 += c * c;
    }
  } while (r2 == 0.0);
  const double inv = 1.0 / std::sqrt(r2);
  return {cplx(x[0] * inv, x[1] * inv), cplx(x[2] * inv, x[3] * inv)};
}

}  // namespace lcross
