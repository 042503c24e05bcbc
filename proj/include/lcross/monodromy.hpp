#pragma once

// Monodromy of the eigenvalue cover over the parameter plane: loops around
// individual crossings permute eigenvalue labels, one transposition per
// simple crossing. Labels are tracked numerically along lollipop paths
// (straight approach, small counterclockwise loop, return) with brute-force
// nearest matching and adaptive step refinement.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "errors.hpp"
#include "pencil.hpp"
#include "polynomial.hpp"
#include "stats.hpp"

namespace lcross {

// ---- permutations and transposition tuples ---------------------------------

// Image table, 0-based: perm[x] is where x goes.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

inline Permutation reversal_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = n - 1 - i;
  return p;
}

// Labels are 1-based and printed as digit pairs, so n <= 9.
struct Transposition {
  int a = 1, b = 2;

  Transposition() = default;
  Transposition(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {
    if (x == y || x < 1 || y < 1) throw std::invalid_argument("Transposition: need two labels");
  }

  bool operator==(const Transposition& o) const { return a == o.a && b == o.b; }
  bool operator<(const Transposition& o) const { return a != o.a ? a < o.a : b < o.b; }

  int apply(int x) const { return x == a ? b : (x == b ? a : x); }
};

using TranspositionSeq = std::vector<Transposition>;

// Left-to-right composition: the first entry acts first.
inline Permutation product_left_to_right(const TranspositionSeq& seq, int n) {
  Permutation p = identity_permutation(n);
  for (const auto& t : seq)
    for (auto& x : p) x = t.apply(x + 1) - 1;
  return p;
}

// The transposition graph on {1..n} must be connected for the sequence to
// generate the full symmetric group.
inline bool spans_all_labels(const TranspositionSeq& seq, int n) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& t : seq) {
    if (t.b > n) return false;
    parent[static_cast<std::size_t>(find(t.a - 1))] = find(t.b - 1);
  }
  const int root = find(0);
  for (int i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

inline std::string tuple_to_string(const TranspositionSeq& seq) {
  std::string s;
  for (const auto& t : seq) {
    s += '(';
    s += static_cast<char>('0' + t.a);
    s += static_cast<char>('0' + t.b);
    s += ')';
  }
  return s;
}

// Conjugation by a relabeling: (a b) becomes (r(a) r(b)), order preserved.
inline TranspositionSeq conjugate_tuple(const TranspositionSeq& seq, const Permutation& relabel) {
  TranspositionSeq out;
  out.reserve(seq.size());
  for (const auto& t : seq)
    out.emplace_back(relabel[static_cast<std::size_t>(t.a - 1)] + 1,
                     relabel[static_cast<std::size_t>(t.b - 1)] + 1);
  return out;
}

inline TranspositionSeq reversed_tuple(const TranspositionSeq& seq) {
  return TranspositionSeq(seq.rbegin(), seq.rend());
}

inline std::vector<Transposition> all_transpositions(int n) {
  std::vector<Transposition> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) out.emplace_back(a, b);
  return out;
}

// All sequences of the given length whose product equals the target and whose
// transposition graph is connected. Brute force; intended for small n.
inline std::vector<TranspositionSeq> enumerate_admissible(int n, int length,
                                                          const Permutation& target) {
  if (n < 2 || n > 9) throw std::invalid_argument("enumerate_admissible: n out of range");
  const auto ts = all_transpositions(n);
  std::vector<TranspositionSeq> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  TranspositionSeq seq(static_cast<std::size_t>(length));
  for (;;) {
    for (int k = 0; k < length; ++k)
      seq[static_cast<std::size_t>(k)] = ts[idx[static_cast<std::size_t>(k)]];
    if (product_left_to_right(seq, n) == target && spans_all_labels(seq, n)) out.push_back(seq);
    int k = length - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == ts.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

// ---- numeric tracking -------------------------------------------------------

struct MonodromyConfig {
  int base_steps = 100;      // uniform evaluations per straight segment
  int loop_chords = 32;      // evaluations around each crossing loop
  double min_gap = 1e-3;     // path separation floor (real parts / arguments)
  double margin_threshold = 2.0;  // second-best / best assignment cost
  int max_evals_per_loop = 1 << 14;
  PencilConfig pencil;
};

enum class DiscardReason { None, RealPartCollision, TrackingAmbiguity, Degenerate };

inline const char* to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::None: return "none";
    case DiscardReason::RealPartCollision: return "real_part_collision";
    case DiscardReason::TrackingAmbiguity: return "tracking_ambiguity";
    case DiscardReason::Degenerate: return "degenerate";
  }
  return "unknown";
}

struct MonodromyRecord {
  bool valid = false;
  DiscardReason discard_reason = DiscardReason::None;
  TranspositionSeq tuple;  // in composition order (first acts first)
  Permutation product;     // left-to-right product of the tuple
};

namespace detail {

struct MatchResult {
  std::vector<int> perm;  // label k continues as eigenvalue perm[k]
  double margin = 0.0;
};

// Exact minimum-cost assignment by enumeration; n is small.
inline MatchResult match_eigenvalues(const std::vector<cplx>& prev, const std::vector<cplx>& cur) {
  const std::size_t n = prev.size();
  if (n != cur.size() || n == 0 || n > 6)
    throw std::invalid_argument("match_eigenvalues: size mismatch or n > 6");
  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
  MatchResult best;
  double best_cost = -1.0, second_cost = -1.0;
  do {
    double cost = 0.0;
    for (std::size_t k = 0; k < n; ++k) cost += std::abs(prev[k] - cur[static_cast<std::size_t>(idx[k])]);
    if (best_cost < 0.0 || cost < best_cost) {
      second_cost = best_cost;
      best_cost = cost;
      best.perm = idx;
    } else if (second_cost < 0.0 || cost < second_cost) {
      second_cost = cost;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));
  if (n == 1) {
    best.margin = std::numeric_limits<double>::infinity();
    return best;
  }
  if (best_cost <= 0.0)
    best.margin = second_cost <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  else
    best.margin = second_cost / best_cost;
  return best;
}

// Carries labeled eigenvalues along a polyline of parameter values.
class LabelTracker {
 public:
  LabelTracker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, std::vector<cplx> labels,
               const MonodromyConfig& cfg)
      : a_(a), b_(b), labels_(std::move(labels)), cfg_(cfg) {}

  const std::vector<cplx>& labels() const { return labels_; }
  bool exhausted() const { return evals_ >= cfg_.max_evals_per_loop; }

  // Adaptive move from the current parameter (labels already valid there) to
  // `to`; subdivides whenever the assignment margin falls under the
  // threshold. Returns false on ambiguity or budget exhaustion.
  bool advance(cplx from, cplx to, int depth = 0) {
    if (evals_ >= cfg_.max_evals_per_loop) return false;
    std::vector<cplx> eig;
    try {
      eig = eigenvalues(a_ + to * b_);
    } catch (const convergence_error&) {
      return false;
    }
    ++evals_;
    const MatchResult m = match_eigenvalues(labels_, eig);
    if (m.margin >= cfg_.margin_threshold) {
      std::vector<cplx> next(labels_.size());
      for (std::size_t k = 0; k < labels_.size(); ++k)
        next[k] = eig[static_cast<std::size_t>(m.perm[k])];
      labels_ = std::move(next);
      return true;
    }
    if (depth >= 8) return false;
    const cplx mid = 0.5 * (from + to);
    return advance(from, mid, depth + 1) && advance(mid, to, depth + 1);
  }

  bool run(const std::vector<cplx>& waypoints) {
    for (std::size_t i = 1; i < waypoints.size(); ++i)
      if (!advance(waypoints[i - 1], waypoints[i])) return false;
    return true;
  }

 private:
  const Eigen::MatrixXcd& a_;
  const Eigen::MatrixXcd& b_;
  std::vector<cplx> labels_;
  const MonodromyConfig& cfg_;
  int evals_ = 0;
};

inline void append_segment(std::vector<cplx>& path, cplx from, cplx to, int steps) {
  for (int s = 1; s <= steps; ++s) path.push_back(from + (to - from) * (double(s) / steps));
}

inline void append_loop(std::vector<cplx>& path, cplx center, double radius, double start_angle,
                        int chords) {
  for (int s = 1; s <= chords; ++s) {
    const double ang = start_angle + kTwoPi * s / chords;
    path.push_back(center + radius * cplx(std::cos(ang), std::sin(ang)));
  }
}

// Net permutation of a closed loop relative to the stored base labels; must
// be a transposition for a loop around one simple crossing.
inline std::optional<Transposition> closing_transposition(const std::vector<cplx>& base_labels,
                                                          const std::vector<cplx>& final_labels,
                                                          double margin_threshold) {
  const MatchResult m = match_eigenvalues(final_labels, base_labels);
  if (m.margin < margin_threshold) return std::nullopt;
  // label k ended at base position m.perm[k], i.e. the loop maps k -> m.perm[k]
  std::vector<int> moved;
  for (std::size_t k = 0; k < m.perm.size(); ++k)
    if (m.perm[k] != static_cast<int>(k)) moved.push_back(static_cast<int>(k));
  if (moved.size() != 2) return std::nullopt;
  const int i = moved[0], j = moved[1];
  if (m.perm[static_cast<std::size_t>(i)] != j || m.perm[static_cast<std::size_t>(j)] != i)
    return std::nullopt;
  return Transposition(i + 1, j + 1);
}

inline std::vector<cplx> sorted_real_labels(const Eigen::MatrixXcd& m) {
  std::vector<cplx> eig = eigenvalues(m);
  std::sort(eig.begin(), eig.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  return eig;
}

inline std::vector<cplx> sorted_lex_labels(const Eigen::MatrixXcd& m) {
  std::vector<cplx> eig = eigenvalues(m);
  std::sort(eig.begin(), eig.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return eig;
}

}  // namespace detail

// Monodromy tuple of a Hermitian-type pair (real spectrum on the real axis):
// one lollipop per upper half-plane crossing, ordered by increasing real
// part, each based at the foot point on the real axis. Labels are the
// ascending real eigenvalues there, which is a consistent labeling across
// foot points because real-axis spectra never reorder between crossings.
inline MonodromyRecord monodromy_hermitian(const MatrixPair& pair,
                                           const MonodromyConfig& cfg = {}) {
  const int n = static_cast<int>(pair.a.rows());
  MonodromyRecord rec;
  CrossingSet cs;
  try {
    cs = level_crossings(pair, cfg.pencil);
  } catch (const ill_conditioned_error&) {
    rec.discard_reason = DiscardReason::Degenerate;
    return rec;
  }
  if (cs.degenerate || cs.at_infinity_multiplicity > 0) {
    rec.discard_reason = DiscardReason::Degenerate;
    return rec;
  }
  std::vector<cplx> upper;
  for (const auto& p : cs.points) {
    if (p.is_real) {
      rec.discard_reason = DiscardReason::Degenerate;
      return rec;
    }
    const cplx l = p.affine();
    if (l.imag() > 0.0) upper.push_back(l);
  }
  if (static_cast<int>(upper.size()) != n * (n - 1) / 2) {
    rec.discard_reason = DiscardReason::Degenerate;
    return rec;
  }
  std::sort(upper.begin(), upper.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  for (std::size_t i = 1; i < upper.size(); ++i)
    if (upper[i].real() - upper[i - 1].real() < cfg.min_gap) {
      rec.discard_reason = DiscardReason::RealPartCollision;
      return rec;
    }

  // all crossings, conjugates included, for the loop radius
  std::vector<cplx> all;
  for (const auto& p : cs.points) all.push_back(p.affine());

  for (const cplx& lam : upper) {
    double nearest = lam.imag();  // distance to the real axis
    for (const cplx& other : all)
      if (other != lam) nearest = std::min(nearest, std::abs(other - lam));
    const double r = 0.5 * nearest;
    const cplx foot(lam.real(), 0.0);
    const cplx below(lam.real(), lam.imag() - r);

    std::vector<cplx> path{foot};
    detail::append_segment(path, foot, below, cfg.base_steps);
    detail::append_loop(path, lam, r, -0.25 * kTwoPi, cfg.loop_chords);
    detail::append_segment(path, below, foot, cfg.base_steps);

    const std::vector<cplx> base_labels = detail::sorted_real_labels(pair.a + foot * pair.b);
    detail::LabelTracker tracker(pair.a, pair.b, base_labels, cfg);
    if (!tracker.run(path)) {
      rec.discard_reason = DiscardReason::TrackingAmbiguity;
      return rec;
    }
    const auto t = detail::closing_transposition(base_labels, tracker.labels(),
                                                 cfg.margin_threshold);
    if (!t) {
      rec.discard_reason = DiscardReason::TrackingAmbiguity;
      return rec;
    }
    rec.tuple.push_back(*t);
  }
  rec.product = product_left_to_right(rec.tuple, n);
  rec.valid = true;
  return rec;
}

// Monodromy tuple of a complex pair: all n(n-1) crossings, lollipops based at
// the origin, ordered by ascending argument. Labels are the eigenvalues of
// the unperturbed matrix in lexicographic order.
inline MonodromyRecord monodromy_complex(const MatrixPair& pair, const MonodromyConfig& cfg = {}) {
  const int n = static_cast<int>(pair.a.rows());
  MonodromyRecord rec;
  CrossingSet cs;
  try {
    cs = level_crossings(pair, cfg.pencil);
  } catch (const ill_conditioned_error&) {
    rec.discard_reason = DiscardReason::Degenerate;
    return rec;
  }
  if (cs.degenerate || cs.at_infinity_multiplicity > 0 ||
      static_cast<int>(cs.points.size()) != n * (n - 1)) {
    rec.discard_reason = DiscardReason::Degenerate;
    return rec;
  }
  std::vector<cplx> pts;
  for (const auto& p : cs.points) pts.push_back(p.affine());
  std::sort(pts.begin(), pts.end(),
            [](cplx x, cplx y) { return std::arg(x) < std::arg(y); });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i]) < cfg.min_gap) {  // crossing on top of the base point
      rec.discard_reason = DiscardReason::RealPartCollision;
      return rec;
    }
    const double gap = i == 0 ? std::arg(pts[0]) - std::arg(pts.back()) + kTwoPi
                              : std::arg(pts[i]) - std::arg(pts[i - 1]);
    if (gap < cfg.min_gap) {  // radial paths too close together
      rec.discard_reason = DiscardReason::RealPartCollision;
      return rec;
    }
  }

  const std::vector<cplx> base_labels = detail::sorted_lex_labels(pair.a);
  for (const cplx& lam : pts) {
    double nearest = std::abs(lam);  // distance to the base point
    for (const cplx& other : pts)
      if (other != lam) nearest = std::min(nearest, std::abs(other - lam));
    const double r = 0.5 * nearest;
    const cplx dir = lam / std::abs(lam);
    const cplx entry = lam - r * dir;

    std::vector<cplx> path{cplx(0.0, 0.0)};
    detail::append_segment(path, cplx(0.0, 0.0), entry, cfg.base_steps);
    detail::append_loop(path, lam, r, std::arg(-dir), cfg.loop_chords);
    detail::append_segment(path, entry, cplx(0.0, 0.0), cfg.base_steps);

    detail::LabelTracker tracker(pair.a, pair.b, base_labels, cfg);
    if (!tracker.run(path)) {
      rec.discard_reason = DiscardReason::TrackingAmbiguity;
      return rec;
    }
    const auto t = detail::closing_transposition(base_labels, tracker.labels(),
                                                 cfg.margin_threshold);
    if (!t) {
      rec.discard_reason = DiscardReason::TrackingAmbiguity;
      return rec;
    }
    rec.tuple.push_back(*t);
  }
  rec.product = product_left_to_right(rec.tuple, n);
  rec.valid = true;
  return rec;
}

// ---- aggregation ------------------------------------------------------------

inline FrequencyTable tuple_frequencies(const std::vector<MonodromyRecord>& records) {
  FrequencyTable table;
  for (const auto& r : records)
    if (r.valid) table.add(tuple_to_string(r.tuple));
  return table;
}

inline double discard_rate(const std::vector<MonodromyRecord>& records) {
  if (records.empty()) return 0.0;
  std::size_t discarded = 0;
  for (const auto& r : records)
    if (!r.valid) ++discarded;
  return double(discarded) / double(records.size());
}

}  // namespace lcross
