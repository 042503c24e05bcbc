#pragma once

// Batch experiment drivers: per-pair work is seeded independently through
// derive_seed, results land in an index-addressed vector, so output is
// byte-identical for any worker count.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "ensemble.hpp"
#include "errors.hpp"
#include "monodromy.hpp"
#include "parallel.hpp"
#include "pencil.hpp"
#include "rng.hpp"

#include <json.hpp>

namespace lcross {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

struct ExperimentConfig {
  EnsembleSpec spec;
  std::size_t pairs = 1000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

// ---- crossing sampling ------------------------------------------------------

struct PairCrossings {
  std::vector<CrossingPoint> points;
  int at_infinity = 0;
  bool degenerate = false;
  bool failed = false;  // pipeline threw; excluded from statistics
};

struct SampleRunResult {
  std::vector<PairCrossings> per_pair;
  double elapsed_seconds = 0.0;

  std::size_t failed_pairs() const {
    std::size_t k = 0;
    for (const auto& p : per_pair) k += p.failed ? 1 : 0;
    return k;
  }
  std::size_t degenerate_pairs() const {
    std::size_t k = 0;
    for (const auto& p : per_pair) k += p.degenerate ? 1 : 0;
    return k;
  }
};

inline SampleRunResult run_sample_crossings(const ExperimentConfig& cfg) {
  cfg.spec.validate();
  SampleRunResult out;
  out.per_pair.resize(cfg.pairs);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(cfg.pairs, cfg.workers, [&](std::size_t i) {
    const MatrixPair pair = sample(cfg.spec, derive_seed(cfg.seed, i));
    PairCrossings& slot = out.per_pair[i];
    try {
      const CrossingSet cs = level_crossings(pair);
      slot.points = cs.points;
      slot.at_infinity = cs.at_infinity_multiplicity;
      slot.degenerate = cs.degenerate;
    } catch (const ill_conditioned_error&) {
      slot.failed = true;
    } catch (const convergence_error&) {
      slot.failed = true;
    }
  });
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline void write_crossings_csv(std::ostream& os, const SampleRunResult& result) {
  os << "pair_id,re,im,is_real,at_infinity\n";
  for (std::size_t i = 0; i < result.per_pair.size(); ++i) {
    const auto& p = result.per_pair[i];
    if (p.failed) continue;
    for (const auto& cp : p.points) {
      const cplx l = cp.affine();
      os << i << ',' << format_double(l.real()) << ',' << format_double(l.imag()) << ','
         << (cp.is_real ? 1 : 0) << ",0\n";
    }
    for (int k = 0; k < p.at_infinity; ++k) os << i << ",,,0,1\n";
  }
}

inline nlohmann::ordered_json sample_summary_json(const ExperimentConfig& cfg,
                                                  const SampleRunResult& result) {
  std::size_t total = 0, real = 0, at_inf = 0;
  for (const auto& p : result.per_pair) {
    if (p.failed) continue;
    total += p.points.size();
    at_inf += static_cast<std::size_t>(p.at_infinity);
    for (const auto& cp : p.points) real += cp.is_real ? 1 : 0;
  }
  nlohmann::ordered_json j;
  j["ensemble"] = cfg.spec.name();
  j["n"] = cfg.spec.n;
  j["pairs"] = cfg.pairs;
  j["seed"] = cfg.seed;
  j["finite_crossings"] = total;
  j["real_crossings"] = real;
  j["at_infinity"] = at_inf;
  j["degenerate_pairs"] = result.degenerate_pairs();
  j["failed_pairs"] = result.failed_pairs();
  return j;
}

// One uniformly chosen crossing per usable pair, as a projective point so
// crossings at infinity stay representable. Selection is seeded per pair.
inline std::vector<ProjectivePoint> choose_one_crossing_per_pair(const SampleRunResult& result,
                                                                 std::uint64_t seed) {
  std::vector<ProjectivePoint> out;
  out.reserve(result.per_pair.size());
  for (std::size_t i = 0; i < result.per_pair.size(); ++i) {
    const auto& p = result.per_pair[i];
    if (p.failed || p.degenerate) continue;
    const std::size_t total = p.points.size() + static_cast<std::size_t>(p.at_infinity);
    if (total == 0) continue;
    Rng rng(derive_seed(seed, i), 3);
    const std::uint64_t k = rng.uniform_below(total);
    out.push_back(k < p.points.size() ? p.points[static_cast<std::size_t>(k)].point
                                      : ProjectivePoint::infinity());
  }
  return out;
}

// One uniformly chosen real crossing per pair whose crossings are all real.
inline std::vector<double> choose_one_real_crossing_per_real_pair(const SampleRunResult& result,
                                                                  std::uint64_t seed) {
  std::vector<double> out;
  for (std::size_t i = 0; i < result.per_pair.size(); ++i) {
    const auto& p = result.per_pair[i];
    if (p.failed || p.degenerate || p.at_infinity != 0 || p.points.empty()) continue;
    bool all_real = true;
    for (const auto& cp : p.points) all_real = all_real && cp.is_real;
    if (!all_real) continue;
    Rng rng(derive_seed(seed, i), 3);
    const std::uint64_t k = rng.uniform_below(p.points.size());
    out.push_back(p.points[static_cast<std::size_t>(k)].affine().real());
  }
  return out;
}

inline std::vector<double> radial_values(const std::vector<ProjectivePoint>& pts) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts)
    out.push_back(p.is_infinity() ? std::numeric_limits<double>::infinity()
                                  : std::abs(p.affine()));
  return out;
}

// ---- real-count aggregation -------------------------------------------------

inline std::map<int, std::size_t> real_count_histogram(const SampleRunResult& result) {
  std::map<int, std::size_t> hist;
  for (const auto& p : result.per_pair) {
    if (p.failed || p.degenerate) continue;
    int real = 0;
    for (const auto& cp : p.points) real += cp.is_real ? 1 : 0;
    ++hist[real];
  }
  return hist;
}

inline void write_real_count_csv(std::ostream& os, const std::map<int, std::size_t>& hist) {
  std::size_t total = 0;
  for (const auto& [k, c] : hist) total += c;
  os << "real_count,pairs,fraction\n";
  for (const auto& [k, c] : hist)
    os << k << ',' << c << ',' << format_double(total ? double(c) / double(total) : 0.0) << '\n';
}

// ---- group-action invariance ------------------------------------------------

struct InvarianceRunResult {
  std::vector<double> per_pair;  // Hausdorff distance; negative marks a failed pair
  double elapsed_seconds = 0.0;

  double max_distance() const {
    double m = 0.0;
    for (double d : per_pair) m = std::max(m, d);
    return m;
  }
  std::size_t failed_pairs() const {
    std::size_t k = 0;
    for (double d : per_pair) k += d < 0.0 ? 1 : 0;
    return k;
  }
};

// Samples a pair and a random group element per index, then compares the
// transformed crossing set against the projective image of the original one.
// Real-structured ensembles stay inside their class only under the real
// rotations, so those draw an SO(2) angle instead of a full unitary.
inline InvarianceRunResult run_invariance(const ExperimentConfig& cfg) {
  cfg.spec.validate();
  InvarianceRunResult out;
  out.per_pair.assign(cfg.pairs, -1.0);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(cfg.pairs, cfg.workers, [&](std::size_t i) {
    const std::uint64_t pair_seed = derive_seed(cfg.seed, i);
    const MatrixPair pair = sample(cfg.spec, pair_seed);
    Rng direction_rng(pair_seed, 1);
    cplx u, v;
    if (cfg.spec.real_structured()) {
      const double theta = kTwoPi * direction_rng.uniform();
      u = cplx(std::cos(theta), 0.0);
      v = cplx(std::sin(theta), 0.0);
    } else {
      std::tie(u, v) = random_su2(direction_rng);
    }
    try {
      const CrossingSet base = level_crossings(pair);
      const CrossingSet moved = level_crossings(apply_su2(pair, u, v));
      if (base.degenerate || moved.degenerate) return;  // stays marked failed
      const auto expected = mobius_image(all_projective_points(base), u, v);
      out.per_pair[i] = hausdorff_chordal(expected, all_projective_points(moved));
    } catch (const ill_conditioned_error&) {
    } catch (const convergence_error&) {
    }
  });
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline nlohmann::ordered_json invariance_summary_json(const ExperimentConfig& cfg,
                                                      const InvarianceRunResult& result) {
  nlohmann::ordered_json j;
  j["ensemble"] = cfg.spec.name();
  j["n"] = cfg.spec.n;
  j["pairs"] = cfg.pairs;
  j["seed"] = cfg.seed;
  j["max_hausdorff"] = result.max_distance();
  j["failed_pairs"] = result.failed_pairs();
  return j;
}

// ---- monodromy batches ------------------------------------------------------

struct MonodromyRunResult {
  std::vector<MonodromyRecord> records;
  double elapsed_seconds = 0.0;
};

inline MonodromyRunResult run_monodromy(const ExperimentConfig& cfg,
                                        const MonodromyConfig& mcfg = {}) {
  cfg.spec.validate();
  const bool hermitian = cfg.spec.kind == EnsembleKind::GOE || cfg.spec.kind == EnsembleKind::GUE;
  const bool complex_mode = cfg.spec.kind == EnsembleKind::ComplexGinibre;
  if (!hermitian && !complex_mode)
    throw std::invalid_argument("run_monodromy: ensemble must be goe, gue, or ge-c");
  MonodromyRunResult out;
  out.records.resize(cfg.pairs);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(cfg.pairs, cfg.workers, [&](std::size_t i) {
    const MatrixPair pair = sample(cfg.spec, derive_seed(cfg.seed, i));
    out.records[i] = hermitian ? monodromy_hermitian(pair, mcfg) : monodromy_complex(pair, mcfg);
  });
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

inline void write_tuple_frequency_csv(std::ostream& os, const FrequencyTable& table) {
  os << "tuple,count,frequency\n";
  for (const auto& [key, count] : table.counts())
    os << key << ',' << count << ',' << format_double(table.frequency(key)) << '\n';
}

inline nlohmann::ordered_json monodromy_summary_json(const ExperimentConfig& cfg,
                                                     const MonodromyRunResult& result) {
  std::size_t valid = 0, collision = 0, ambiguous = 0, degenerate = 0;
  for (const auto& r : result.records) {
    if (r.valid) {
      ++valid;
      continue;
    }
    switch (r.discard_reason) {
      case DiscardReason::RealPartCollision: ++collision; break;
      case DiscardReason::TrackingAmbiguity: ++ambiguous; break;
      default: ++degenerate; break;
    }
  }
  const FrequencyTable table = tuple_frequencies(result.records);
  nlohmann::ordered_json j;
  j["ensemble"] = cfg.spec.name();
  j["n"] = cfg.spec.n;
  j["pairs"] = cfg.pairs;
  j["seed"] = cfg.seed;
  j["valid"] = valid;
  j["discarded_real_part_collision"] = collision;
  j["discarded_tracking_ambiguity"] = ambiguous;
  j["discarded_degenerate"] = degenerate;
  j["discard_rate"] = discard_rate(result.records);
  j["distinct_tuples"] = table.distinct();
  if (valid > 0) {
    const auto [tuple, count] = table.most_frequent();
    j["top_tuple"] = tuple;
    j["top_tuple_frequency"] = double(count) / double(table.total());
  }
  return j;
}

// ---- generic table output ---------------------------------------------------

inline void write_xy_csv(std::ostream& os, const std::string& x_name, const std::string& y_name,
                         const std::vector<std::pair<double, double>>& rows) {
  os << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : rows) os << format_double(x) << ',' << format_double(y) << '\n';
}

}  // namespace lcross
