#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "lcross/experiment.hpp"

using namespace lcross;

namespace {

ExperimentConfig config(EnsembleSpec spec, std::size_t pairs, std::uint64_t seed,
                        unsigned workers) {
  ExperimentConfig cfg;
  cfg.spec = spec;
  cfg.pairs = pairs;
  cfg.seed = seed;
  cfg.workers = workers;
  return cfg;
}

std::string crossings_csv(const SampleRunResult& r) {
  std::ostringstream os;
  write_crossings_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("sampling runs are byte-identical for any worker count") {
  const auto cfg1 = config(EnsembleSpec::complex_ginibre(3), 60, 42, 1);
  const auto cfg4 = config(EnsembleSpec::complex_ginibre(3), 60, 42, 4);
  const auto r1 = run_sample_crossings(cfg1);
  const auto r4 = run_sample_crossings(cfg4);
  REQUIRE(crossings_csv(r1) == crossings_csv(r4));
  REQUIRE(sample_summary_json(cfg1, r1).dump(2) == sample_summary_json(cfg4, r4).dump(2));
}

TEST_CASE("sample summary reports counts and omits environment details") {
  const auto cfg = config(EnsembleSpec::complex_ginibre(3), 40, 7, 2);
  const auto r = run_sample_crossings(cfg);
  const auto j = sample_summary_json(cfg, r);
  REQUIRE(j["ensemble"] == "ge-c");
  REQUIRE(j["n"] == 3);
  REQUIRE(j["pairs"] == 40);
  REQUIRE(j["seed"] == 7);
  // 6 crossings per pair, minus whatever failed or sits at infinity
  const auto finite = j["finite_crossings"].get<std::size_t>();
  const auto at_inf = j["at_infinity"].get<std::size_t>();
  const auto failed = j["failed_pairs"].get<std::size_t>();
  REQUIRE(finite + at_inf + 6 * failed == 240);
  REQUIRE_FALSE(j.contains("workers"));
  REQUIRE_FALSE(j.contains("elapsed_seconds"));
}

TEST_CASE("crossings CSV has one row per crossing with a stable header") {
  SampleRunResult r;
  r.per_pair.resize(3);
  CrossingPoint cp;
  cp.point = ProjectivePoint::from_affine(cplx(0.5, -0.25));
  cp.is_real = false;
  r.per_pair[0].points.push_back(cp);
  r.per_pair[1].at_infinity = 1;
  r.per_pair[2].failed = true;
  const std::string expected =
      "pair_id,re,im,is_real,at_infinity\n"
      "0,0.5,-0.25,0,0\n"
      "1,,,0,1\n";
  REQUIRE(crossings_csv(r) == expected);
}

TEST_CASE("per-pair crossing choice is uniform-seeded and respects exclusions") {
  SampleRunResult r;
  r.per_pair.resize(4);
  CrossingPoint a, b;
  a.point = ProjectivePoint::from_affine(cplx(0.5, 0.5));
  b.point = ProjectivePoint::from_affine(cplx(-0.25, 0.5));
  r.per_pair[0].points = {a, b};
  r.per_pair[1].points = {a};
  r.per_pair[1].at_infinity = 1;
  r.per_pair[2].degenerate = true;
  r.per_pair[2].points = {a};
  r.per_pair[3].failed = true;

  const auto picks = choose_one_crossing_per_pair(r, 5);
  REQUIRE(picks.size() == 2);  // degenerate and failed pairs contribute nothing
  const auto again = choose_one_crossing_per_pair(r, 5);
  for (std::size_t i = 0; i < picks.size(); ++i) {
    REQUIRE(picks[i].is_infinity() == again[i].is_infinity());
    if (!picks[i].is_infinity()) REQUIRE(picks[i].affine() == again[i].affine());
  }

  // with many pairs the infinity slot of pair 1 gets chosen a fair share
  std::size_t infinity_hits = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto p = choose_one_crossing_per_pair(r, seed);
    infinity_hits += p[1].is_infinity() ? 1 : 0;
  }
  REQUIRE(infinity_hits > 120);
  REQUIRE(infinity_hits < 280);
}

TEST_CASE("real-crossing choice only uses all-real pairs") {
  SampleRunResult r;
  r.per_pair.resize(3);
  CrossingPoint real1, real2, complex1;
  real1.point = ProjectivePoint::from_affine(cplx(0.75, 0.0));
  real1.is_real = true;
  real2.point = ProjectivePoint::from_affine(cplx(-0.5, 0.0));
  real2.is_real = true;
  complex1.point = ProjectivePoint::from_affine(cplx(0.0, 1.0));
  r.per_pair[0].points = {real1, real2};
  r.per_pair[1].points = {real1, complex1};
  r.per_pair[2].points = {real2};
  r.per_pair[2].at_infinity = 1;

  const auto xs = choose_one_real_crossing_per_real_pair(r, 9);
  REQUIRE(xs.size() == 1);
  REQUIRE((xs[0] == 0.75 || xs[0] == -0.5));
}

TEST_CASE("radial values map infinity to infinity") {
  std::vector<ProjectivePoint> pts{ProjectivePoint::from_affine(cplx(3.0, 4.0)), ProjectivePoint::infinity()};
  const auto rs = radial_values(pts);
  REQUIRE(rs.size() == 2);
  REQUIRE(std::abs(rs[0] - 5.0) < 1e-12);
  REQUIRE(std::isinf(rs[1]));
}

TEST_CASE("real-entry pairs produce even real-crossing counts") {
  const auto cfg = config(EnsembleSpec::real_ginibre(3), 150, 11, 2);
  const auto r = run_sample_crossings(cfg);
  const auto hist = real_count_histogram(r);
  std::size_t total = 0;
  for (const auto& [k, c] : hist) {
    REQUIRE(k % 2 == 0);
    REQUIRE(k >= 0);
    REQUIRE(k <= 6);
    total += c;
  }
  REQUIRE(total + r.failed_pairs() + r.degenerate_pairs() == 150);

  std::ostringstream os;
  write_real_count_csv(os, hist);
  REQUIRE(os.str().rfind("real_count,pairs,fraction\n", 0) == 0);
}

TEST_CASE("invariance runs are deterministic and tight") {
  const auto cfg1 = config(EnsembleSpec::gue(3), 25, 17, 1);
  const auto cfg3 = config(EnsembleSpec::gue(3), 25, 17, 3);
  const auto r1 = run_invariance(cfg1);
  const auto r3 = run_invariance(cfg3);
  REQUIRE(r1.per_pair == r3.per_pair);
  REQUIRE(r1.failed_pairs() == 0);
  REQUIRE(r1.max_distance() < 1e-8);
  const auto j = invariance_summary_json(cfg1, r1);
  REQUIRE(j["max_hausdorff"].get<double>() == r1.max_distance());
}

TEST_CASE("monodromy runs are deterministic and ensemble-checked") {
  const auto cfg1 = config(EnsembleSpec::gue(3), 12, 23, 1);
  const auto cfg2 = config(EnsembleSpec::gue(3), 12, 23, 4);
  const auto r1 = run_monodromy(cfg1);
  const auto r2 = run_monodromy(cfg2);
  REQUIRE(r1.records.size() == r2.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    REQUIRE(r1.records[i].valid == r2.records[i].valid);
    REQUIRE(tuple_to_string(r1.records[i].tuple) == tuple_to_string(r2.records[i].tuple));
  }
  const auto j = monodromy_summary_json(cfg1, r1);
  REQUIRE(j["valid"].get<std::size_t>() +
              j["discarded_real_part_collision"].get<std::size_t>() +
              j["discarded_tracking_ambiguity"].get<std::size_t>() +
              j["discarded_degenerate"].get<std::size_t>() ==
          12);

  REQUIRE_THROWS_AS(run_monodromy(config(EnsembleSpec::real_ginibre(3), 1, 1, 1)),
                    std::invalid_argument);
}

TEST_CASE("doubles survive the CSV round trip") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
    REQUIRE(std::stod(format_double(v)) == v);
  }
  std::ostringstream os;
  write_xy_csv(os, "x", "density", {{0.5, 0.25}});
  REQUIRE(os.str() == "x,density\n0.5,0.25\n");
}
