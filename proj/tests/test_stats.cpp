#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lcross/rng.hpp"
#include "lcross/stats.hpp"

using namespace lcross;

TEST_CASE("one-sample KS distance on a tiny exact case") {
  // two points at 0.25 and 0.75 against the uniform CDF: sup gap is 0.25,
  // attained both below the first jump and above it
  EmpiricalDistribution emp(std::vector<double>{0.25, 0.75});
  const double d = ks_distance(emp, [](double x) {
    return std::min(1.0, std::max(0.0, x));
  });
  REQUIRE(std::abs(d - 0.25) < 1e-15);
}

TEST_CASE("one-sample KS accepts matching law and flags the wrong one") {
  Rng rng(101);
  const int n = 20000;
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 0; i < n; ++i) xs.push_back(rng.uniform());
  EmpiricalDistribution emp(std::move(xs));
  auto uniform_cdf = [](double x) { return std::min(1.0, std::max(0.0, x)); };
  REQUIRE(ks_distance(emp, uniform_cdf) < ks_critical_99(n));
  // against x^2 the gap is macroscopic (max of x - x^2 is 1/4)
  auto wrong_cdf = [](double x) { return std::min(1.0, std::max(0.0, x * x)); };
  REQUIRE(ks_distance(emp, wrong_cdf) > 0.2);
}

TEST_CASE("KS distance is invariant under monotone reparametrization") {
  Rng rng(103);
  std::vector<double> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(2.0 * rng.uniform() - 1.0);
  EmpiricalDistribution emp(xs);
  std::vector<double> cubes;
  for (double x : xs) cubes.push_back(x * x * x);
  EmpiricalDistribution emp_cubed(std::move(cubes));

  auto cdf = [](double x) { return std::min(1.0, std::max(0.0, 0.5 * (x + 1.0))); };
  auto cdf_cubed = [&](double y) { return cdf(std::cbrt(y)); };
  REQUIRE(std::abs(ks_distance(emp, cdf) - ks_distance(emp_cubed, cdf_cubed)) < 1e-15);
}

TEST_CASE("two-sample KS distance: identical, disjoint, and tied data") {
  std::vector<double> a{0.1, 0.2, 0.3, 0.4};
  REQUIRE(ks_distance(EmpiricalDistribution(a), EmpiricalDistribution(a)) == 0.0);

  EmpiricalDistribution low(std::vector<double>{0.0, 0.1, 0.2});
  EmpiricalDistribution high(std::vector<double>{5.0, 6.0});
  REQUIRE(ks_distance(low, high) == 1.0);

  // heavy ties across samples must not inflate the statistic
  EmpiricalDistribution t1(std::vector<double>{1.0, 1.0, 2.0, 2.0});
  EmpiricalDistribution t2(std::vector<double>{1.0, 2.0, 2.0, 2.0});
  REQUIRE(std::abs(ks_distance(t1, t2) - 0.25) < 1e-15);
}

TEST_CASE("two-sample KS accepts same-law pairs at the 99% level") {
  Rng rng(107);
  auto draw = [&](int n, int stream) {
    Rng r(derive_seed(107, stream));
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(r.normal());
    return EmpiricalDistribution(std::move(xs));
  };
  const auto a = draw(4000, 1);
  const auto b = draw(6000, 2);
  REQUIRE(ks_distance(a, b) < ks_critical_99(4000, 6000));
}

TEST_CASE("empirical CDF and quantiles agree on a known grid") {
  EmpiricalDistribution emp(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  REQUIRE(emp.cdf(0.5) == 0.0);
  REQUIRE(emp.cdf(1.0) == 0.25);
  REQUIRE(emp.cdf(2.5) == 0.5);
  REQUIRE(emp.cdf(4.0) == 1.0);
  REQUIRE(emp.cdf(9.0) == 1.0);
  REQUIRE(emp.quantile(0.0) == 1.0);
  REQUIRE(emp.quantile(1.0) == 4.0);
  const double med = emp.quantile(0.5);
  REQUIRE(med >= 2.0);
  REQUIRE(med <= 3.0);
  REQUIRE(emp.size() == 4);
}

TEST_CASE("critical values match the 99% constants") {
  REQUIRE(std::abs(ks_critical_99(2000) - 1.63 / std::sqrt(2000.0)) < 1e-15);
  const double expected = 1.63 * std::sqrt((1000.0 + 4000.0) / (1000.0 * 4000.0));
  REQUIRE(std::abs(ks_critical_99(1000, 4000) - expected) < 1e-15);
}

TEST_CASE("frequency table counts and normalizes") {
  FrequencyTable table;
  table.add("(12)(13)");
  table.add("(12)(13)");
  table.add("(23)(12)");
  REQUIRE(table.total() == 3);
  REQUIRE(table.distinct() == 2);
  REQUIRE(table.count("(12)(13)") == 2);
  REQUIRE(table.count("missing") == 0);
  REQUIRE(std::abs(table.frequency("(23)(12)") - 1.0 / 3.0) < 1e-15);
  REQUIRE(table.most_frequent().first == "(12)(13)");
  REQUIRE(table.most_frequent().second == 2);
}
