#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "lcross/rng.hpp"

using namespace lcross;

TEST_CASE("same seed reproduces the stream bitwise") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("streams with the same seed differ") {
  Rng a(42, 0), b(42, 1);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64() ? 1 : 0;
  REQUIRE(same == 0);
}

TEST_CASE("derive_seed separates counters") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(7, i));
  REQUIRE(seen.size() == 10000);
}

TEST_CASE("uniform lies in (0,1] with the right mean") {
  Rng rng(1);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
    sum += u;
  }
  const double sigma = 1.0 / std::sqrt(12.0 * n);
  REQUIRE(std::abs(sum / n - 0.5) < 4.0 * sigma);
}

TEST_CASE("normal moments") {
  Rng rng(2);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  REQUIRE(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  REQUIRE(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("complex normal has unit second moment and no mean") {
  Rng rng(3);
  const int n = 200000;
  std::complex<double> sum{0.0, 0.0};
  double sum_norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    sum += z;
    sum_norm += std::norm(z);
  }
  REQUIRE(std::abs(sum / double(n)) < 5.0 / std::sqrt(double(n)));
  REQUIRE(std::abs(sum_norm / n - 1.0) < 4.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("uniform_below stays in range and covers it") {
  Rng rng(4);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t k = rng.uniform_below(6);
    REQUIRE(k < 6);
    seen.insert(k);
  }
  REQUIRE(seen.size() == 6);
}
