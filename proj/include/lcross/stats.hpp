#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcross {

// Sorted-sample empirical distribution with exact Kolmogorov-Smirnov sup
// (evaluated at both sides of every jump).
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalDistribution: no samples");
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

  double cdf(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return double(it - sorted_.begin()) / double(sorted_.size());
  }

  double quantile(double p) const {
    if (p <= 0.0) return sorted_.front();
    if (p >= 1.0) return sorted_.back();
    const double idx = p * double(sorted_.size()) - 0.5;
    const double lo = std::floor(idx);
    const std::size_t i = static_cast<std::size_t>(std::max(0.0, lo));
    const std::size_t j = std::min(sorted_.size() - 1, i + 1);
    const double t = idx - lo;
    return sorted_[i] * (1.0 - t) + sorted_[j] * t;
  }

 private:
  std::vector<double> sorted_;
};

// sup_x |F_n(x) - F(x)| for a continuous reference CDF.
inline double ks_distance(const EmpiricalDistribution& emp,
                          const std::function<double(double)>& cdf) {
  const auto& s = emp.sorted();
  const double n = double(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max(d, std::abs(f - double(i) / n));
    d = std::max(d, std::abs(double(i + 1) / n - f));
  }
  return d;
}

// Two-sample sup distance over the union of jump points. Ties across the two
// samples are advanced jointly so that only attained CDF pairs are compared.
inline double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const auto& sa = a.sorted();
  const auto& sb = b.sorted();
  const double n = double(sa.size()), m = double(sb.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      const double x = sa[i];
      while (i < sa.size() && sa[i] == x) ++i;
      while (j < sb.size() && sb[j] == x) ++j;
    }
    d = std::max(d, std::abs(double(i) / n - double(j) / m));
  }
  return d;
}

inline double ks_critical_99(std::size_t n) { return 1.63 / std::sqrt(double(n)); }

inline double ks_critical_99(std::size_t n, std::size_t m) {
  return 1.63 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

// Frequency table over string keys, with helpers for comparing counts.
class FrequencyTable {
 public:
  void add(const std::string& key, std::size_t count = 1) {
    counts_[key] += count;
    total_ += count;
  }

  std::size_t count(const std::string& key) const {
    const auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  double frequency(const std::string& key) const {
    return total_ == 0 ? 0.0 : double(count(key)) / double(total_);
  }

  std::size_t total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  const std::map<std::string, std::size_t>& counts() const { return counts_; }

  std::pair<std::string, std::size_t> most_frequent() const {
    if (counts_.empty()) throw std::logic_error("FrequencyTable: empty");
    auto best = counts_.begin();
    for (auto it = counts_.begin(); it != counts_.end(); ++it)
      if (it->second > best->second) best = it;
    return *best;
  }

 private:
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

}  // namespace lcross
