#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace rgm::stats {

/// Monte Carlo point estimate with a normal-approximation standard error.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
  double ci_level = 0.99;
};

/// Welford accumulator; order-independent up to floating point rounding, and
/// mergeable so trial partitions reduce deterministically.
class RunningStat {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStat& other);

  long count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;
  Estimate estimate(double ci_level = 0.99) const;

 private:
  long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Half-width of the Wilson score interval at one standard normal unit; used
/// as the standard error of an empirical proportion.
double wilson_std_error(double p_hat, long trials);

Estimate proportion_estimate(long successes, long trials, double ci_level = 0.99);

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int df);

/// Standard normal quantile.
double normal_quantile(double p);

struct ChiSquareTwoSample {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  int bins = 0;
  int low_expectation_bins = 0;
  bool inconclusive = false;  // expected count < 5 in more than 20% of bins
};

/// Two-sample chi-square over binned outcomes; counts maps a bin id to the
/// per-sample counts.
ChiSquareTwoSample two_sample_chi_square(
    const std::map<std::uint64_t, std::pair<long, long>>& counts);

/// Merges sparse bins (ascending bin id, greedy) until every pooled bin has a
/// combined count of at least min_total. Keeps the chi-square approximation
/// usable when the outcome space is much larger than the sample.
std::map<std::uint64_t, std::pair<long, long>> pool_sparse_bins(
    const std::map<std::uint64_t, std::pair<long, long>>& counts, long min_total);

struct GoodnessOfFit {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

GoodnessOfFit chi_square_gof(const std::vector<long>& observed,
                             const std::vector<double>& probabilities);

/// One-sample Kolmogorov-Smirnov p-value of the samples against Uniform[0,1]
/// (asymptotic distribution with the Stephens small-sample correction).
double ks_uniform_p_value(std::vector<double> samples);

}  // namespace rgm::stats
