#include "rgm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace rgm::stats {

void RunningStat::merge(const RunningStat& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count_ + other.count_);
  const double delta = other.mean_ - mean_;
  m2_ += other.m2_ +
         delta * delta * static_cast<double>(count_) * static_cast<double>(other.count_) / total;
  mean_ += delta * static_cast<double>(other.count_) / total;
  count_ += other.count_;
}

double RunningStat::variance() const {
  return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

Estimate RunningStat::estimate(double ci_level) const {
  if (count_ < 1) throw std::logic_error("RunningStat: no samples");
  Estimate e;
  e.mean = mean_;
  e.std_error = std::sqrt(variance() / static_cast<double>(count_));
  e.trials = count_;
  e.ci_level = ci_level;
  return e;
}

double wilson_std_error(double p_hat, long trials) {
  if (trials < 1) throw std::invalid_argument("wilson_std_error: trials must be >= 1");
  const double t = static_cast<double>(trials);
  // z = 1: half-width of the one-sigma Wilson interval.
  return std::sqrt(p_hat * (1.0 - p_hat) / t + 1.0 / (4.0 * t * t)) / (1.0 + 1.0 / t);
}

Estimate proportion_estimate(long successes, long trials, double ci_level) {
  Estimate e;
  e.mean = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = wilson_std_error(e.mean, trials);
  e.trials = trials;
  e.ci_level = ci_level;
  return e;
}

double chi_square_p_value(double statistic, int df) {
  if (df < 1) return 1.0;
  if (statistic <= 0.0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

double normal_quantile(double p) {
  boost::math::normal dist;
  return boost::math::quantile(dist, p);
}

ChiSquareTwoSample two_sample_chi_square(
    const std::map<std::uint64_t, std::pair<long, long>>& counts) {
  ChiSquareTwoSample out;
  long k1 = 0, k2 = 0;
  for (const auto& [bin, c] : counts) {
    k1 += c.first;
    k2 += c.second;
  }
  out.bins = static_cast<int>(counts.size());
  if (out.bins < 2 || k1 == 0 || k2 == 0) {
    out.inconclusive = true;
    return out;
  }
  const double dk1 = static_cast<double>(k1);
  const double dk2 = static_cast<double>(k2);
  double stat = 0.0;
  for (const auto& [bin, c] : counts) {
    const double o1 = static_cast<double>(c.first);
    const double o2 = static_cast<double>(c.second);
    const double row = o1 + o2;
    // Expected counts under homogeneity.
    if (dk1 * row / (dk1 + dk2) < 5.0 || dk2 * row / (dk1 + dk2) < 5.0) {
      ++out.low_expectation_bins;
    }
    const double term = dk2 * o1 - dk1 * o2;
    stat += term * term / row;
  }
  stat /= dk1 * dk2;
  out.statistic = stat;
  out.df = out.bins - 1;
  out.p_value = chi_square_p_value(stat, out.df);
  out.inconclusive =
      static_cast<double>(out.low_expectation_bins) > 0.2 * static_cast<double>(out.bins);
  return out;
}

std::map<std::uint64_t, std::pair<long, long>> pool_sparse_bins(
    const std::map<std::uint64_t, std::pair<long, long>>& counts, long min_total) {
  std::map<std::uint64_t, std::pair<long, long>> pooled;
  std::uint64_t current_id = 0;
  std::pair<long, long> acc{0, 0};
  bool open = false;
  for (const auto& [bin, c] : counts) {
    if (!open) {
      current_id = bin;
      open = true;
    }
    acc.first += c.first;
    acc.second += c.second;
    if (acc.first + acc.second >= min_total) {
      pooled[current_id] = acc;
      acc = {0, 0};
      open = false;
    }
  }
  if (open) {
    // Remainder joins the last closed bin, or stands alone if none closed.
    if (!pooled.empty()) {
      auto& last = pooled.rbegin()->second;
      last.first += acc.first;
      last.second += acc.second;
    } else {
      pooled[current_id] = acc;
    }
  }
  return pooled;
}

GoodnessOfFit chi_square_gof(const std::vector<long>& observed,
                             const std::vector<double>& probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  long total = 0;
  for (long o : observed) total += o;
  GoodnessOfFit out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probabilities[i] * static_cast<double>(total);
    if (expected <= 0.0) {
      if (observed[i] != 0)
        throw std::invalid_argument("chi_square_gof: observation in a zero-probability bin");
      continue;
    }
    const double d = static_cast<double>(observed[i]) - expected;
    out.statistic += d * d / expected;
  }
  out.df = static_cast<int>(observed.size()) - 1;
  out.p_value = chi_square_p_value(out.statistic, out.df);
  return out;
}

double ks_uniform_p_value(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("ks_uniform_p_value: no samples");
  std::sort(samples.begin(), samples.end());
  const auto t = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = std::clamp(samples[i], 0.0, 1.0);
    d = std::max(d, (static_cast<double>(i) + 1.0) / t - x);
    d = std::max(d, x - static_cast<double>(i) / t);
  }
  const double lambda = (std::sqrt(t) + 0.12 + 0.11 / std::sqrt(t)) * d;
  // Asymptotic Kolmogorov tail sum.
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term =
        2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace rgm::stats
