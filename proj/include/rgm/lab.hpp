#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rgm/model.hpp"
#include "rgm/stats.hpp"

namespace rgm::lab {

enum class StatisticKind { IsolatedCount, AvgDegree, ConnectivityIndicator };

struct Statistic {
  StatisticKind kind = StatisticKind::IsolatedCount;
  double beta = 1.0;  // connectivity indicator only

  static Statistic isolated_count() { return {StatisticKind::IsolatedCount, 1.0}; }
  static Statistic avg_degree() { return {StatisticKind::AvgDegree, 1.0}; }
  static Statistic connectivity_indicator(double beta) {
    return {StatisticKind::ConnectivityIndicator, beta};
  }
};

/// Mean and standard error of the chosen statistic over independent seeded
/// trials. The connectivity indicator is reported as a proportion with a
/// Wilson-interval standard error.
stats::Estimate estimate(const ModelSpec& model, int n, long trials,
                         const Statistic& statistic, std::uint64_t master_seed,
                         int jobs = 1);

/// The isolated-node floor n * (1 - dbar/(n-1))^(n-1).
double isolated_lower_bound(int n, double dbar);

struct BoundReport {
  int n = 0;
  stats::Estimate empirical_mean_isolated;
  stats::Estimate empirical_avg_degree;
  double bound_value = 0.0;  // floor evaluated at the empirical mean degree

  enum class Verdict { Holds, Violated, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
};

/// Checks the isolated-node floor against a Monte Carlo estimate. Requires a
/// model with local = true and name_invariant = true (the floor's
/// hypotheses); refuses otherwise.
BoundReport verify_isolation_bound(const ModelSpec& model, int n, long trials,
                                   std::uint64_t master_seed, int jobs = 1);

enum class BetaRule { One, OneMinusInvSqrt };

struct SweepRow {
  int n = 0;
  double beta_n = 1.0;
  stats::Estimate avg_degree;
  stats::Estimate isolated_fraction;
  stats::Estimate connected_prob;  // Pr(beta_n-connected)
  double floor_value = 0.0;        // (1 - C/(n-1))^(n-1)
  double markov_ceiling = 1.0;     // (1 - a)/beta_n with a the grid-min floor
  bool bd_ok = true;               // empirical dbar consistent with dbar <= C
};

struct SweepReport {
  double C = 0.0;
  BetaRule rule = BetaRule::One;
  double grid_min_floor = 0.0;
  std::vector<SweepRow> rows;
};

/// Degree/connectivity tradeoff sweep over a graph-size grid for a family of
/// models with expected average degree at most C.
SweepReport tradeoff_sweep(const std::function<ModelSpec(int)>& family, double C,
                           const std::vector<int>& n_grid, BetaRule rule, long trials,
                           std::uint64_t master_seed, int jobs = 1);

struct JointProbabilityReport {
  stats::Estimate joint;
  std::vector<stats::Estimate> marginals;
};

/// Empirical joint presence probability of the listed edges, with per-edge
/// marginals. An empty edge list yields joint = 1.
JointProbabilityReport edge_joint_probability(const ModelSpec& model, int n,
                                              const std::vector<std::pair<int, int>>& edges,
                                              long trials, std::uint64_t master_seed);

struct EdgeSetCheck {
  std::vector<std::pair<int, int>> edges;
  double joint = 0.0;
  double product = 0.0;
  double std_error = 0.0;  // of joint - product
  double z = 0.0;
  bool ok = true;
};

struct IndependenceReport {
  bool pass = true;
  double alpha = 0.01;
  long trials = 0;
  int k = 0;
  std::vector<EdgeSetCheck> sets;
  std::size_t worst_index = 0;
};

/// Tests independence of pairwise-disjoint edge sets: two-sided joint ==
/// product over a battery of random sets, Bonferroni-corrected at alpha.
IndependenceReport ide_check(const ModelSpec& model, int n, int k, long trials,
                             double alpha, std::uint64_t master_seed,
                             int battery = 20);

/// Tests positive correlation: one-sided joint >= product - 3 sigma over a
/// battery of random distinct (possibly overlapping) edge sets.
IndependenceReport pos_check(const ModelSpec& model, int n, int k, long trials,
                             double alpha, std::uint64_t master_seed,
                             int battery = 20);

struct ExchangeabilityReport {
  bool pass = false;
  bool inconclusive = false;
  double alpha = 0.01;
  stats::ChiSquareTwoSample test;
  // Passing is necessary, not sufficient, for name invariance; the statistic
  // vector used is recorded here.
  std::string statistic_note;
};

/// Compares the joint law of (degree of node 0, degree of node 1,
/// edge(0,1)) against the same statistic at a uniformly random index pair.
ExchangeabilityReport exchangeability_test(const ModelSpec& model, int n, long trials,
                                           double alpha, std::uint64_t master_seed);

/// Running averages of an infinite extension of edge indicators from the
/// anchor node: e_j = f(X_anchor, X_j, xi_{anchor j}) for N counterpart nodes.
/// Requires a local model that can be sampled at arbitrary sizes.
std::vector<double> definetti_running_averages(const ModelSpec& model, int anchor,
                                               int N, const RngKey& key);

/// Final running average per trial, for distributional tests of the mixing
/// variable.
std::vector<double> definetti_final_averages(const ModelSpec& model, int anchor,
                                             int N, long trials,
                                             std::uint64_t master_seed, int jobs = 1);

}  // namespace rgm::lab
