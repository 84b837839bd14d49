#include "rgm/lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rgm/analysis.hpp"

namespace rgm::lab {

namespace {

// Reserved stream addresses for lab-internal draws on the distance-noise tag.
constexpr std::uint64_t kRandomPairStream = 0xffffffff00000010ULL;
constexpr std::uint64_t kBatteryStream = 0xffffffff00000011ULL;

/// Runs f(t) for t in [0, trials), partitioned over jobs threads. Callers
/// write results into per-trial slots, so the reduction order is fixed.
template <class F>
void for_each_trial(long trials, int jobs, F&& f) {
  if (jobs <= 1 || trials < 2 * jobs) {
    for (long t = 0; t < trials; ++t) f(t);
    return;
  }
  std::vector<std::thread> threads;
  const long chunk = (trials + jobs - 1) / jobs;
  for (int w = 0; w < jobs; ++w) {
    const long lo = w * chunk;
    const long hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&f, lo, hi] {
      for (long t = lo; t < hi; ++t) f(t);
    });
  }
  for (auto& th : threads) th.join();
}

stats::Estimate estimate_from_values(const std::vector<double>& values) {
  stats::RunningStat acc;
  for (double v : values) acc.add(v);
  return acc.estimate();
}

void check_pair_list(int n, const std::vector<std::pair<int, int>>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge list: invalid vertex pair");
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      auto [c, d] = edges[j];
      if ((a == c && b == d) || (a == d && b == c))
        throw std::invalid_argument("edge list: duplicate pair");
    }
  }
}

struct SetAccumulator {
  std::vector<std::pair<int, int>> edges;
  std::vector<long> marginal_counts;
  long joint_count = 0;
};

EdgeSetCheck evaluate_set(const SetAccumulator& acc, long trials) {
  EdgeSetCheck check;
  check.edges = acc.edges;
  const double t = static_cast<double>(trials);
  check.joint = static_cast<double>(acc.joint_count) / t;
  std::vector<double> marginals(acc.edges.size());
  for (std::size_t e = 0; e < acc.edges.size(); ++e)
    marginals[e] = static_cast<double>(acc.marginal_counts[e]) / t;

  check.product = 1.0;
  for (double m : marginals) check.product *= m;

  // Delta-method error of joint - product; covariances dropped, which only
  // widens the interval in the independent case.
  double var = check.joint * (1.0 - check.joint) / t;
  for (std::size_t e = 0; e < marginals.size(); ++e) {
    double others = 1.0;
    for (std::size_t o = 0; o < marginals.size(); ++o)
      if (o != e) others *= marginals[o];
    var += others * others * marginals[e] * (1.0 - marginals[e]) / t;
  }
  check.std_error = std::sqrt(var);
  const double diff = check.joint - check.product;
  if (check.std_error > 0.0) {
    check.z = diff / check.std_error;
  } else {
    check.z = diff == 0.0 ? 0.0 : (diff > 0.0 ? 1e9 : -1e9);
  }
  return check;
}

IndependenceReport run_battery(const ModelSpec& model, int n, int k, long trials,
                               double alpha, std::uint64_t master_seed, int battery,
                               bool disjoint) {
  if (trials < 1000)
    throw std::invalid_argument("independence check: trials must be >= 1000");
  if (k < 1) throw std::invalid_argument("independence check: k must be >= 1");
  if (disjoint && 2 * k > n)
    throw std::invalid_argument("ide_check: k too large for n (needs 2k <= n)");
  if (!disjoint && k > n * (n - 1) / 2)
    throw std::invalid_argument("pos_check: k exceeds the number of pairs");

  // Draw the battery of edge sets from a reserved stream.
  CounterStream battery_stream(RngKey{master_seed, 0, StreamTag::DistanceNoise},
                               kBatteryStream);
  std::vector<SetAccumulator> sets(static_cast<std::size_t>(battery));
  for (auto& acc : sets) {
    if (disjoint) {
      auto perm = random_permutation(n, battery_stream);
      for (int e = 0; e < k; ++e) {
        acc.edges.emplace_back(perm[static_cast<std::size_t>(2 * e)],
                               perm[static_cast<std::size_t>(2 * e + 1)]);
      }
    } else {
      while (static_cast<int>(acc.edges.size()) < k) {
        const int a = static_cast<int>(battery_stream.next_index(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(battery_stream.next_index(static_cast<std::uint64_t>(n - 1)));
        if (b >= a) ++b;
        const bool dup = std::any_of(acc.edges.begin(), acc.edges.end(), [&](auto pr) {
          return (pr.first == a && pr.second == b) || (pr.first == b && pr.second == a);
        });
        if (!dup) acc.edges.emplace_back(a, b);
      }
    }
    acc.marginal_counts.assign(acc.edges.size(), 0);
  }

  for (long t = 0; t < trials; ++t) {
    const LabeledGraph g = sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
    for (auto& acc : sets) {
      bool all = true;
      for (std::size_t e = 0; e < acc.edges.size(); ++e) {
        const bool present = g.edge(acc.edges[e].first, acc.edges[e].second);
        if (present) ++acc.marginal_counts[e];
        all = all && present;
      }
      if (all) ++acc.joint_count;
    }
  }

  IndependenceReport report;
  report.alpha = alpha;
  report.trials = trials;
  report.k = k;
  const double z_crit =
      stats::normal_quantile(1.0 - alpha / (2.0 * static_cast<double>(battery)));
  double worst_score = -1.0;
  for (const auto& acc : sets) {
    EdgeSetCheck check = evaluate_set(acc, trials);
    if (disjoint) {
      check.ok = std::abs(check.z) <= z_crit;
    } else {
      check.ok = check.joint >= check.product - 3.0 * check.std_error;
    }
    report.pass = report.pass && check.ok;
    const double score = disjoint ? std::abs(check.z) : -check.z;
    if (score > worst_score) {
      worst_score = score;
      report.worst_index = report.sets.size();
    }
    report.sets.push_back(std::move(check));
  }
  return report;
}

}  // namespace

stats::Estimate estimate(const ModelSpec& model, int n, long trials,
                         const Statistic& statistic, std::uint64_t master_seed,
                         int jobs) {
  if (trials < 30) throw std::invalid_argument("estimate: trials must be >= 30");
  std::vector<double> values(static_cast<std::size_t>(trials));
  long successes = 0;  // connectivity indicator path
  for_each_trial(trials, jobs, [&](long t) {
    const LabeledGraph g = sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
    switch (statistic.kind) {
      case StatisticKind::IsolatedCount:
        values[static_cast<std::size_t>(t)] = analyze(g).isolated_count;
        break;
      case StatisticKind::AvgDegree:
        values[static_cast<std::size_t>(t)] = average_degree(g);
        break;
      case StatisticKind::ConnectivityIndicator:
        values[static_cast<std::size_t>(t)] = is_beta_connected(g, statistic.beta) ? 1.0 : 0.0;
        break;
    }
  });
  if (statistic.kind == StatisticKind::ConnectivityIndicator) {
    for (double v : values) successes += v > 0.5 ? 1 : 0;
    return stats::proportion_estimate(successes, trials);
  }
  return estimate_from_values(values);
}

double isolated_lower_bound(int n, double dbar) {
  if (n < 2) throw std::invalid_argument("isolated_lower_bound: n must be >= 2");
  if (dbar < 0.0 || dbar > static_cast<double>(n - 1))
    throw std::invalid_argument("isolated_lower_bound: dbar must lie in [0, n-1]");
  return static_cast<double>(n) *
         std::pow(1.0 - dbar / static_cast<double>(n - 1), n - 1);
}

BoundReport verify_isolation_bound(const ModelSpec& model, int n, long trials,
                                   std::uint64_t master_seed, int jobs) {
  const ModelFlags f = model.flags();
  if (!f.local || !f.name_invariant) {
    throw std::invalid_argument(
        "verify_isolation_bound: model must be local and name invariant "
        "(the floor's class hypotheses)");
  }
  if (trials < 100)
    throw std::invalid_argument("verify_isolation_bound: trials must be >= 100");

  std::vector<double> isolated(static_cast<std::size_t>(trials));
  std::vector<double> degrees(static_cast<std::size_t>(trials));
  for_each_trial(trials, jobs, [&](long t) {
    const LabeledGraph g = sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
    const ComponentSummary s = analyze(g);
    isolated[static_cast<std::size_t>(t)] = s.isolated_count;
    degrees[static_cast<std::size_t>(t)] =
        static_cast<double>(s.degree_sum) / static_cast<double>(n);
  });

  BoundReport report;
  report.n = n;
  report.empirical_mean_isolated = estimate_from_values(isolated);
  report.empirical_avg_degree = estimate_from_values(degrees);

  const double nm1 = static_cast<double>(n - 1);
  const auto clamp_d = [&](double d) { return std::clamp(d, 0.0, nm1); };
  const double d_hat = report.empirical_avg_degree.mean;
  const double d_se = report.empirical_avg_degree.std_error;
  report.bound_value = isolated_lower_bound(n, clamp_d(d_hat));

  // Monte Carlo resolution slack (rule of three): counts are integers, so an
  // event unobserved in `trials` trials still admits a mean up to ~3/trials;
  // without this, an all-zero sample (zero Welford variance) would "violate"
  // any strictly positive floor, however tiny.
  const double resolution = 3.0 / static_cast<double>(trials);
  const double iso_hi = report.empirical_mean_isolated.mean +
                        3.0 * report.empirical_mean_isolated.std_error + resolution;
  const double bound_at_low_d = isolated_lower_bound(n, clamp_d(d_hat - 3.0 * d_se));
  const double bound_at_high_d = isolated_lower_bound(n, clamp_d(d_hat + 3.0 * d_se));
  if (iso_hi >= bound_at_low_d) {
    report.verdict = BoundReport::Verdict::Holds;
  } else if (iso_hi < bound_at_high_d) {
    report.verdict = BoundReport::Verdict::Violated;
  } else {
    report.verdict = BoundReport::Verdict::Inconclusive;
  }
  return report;
}

SweepReport tradeoff_sweep(const std::function<ModelSpec(int)>& family, double C,
                           const std::vector<int>& n_grid, BetaRule rule, long trials,
                           std::uint64_t master_seed, int jobs) {
  if (n_grid.empty()) throw std::invalid_argument("tradeoff_sweep: empty grid");
  if (C < 0.0) throw std::invalid_argument("tradeoff_sweep: C must be nonnegative");

  SweepReport report;
  report.C = C;
  report.rule = rule;
  report.grid_min_floor = 1.0;

  for (int n : n_grid) {
    const ModelSpec model = family(n);
    const double beta_n =
        rule == BetaRule::One ? 1.0 : 1.0 - 1.0 / std::sqrt(static_cast<double>(n));

    std::vector<double> iso_frac(static_cast<std::size_t>(trials));
    std::vector<double> degrees(static_cast<std::size_t>(trials));
    std::vector<double> connected(static_cast<std::size_t>(trials));
    for_each_trial(trials, jobs, [&](long t) {
      const LabeledGraph g =
          sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
      const ComponentSummary s = analyze(g);
      iso_frac[static_cast<std::size_t>(t)] =
          static_cast<double>(s.isolated_count) / static_cast<double>(n);
      degrees[static_cast<std::size_t>(t)] =
          static_cast<double>(s.degree_sum) / static_cast<double>(n);
      connected[static_cast<std::size_t>(t)] =
          s.largest_size >=
                  static_cast<int>(std::ceil(beta_n * static_cast<double>(n) - 1e-9))
              ? 1.0
              : 0.0;
    });

    SweepRow row;
    row.n = n;
    row.beta_n = beta_n;
    row.avg_degree = estimate_from_values(degrees);
    row.isolated_fraction = estimate_from_values(iso_frac);
    long conn_count = 0;
    for (double v : connected) conn_count += v > 0.5 ? 1 : 0;
    row.connected_prob = stats::proportion_estimate(conn_count, trials);
    row.floor_value = std::pow(
        1.0 - std::min(C, static_cast<double>(n - 1)) / static_cast<double>(n - 1),
        n - 1);
    row.bd_ok = row.avg_degree.mean <= C + 3.0 * row.avg_degree.std_error;
    report.grid_min_floor = std::min(report.grid_min_floor, row.floor_value);
    report.rows.push_back(std::move(row));
  }
  for (auto& row : report.rows) {
    row.markov_ceiling = std::min(1.0, (1.0 - report.grid_min_floor) / row.beta_n);
  }
  return report;
}

JointProbabilityReport edge_joint_probability(const ModelSpec& model, int n,
                                              const std::vector<std::pair<int, int>>& edges,
                                              long trials, std::uint64_t master_seed) {
  if (trials < 1000)
    throw std::invalid_argument("edge_joint_probability: trials must be >= 1000");
  check_pair_list(n, edges);

  long joint_count = 0;
  std::vector<long> marginal_counts(edges.size(), 0);
  for (long t = 0; t < trials; ++t) {
    const LabeledGraph g = sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
    bool all = true;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const bool present = g.edge(edges[e].first, edges[e].second);
      if (present) ++marginal_counts[e];
      all = all && present;
    }
    if (all) ++joint_count;  // empty conjunction counts every trial
  }

  JointProbabilityReport report;
  report.joint = stats::proportion_estimate(joint_count, trials);
  for (long c : marginal_counts)
    report.marginals.push_back(stats::proportion_estimate(c, trials));
  return report;
}

IndependenceReport ide_check(const ModelSpec& model, int n, int k, long trials,
                             double alpha, std::uint64_t master_seed, int battery) {
  return run_battery(model, n, k, trials, alpha, master_seed, battery, true);
}

IndependenceReport pos_check(const ModelSpec& model, int n, int k, long trials,
                             double alpha, std::uint64_t master_seed, int battery) {
  return run_battery(model, n, k, trials, alpha, master_seed, battery, false);
}

ExchangeabilityReport exchangeability_test(const ModelSpec& model, int n, long trials,
                                           double alpha, std::uint64_t master_seed) {
  if (trials < 1000)
    throw std::invalid_argument("exchangeability_test: trials must be >= 1000");
  if (n < 2) throw std::invalid_argument("exchangeability_test: n must be >= 2");

  constexpr int kDegreeCap = 6;
  const auto bin_id = [](int d1, int d2, bool e) {
    return static_cast<std::uint64_t>((d1 * (kDegreeCap + 1) + d2) * 2 + (e ? 1 : 0));
  };

  std::map<std::uint64_t, std::pair<long, long>> counts;
  for (long t = 0; t < trials; ++t) {
    // Fixed pair (0, 1).
    const LabeledGraph ga =
        sample_graph(model, n, {master_seed, static_cast<std::uint64_t>(t)});
    counts[bin_id(std::min(ga.degree(0), kDegreeCap), std::min(ga.degree(1), kDegreeCap),
                  ga.edge(0, 1))]
        .first++;

    // Independent realization, uniformly random pair.
    const RngKey kb{master_seed, static_cast<std::uint64_t>(trials + t)};
    CounterStream pair_stream(kb.with_tag(StreamTag::DistanceNoise), kRandomPairStream);
    const int i = static_cast<int>(pair_stream.next_index(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(pair_stream.next_index(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    const LabeledGraph gb = sample_graph(model, n, kb);
    counts[bin_id(std::min(gb.degree(i), kDegreeCap), std::min(gb.degree(j), kDegreeCap),
                  gb.edge(i, j))]
        .second++;
  }

  ExchangeabilityReport report;
  report.alpha = alpha;
  report.statistic_note =
      "(degree of first index, degree of second index, edge indicator); "
      "degrees capped at 6; necessary, not sufficient, for name invariance";
  report.test = stats::two_sample_chi_square(stats::pool_sparse_bins(counts, 10));
  report.inconclusive = report.test.inconclusive;
  report.pass = !report.inconclusive && report.test.p_value >= alpha;
  return report;
}

std::vector<double> definetti_running_averages(const ModelSpec& model, int anchor,
                                               int N, const RngKey& key) {
  if (N < 1) throw std::invalid_argument("definetti: N must be >= 1");
  if (anchor < 0 || anchor > N)
    throw std::invalid_argument("definetti: anchor out of range");
  if (!model.flags().local)
    throw std::invalid_argument("definetti: requires a local model");
  if (model.impl().fixed_n())
    throw std::invalid_argument("definetti: model cannot extend beyond its fixed n");

  // The proof's device: nothing prevents extending the edge sequence from the
  // anchor with further node variables and fresh independent uniforms.
  const NodeSample nodes = sample_nodes(model, N + 1, key);
  const RngKey edge_key = key.with_tag(StreamTag::EdgeRandomization);
  std::vector<double> averages;
  averages.reserve(static_cast<std::size_t>(N));
  double sum = 0.0;
  long count = 0;
  for (int j = 0; j <= N; ++j) {
    if (j == anchor) continue;
    const double xi = uniform01_pair(edge_key, std::min(anchor, j), std::max(anchor, j));
    sum += model.impl().edge(nodes, anchor, j, xi) ? 1.0 : 0.0;
    ++count;
    averages.push_back(sum / static_cast<double>(count));
  }
  return averages;
}

std::vector<double> definetti_final_averages(const ModelSpec& model, int anchor,
                                             int N, long trials,
                                             std::uint64_t master_seed, int jobs) {
  std::vector<double> finals(static_cast<std::size_t>(trials));
  for_each_trial(trials, jobs, [&](long t) {
    const auto averages = definetti_running_averages(
        model, anchor, N, {master_seed, static_cast<std::uint64_t>(t)});
    finals[static_cast<std::size_t>(t)] = averages.back();
  });
  return finals;
}

}  // namespace rgm::lab
