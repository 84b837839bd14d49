#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "rgm/lab.hpp"
#include "rgm/stats.hpp"
#include "rgm/zoo.hpp"

using namespace rgm;

TEST_SUITE_BEGIN("stats_lab");

TEST_CASE("running statistics merge order-independently") {
  stats::RunningStat a, b, all;
  const std::vector<double> xs{1.0, 4.0, -2.0, 7.5, 0.25, 3.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    (i < 3 ? a : b).add(xs[i]);
    all.add(xs[i]);
  }
  a.merge(b);
  CHECK(a.count() == all.count());
  CHECK(a.mean() == doctest::Approx(all.mean()));
  CHECK(a.variance() == doctest::Approx(all.variance()));
  CHECK(all.mean() == doctest::Approx(13.75 / 6));
}

TEST_CASE("proportion standard errors shrink like the square root of trials") {
  const auto e1 = stats::proportion_estimate(50, 100);
  const auto e2 = stats::proportion_estimate(5000, 10000);
  CHECK(e1.mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(e2.std_error < e1.std_error);
  CHECK(e1.std_error == doctest::Approx(0.05).epsilon(0.05));
  // Degenerate proportions still get a nonzero uncertainty.
  CHECK(stats::proportion_estimate(0, 100).std_error > 0.0);
  CHECK(stats::proportion_estimate(100, 100).std_error > 0.0);
}

TEST_CASE("distribution helpers match known values") {
  // Chi-square upper tails: P(X2_1 > 3.841) ~= 0.05, P(X2_2 > 5.991) ~= 0.05.
  CHECK(stats::chi_square_p_value(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(stats::chi_square_p_value(5.991, 2) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-4));
  CHECK(stats::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1).scale(1e-9));
}

TEST_CASE("two-sample chi-square accepts identical counts and flags sparse tables") {
  std::map<std::uint64_t, std::pair<long, long>> same{
      {0, {100, 100}}, {1, {200, 200}}, {2, {300, 300}}};
  const auto r = stats::two_sample_chi_square(same);
  CHECK_FALSE(r.inconclusive);
  CHECK(r.statistic == doctest::Approx(0.0).epsilon(1).scale(1e-9));
  CHECK(r.p_value > 0.99);

  std::map<std::uint64_t, std::pair<long, long>> sparse{
      {0, {1, 0}}, {1, {0, 1}}, {2, {1, 1}}, {3, {2, 0}}};
  CHECK(stats::two_sample_chi_square(sparse).inconclusive);
}

TEST_CASE("sparse bins pool to the requested minimum mass") {
  std::map<std::uint64_t, std::pair<long, long>> counts{
      {0, {1, 2}}, {1, {3, 1}}, {2, {50, 40}}, {3, {2, 2}}, {4, {1, 0}}};
  const auto pooled = stats::pool_sparse_bins(counts, 10);
  long total_before = 0, total_after = 0;
  for (const auto& [k, v] : counts) total_before += v.first + v.second;
  for (const auto& [k, v] : pooled) {
    total_after += v.first + v.second;
    CHECK(v.first + v.second >= 10);
  }
  CHECK(total_before == total_after);
}

TEST_CASE("uniformity test separates uniform from skewed samples") {
  std::vector<double> uniform, skewed;
  for (int i = 0; i < 1000; ++i) {
    uniform.push_back((i + 0.5) / 1000.0);
    skewed.push_back(std::pow((i + 0.5) / 1000.0, 2.0));
  }
  CHECK(stats::ks_uniform_p_value(uniform) > 0.01);
  CHECK(stats::ks_uniform_p_value(skewed) < 1e-6);
}

TEST_CASE("isolation floor evaluates exactly") {
  // Frozen against arbitrary-precision evaluation of n(1 - d/(n-1))^(n-1).
  CHECK(lab::isolated_lower_bound(100, 2.0) ==
        doctest::Approx(13.2592032271033414).epsilon(1e-12));
  CHECK(lab::isolated_lower_bound(50, 5.0) ==
        doctest::Approx(0.25617882582251038).epsilon(1e-12));
  CHECK(lab::isolated_lower_bound(1000, 2.0) ==
        doctest::Approx(135.06425132445781).epsilon(1e-12));
  CHECK(lab::isolated_lower_bound(10, 0.0) == doctest::Approx(10.0));
  CHECK(lab::isolated_lower_bound(10, 9.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(lab::isolated_lower_bound(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lab::isolated_lower_bound(10, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(lab::isolated_lower_bound(10, 10.0), std::invalid_argument);
}

TEST_CASE("statistic estimation on a known model") {
  const auto model = make_gnp(0.5);
  const auto deg = lab::estimate(model, 10, 2000, lab::Statistic::avg_degree(), 211);
  CHECK(deg.mean == doctest::Approx(4.5).epsilon(0.02));
  const auto iso = lab::estimate(model, 10, 2000, lab::Statistic::isolated_count(), 211);
  CHECK(iso.mean == doctest::Approx(10.0 * std::pow(0.5, 9)).epsilon(1).scale(0.02));
  const auto conn =
      lab::estimate(model, 10, 2000, lab::Statistic::connectivity_indicator(1.0), 211);
  CHECK(conn.mean > 0.8);
  CHECK(conn.std_error > 0.0);
  CHECK_THROWS(lab::estimate(model, 10, 5, lab::Statistic::avg_degree(), 211));
}

TEST_CASE("parallel estimation reproduces the sequential result") {
  const auto model = make_gnp(0.3);
  const auto seq = lab::estimate(model, 30, 400, lab::Statistic::avg_degree(), 223, 1);
  const auto par = lab::estimate(model, 30, 400, lab::Statistic::avg_degree(), 223, 4);
  CHECK(seq.mean == doctest::Approx(par.mean).epsilon(1e-12));
  CHECK(seq.std_error == doctest::Approx(par.std_error).epsilon(1e-9));
}

TEST_CASE("floor verification verdicts") {
  const auto holds = lab::verify_isolation_bound(make_gnp(0.1), 50, 400, 227);
  CHECK(holds.verdict == lab::BoundReport::Verdict::Holds);

  const auto mix = lab::verify_isolation_bound(
      make_mixture(MixtureLaw::uniform01()), 30, 400, 229);
  CHECK(mix.verdict == lab::BoundReport::Verdict::Holds);

  // Models outside the hypothesis class are refused.
  CHECK_THROWS_AS(lab::verify_isolation_bound(make_knn(3), 30, 400, 233),
                  std::invalid_argument);
  CHECK_THROWS_AS(lab::verify_isolation_bound(make_rigged(0.9, 0.1), 30, 400, 233),
                  std::invalid_argument);
}

TEST_CASE("joint edge probabilities") {
  const auto model = make_gnp(0.5);
  CHECK(lab::edge_joint_probability(model, 5, {}, 1000, 239).joint.mean ==
        doctest::Approx(1.0));
  const auto r = lab::edge_joint_probability(model, 5, {{0, 1}, {2, 3}}, 8000, 239);
  CHECK(r.joint.mean == doctest::Approx(0.25).epsilon(0.1));
  CHECK(r.marginals.size() == 2);
  CHECK_THROWS(lab::edge_joint_probability(model, 5, {{0, 1}, {1, 0}}, 2000, 239));
  CHECK_THROWS(lab::edge_joint_probability(model, 5, {{0, 5}}, 2000, 239));
}

TEST_CASE("independence checks separate product laws from mixtures") {
  const auto gnp = make_gnp(0.5);
  const auto mix = make_mixture(MixtureLaw::uniform01());

  const auto ide_gnp = lab::ide_check(gnp, 20, 2, 20000, 0.01, 241);
  CHECK(ide_gnp.pass);
  const auto ide_mix = lab::ide_check(mix, 20, 2, 20000, 0.01, 241);
  CHECK_FALSE(ide_mix.pass);  // joint 1/3 vs product 1/4 on disjoint pairs

  CHECK(lab::pos_check(gnp, 20, 2, 20000, 0.01, 251).pass);
  CHECK(lab::pos_check(mix, 20, 2, 20000, 0.01, 251).pass);
}

TEST_CASE("symmetry screen separates index-dependent models") {
  const auto rigged = make_rigged(0.9, 0.1);
  const auto bad = lab::exchangeability_test(rigged, 8, 10000, 0.01, 257);
  CHECK_FALSE(bad.inconclusive);
  CHECK_FALSE(bad.pass);

  const auto good = lab::exchangeability_test(wrap_exchangeable(rigged), 8, 10000, 0.01, 263);
  CHECK_FALSE(good.inconclusive);
  CHECK(good.pass);

  const auto gnp = lab::exchangeability_test(make_gnp(0.4), 8, 10000, 0.01, 269);
  CHECK(gnp.pass);
  CHECK(!gnp.statistic_note.empty());
}

TEST_CASE("running averages recover the edge-probability latent") {
  // Deterministic latent: final averages concentrate at p.
  const auto finals = lab::definetti_final_averages(make_gnp(0.3), 0, 10000, 30, 271);
  for (double f : finals) CHECK(f == doctest::Approx(0.3).epsilon(1).scale(0.015));

  // Running averages are prefixes of the same stream.
  const auto run = lab::definetti_running_averages(make_gnp(0.3), 0, 1000, RngKey{271, 0});
  CHECK(run.size() == 1000);
  CHECK(run.back() == doctest::Approx(0.3).epsilon(1).scale(0.05));

  // Two-point latent: averages cluster at the two support atoms.
  const auto two = lab::definetti_final_averages(
      make_mixture(MixtureLaw::two_point(0.1, 0.8, 0.5)), 0, 4000, 60, 277);
  for (double f : two) {
    const bool near_low = std::abs(f - 0.1) < 0.03;
    const bool near_high = std::abs(f - 0.8) < 0.03;
    CHECK((near_low || near_high));
  }

  // Fixed-size models cannot extend the node sequence.
  CHECK_THROWS(lab::definetti_final_averages(make_footnote2(9), 0, 100, 30, 281));
}

TEST_CASE("tradeoff sweep rows carry consistent analytic columns") {
  const auto family = [](int n) { return make_gnp(2.0 / (n - 1)); };
  const auto rep = lab::tradeoff_sweep(family, 2.0, {20, 40}, lab::BetaRule::OneMinusInvSqrt,
                                       200, 283);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.beta_n == doctest::Approx(1.0 - 1.0 / std::sqrt(row.n)));
    CHECK(row.floor_value ==
          doctest::Approx(std::pow(1.0 - 2.0 / (row.n - 1), row.n - 1)).epsilon(1e-12));
    CHECK(row.markov_ceiling <= 1.0 + 1e-12);
    CHECK(row.markov_ceiling ==
          doctest::Approx(std::min(1.0, (1.0 - rep.grid_min_floor) / row.beta_n)));
    CHECK(row.bd_ok);
    CHECK(row.avg_degree.mean == doctest::Approx(2.0).epsilon(0.15));
  }
  CHECK(rep.grid_min_floor ==
        doctest::Approx(std::min(rep.rows[0].floor_value, rep.rows[1].floor_value)));
}

TEST_SUITE_END();
