#include <doctest.h>

#include <map>
#include <vector>

#include "rgm/lab.hpp"
#include "rgm/model.hpp"
#include "rgm/zoo.hpp"

using namespace rgm;

TEST_SUITE_BEGIN("model_core");

TEST_CASE("sampling is deterministic in the key and varies across trials") {
  const auto model = make_gnp(0.5);
  const RngKey key{17, 3};
  CHECK(sample_graph(model, 12, key) == sample_graph(model, 12, key));
  CHECK_FALSE(sample_graph(model, 12, key) == sample_graph(model, 12, key.with_trial(4)));
}

TEST_CASE("edge probability extremes") {
  const auto g0 = sample_graph(make_gnp(0.0), 10, RngKey{1, 0});
  CHECK(g0.edge_count() == 0);
  const auto g1 = sample_graph(make_gnp(1.0), 10, RngKey{1, 0});
  CHECK(g1 == complete_graph(10));
}

TEST_CASE("gnp edge density matches p") {
  const auto model = make_gnp(0.3);
  long edges = 0;
  const int n = 20;
  const long trials = 2000;
  for (long t = 0; t < trials; ++t)
    edges += static_cast<long>(
        sample_graph(model, n, RngKey{23, static_cast<std::uint64_t>(t)}).edge_count());
  const double density =
      static_cast<double>(edges) / (static_cast<double>(trials) * n * (n - 1) / 2);
  CHECK(density == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("mixture over uniform latent has density one half") {
  const auto model = make_mixture(MixtureLaw::uniform01());
  long edges = 0;
  const int n = 20;
  const long trials = 4000;
  for (long t = 0; t < trials; ++t)
    edges += static_cast<long>(
        sample_graph(model, n, RngKey{29, static_cast<std::uint64_t>(t)}).edge_count());
  const double density =
      static_cast<double>(edges) / (static_cast<double>(trials) * n * (n - 1) / 2);
  CHECK(density == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("disjoint gnp edges are independent") {
  // Joint presence of three disjoint edges ~= p^3.
  const auto r = lab::edge_joint_probability(make_gnp(0.4), 6, {{0, 1}, {2, 3}, {4, 5}},
                                             20000, 31);
  CHECK(r.joint.mean ==
        doctest::Approx(0.4 * 0.4 * 0.4).epsilon(1).scale(4 * r.joint.std_error + 1e-12));
  for (const auto& m : r.marginals)
    CHECK(m.mean == doctest::Approx(0.4).epsilon(1).scale(4 * m.std_error + 1e-12));
}

TEST_CASE("exchangeable wrapper permutes uniformly and flips the invariance flag") {
  const auto rigged = make_rigged(0.9, 0.1);
  CHECK_FALSE(rigged.flags().name_invariant);
  const auto wrapped = wrap_exchangeable(rigged);
  CHECK(wrapped.flags().name_invariant);
  // Locality of the base survives symmetrization.
  CHECK(wrapped.flags().local == rigged.flags().local);

  std::map<std::vector<int>, int> counts;
  const int N = 12000;
  for (int t = 0; t < N; ++t) {
    const auto s = sample_nodes(wrapped, 3, RngKey{37, static_cast<std::uint64_t>(t)});
    REQUIRE(s.perm.size() == 3);
    REQUIRE(s.base != nullptr);
    counts[s.perm]++;
  }
  CHECK(counts.size() == 6);
  for (const auto& [perm, c] : counts)
    CHECK(static_cast<double>(c) / N == doctest::Approx(1.0 / 6).epsilon(0.12));
}

TEST_CASE("wrapper equalizes the rigged marginals") {
  const auto wrapped = wrap_exchangeable(make_rigged(0.9, 0.1));
  // Every pair now has marginal (0.9 + 2*0.1)/3 at n=3... compute empirically
  // that the special and ordinary pairs agree.
  long e01 = 0, e12 = 0;
  const long trials = 20000;
  for (long t = 0; t < trials; ++t) {
    const auto g = sample_graph(wrapped, 3, RngKey{41, static_cast<std::uint64_t>(t)});
    e01 += g.edge(0, 1);
    e12 += g.edge(1, 2);
  }
  const double p01 = static_cast<double>(e01) / trials;
  const double p12 = static_cast<double>(e12) / trials;
  // Uniform pair choice: Pr(edge) = (1/3)*0.9 + (2/3)*0.1 = 0.3666...
  CHECK(p01 == doctest::Approx(11.0 / 30).epsilon(0.05));
  CHECK(p12 == doctest::Approx(11.0 / 30).epsilon(0.05));
}

TEST_CASE("wrapper refuses models without a node stage") {
  CHECK_THROWS(wrap_exchangeable(make_footnote2(9)));
}

TEST_SUITE_END();
