#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "rgm/analysis.hpp"
#include "rgm/model.hpp"
#include "rgm/stats.hpp"
#include "rgm/zoo.hpp"

using namespace rgm;

namespace {

NodeSample real_points(std::vector<std::vector<double>> pts) {
  NodeSample s;
  s.n = static_cast<int>(pts.size());
  for (auto& p : pts) s.points.push_back(RealVector{std::move(p)});
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("zoo");

TEST_CASE("mixture law validation and moments") {
  CHECK_THROWS(MixtureLaw::beta(0.0, 1.0).validate());
  CHECK_THROWS(MixtureLaw::beta(1.0, -2.0).validate());
  CHECK_THROWS(MixtureLaw::two_point(-0.1, 0.5, 0.5).validate());
  CHECK_THROWS(MixtureLaw::two_point(0.1, 1.5, 0.5).validate());
  CHECK_THROWS(MixtureLaw::two_point(0.1, 0.5, 1.5).validate());
  CHECK_NOTHROW(MixtureLaw::uniform01().validate());

  CHECK(MixtureLaw::uniform01().mean() == doctest::Approx(0.5));
  CHECK(MixtureLaw::beta(2, 3).mean() == doctest::Approx(0.4));
  CHECK(MixtureLaw::two_point(0.2, 0.8, 0.25).mean() ==
        doctest::Approx(0.25 * 0.2 + 0.75 * 0.8));

  // Uniform latent: E = 1/2, E of the square = 1/3.
  CounterStream s(RngKey{51, 0, StreamTag::NodeSampling}, 0);
  const auto law = MixtureLaw::uniform01();
  double m1 = 0, m2 = 0;
  const int N = 100000;
  for (int i = 0; i < N; ++i) {
    const double x = law.sample(s);
    m1 += x;
    m2 += x * x;
  }
  CHECK(m1 / N == doctest::Approx(0.5).epsilon(0.01));
  CHECK(m2 / N == doctest::Approx(1.0 / 3).epsilon(0.01));

  // Beta(2,2) sample mean.
  CounterStream s2(RngKey{52, 0, StreamTag::NodeSampling}, 0);
  const auto beta = MixtureLaw::beta(2, 2);
  double bm = 0;
  for (int i = 0; i < N; ++i) bm += beta.sample(s2);
  CHECK(bm / N == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("sphere cluster geometry") {
  const double R = 2.0, r = 0.3;
  const auto model = make_sphere_cluster(R, r, 0.2);
  for (int t = 0; t < 50; ++t) {
    const auto s = sample_nodes(model, 8, RngKey{61, static_cast<std::uint64_t>(t)});
    for (int i = 0; i < s.n; ++i) {
      const auto& v = std::get<RealVector>(s.points[static_cast<std::size_t>(i)]).v;
      REQUIRE(v.size() == 3);
      const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      CHECK(norm == doctest::Approx(R).epsilon(1e-9));
      // Points land in a cap of geodesic radius r: pairwise geodesic <= 2r.
      for (int j = 0; j < i; ++j) {
        const auto& w = std::get<RealVector>(s.points[static_cast<std::size_t>(j)]).v;
        const double dot = (v[0] * w[0] + v[1] * w[1] + v[2] * w[2]) / (R * R);
        const double geo = R * std::acos(std::clamp(dot, -1.0, 1.0));
        CHECK(geo <= 2 * r + 1e-9);
      }
    }
  }
  CHECK_THROWS(make_sphere_cluster(-1.0, 0.1, 0.1));
  CHECK_THROWS(make_sphere_cluster(1.0, 2.0, 0.1));
}

TEST_CASE("nearest-neighbor edges on crafted point sets") {
  const auto model = make_knn(1);
  const auto& impl = model.impl();
  CHECK_FALSE(model.flags().local);
  CHECK(model.flags().name_invariant);

  // Collinear 0, 1, 2.1: middle point is everyone's nearest neighbor; the
  // outer pair is not linked.
  auto s = real_points({{0.0, 0.0}, {1.0, 0.0}, {2.1, 0.0}});
  CHECK(impl.edge(s, 0, 1, 0.5));
  CHECK(impl.edge(s, 1, 2, 0.5));
  CHECK_FALSE(impl.edge(s, 0, 2, 0.5));

  // Symmetric tie at distance 1 from the middle point: resolved toward the
  // lower index, but the union rule still links both outer points to it.
  s = real_points({{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}});
  CHECK(impl.edge(s, 0, 1, 0.5));
  CHECK(impl.edge(s, 0, 2, 0.5));
  CHECK_FALSE(impl.edge(s, 1, 2, 0.5));

  // k >= n-1 links every pair.
  const auto big = make_knn(5);
  const auto g = sample_graph(big, 6, RngKey{71, 0});
  CHECK(g == complete_graph(6));

  CHECK_THROWS(make_knn(0));
}

TEST_CASE("explicit distributions validate and sample with the right frequencies") {
  ExplicitDistribution bad;
  bad.n = 3;
  bad.atoms.emplace_back(path_graph(3), 0.5);
  CHECK_THROWS(make_explicit(bad));  // probabilities not summing to 1

  ExplicitDistribution dist;
  dist.n = 3;
  dist.atoms.emplace_back(path_graph(3), 0.7);
  dist.atoms.emplace_back(complete_graph(3), 0.3);
  const auto model = make_explicit(dist);
  CHECK(model.impl().fixed_n() == 3);

  long c_path = 0, c_tri = 0;
  const long trials = 20000;
  for (long t = 0; t < trials; ++t) {
    const auto g = sample_graph(model, 3, RngKey{73, static_cast<std::uint64_t>(t)});
    if (g == path_graph(3))
      ++c_path;
    else if (g == complete_graph(3))
      ++c_tri;
    else
      FAIL("sampled a graph outside the support");
  }
  const auto gof = stats::chi_square_gof({c_path, c_tri}, {0.7, 0.3});
  CHECK(gof.p_value > 0.001);
}

TEST_CASE("two-outcome model concentrates mass as designed") {
  const int n = 16;  // 1/sqrt(16) = 1/4 of trials come out empty
  const auto model = make_footnote2(n);
  long empty = 0;
  const long trials = 20000;
  for (long t = 0; t < trials; ++t) {
    const auto g = sample_graph(model, n, RngKey{79, static_cast<std::uint64_t>(t)});
    if (g.edge_count() == 0)
      ++empty;
    else
      REQUIRE(g == path_graph(n));
  }
  CHECK(static_cast<double>(empty) / trials == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("bounded-degree connected enumeration") {
  // n = 3: the three labeled paths and the triangle.
  const auto& masks3 = connected_maxdeg3_masks(3);
  std::set<std::uint64_t> got(masks3.begin(), masks3.end());
  std::set<std::uint64_t> want;
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto g = LabeledGraph::from_mask(3, m);
    if (is_connected(g)) want.insert(m);
  }
  CHECK(want.size() == 4);
  CHECK(got == want);

  // Independent brute-force filter for n <= 6.
  for (int n = 2; n <= 6; ++n) {
    long count = 0;
    const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t m = 0; m < total; ++m) {
      const auto g = LabeledGraph::from_mask(n, m);
      bool ok = is_connected(g);
      for (int i = 0; ok && i < n; ++i) ok = g.degree(i) <= 3;
      if (ok) ++count;
    }
    CHECK(static_cast<long>(connected_maxdeg3_masks(n).size()) == count);
  }

  // Uniform sampling over the enumerated support.
  const auto model = make_connected_maxdeg3(3);
  std::map<std::uint64_t, long> freq;
  const long trials = 10000;
  for (long t = 0; t < trials; ++t)
    freq[sample_graph(model, 3, RngKey{83, static_cast<std::uint64_t>(t)}).mask()]++;
  CHECK(freq.size() == 4);
  for (const auto& [mask, c] : freq)
    CHECK(static_cast<double>(c) / trials == doctest::Approx(0.25).epsilon(0.1));

  CHECK_THROWS(make_connected_maxdeg3(1));
  CHECK_THROWS(make_connected_maxdeg3(9));
}

TEST_CASE("index-dependent model has the advertised marginals") {
  const auto model = make_rigged(0.9, 0.1);
  long e01 = 0, e02 = 0;
  const long trials = 10000;
  for (long t = 0; t < trials; ++t) {
    const auto g = sample_graph(model, 4, RngKey{89, static_cast<std::uint64_t>(t)});
    e01 += g.edge(0, 1);
    e02 += g.edge(0, 2);
  }
  CHECK(static_cast<double>(e01) / trials == doctest::Approx(0.9).epsilon(0.02));
  CHECK(static_cast<double>(e02) / trials == doctest::Approx(0.1).epsilon(0.15));
}

TEST_SUITE_END();
