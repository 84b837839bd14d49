#include <doctest.h>

#include <variant>

#include "rgm/graph.hpp"
#include "rgm/model.hpp"
#include "rgm/representation.hpp"
#include "rgm/zoo.hpp"

using namespace rgm;

TEST_SUITE_BEGIN("representation");

TEST_CASE("local re-encoding reproduces the base realization exactly") {
  const auto base = make_gnp(0.5);
  const auto enc = encode_theorem1(base, 8);
  CHECK(enc.flags().local);
  for (int n = 3; n <= 8; ++n) {
    for (int t = 0; t < 50; ++t) {
      const RngKey key{101, static_cast<std::uint64_t>(t)};
      const auto got = sample_graph(enc, n, key);
      const auto want = sample_graph(base, n, coupled_base_key(key, n));
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("name-invariant re-encoding reproduces the base realization exactly") {
  const auto base = make_gnp(0.5);
  const auto enc = encode_theorem2(base, 8);
  CHECK(enc.flags().name_invariant);
  for (int n = 3; n <= 8; ++n) {
    for (int t = 0; t < 50; ++t) {
      const RngKey key{103, static_cast<std::uint64_t>(t)};
      REQUIRE(sample_graph(enc, n, key) ==
              sample_graph(base, n, coupled_base_key(key, n)));
    }
  }
}

TEST_CASE("node variables decode their own index") {
  const auto enc = encode_theorem1(make_gnp(0.3), 8);
  const auto s = sample_nodes(enc, 8, RngKey{107, 0});
  // Node 5's matrix for m = 8 carries 101 little-endian in the appended row.
  const auto& seq = std::get<MatrixSequence>(s.points[5]);
  CHECK(seq.extra_row);
  CHECK(seq.rows_for(8) == 9);
  CHECK(seq.at(8, 8, 0) == 1);
  CHECK(seq.at(8, 8, 1) == 0);
  CHECK(seq.at(8, 8, 2) == 1);
  for (int bit = 3; bit < 8; ++bit) CHECK(seq.at(8, 8, bit) == 0);
}

TEST_CASE("identical node variables under the name-invariant encoding") {
  const auto enc = encode_theorem2(make_gnp(0.3), 6);
  const auto s = sample_nodes(enc, 6, RngKey{109, 0});
  const auto& first = std::get<MatrixSequence>(s.points[0]);
  for (int i = 1; i < 6; ++i) {
    const auto& other = std::get<MatrixSequence>(s.points[static_cast<std::size_t>(i)]);
    CHECK(other.mats == first.mats);
  }
  CHECK_FALSE(first.extra_row);
}

TEST_CASE("fixed-size bases only encode their own size") {
  const auto base = make_footnote2(4);
  const auto enc = encode_theorem1(base, 6);
  for (int t = 0; t < 200; ++t) {
    const RngKey key{113, static_cast<std::uint64_t>(t)};
    REQUIRE(sample_graph(enc, 4, key) == sample_graph(base, 4, coupled_base_key(key, 4)));
  }
}

TEST_CASE("encoder argument guards") {
  CHECK_THROWS(encode_theorem1(make_gnp(0.5), 1));
  CHECK_THROWS(encode_theorem1(make_gnp(0.5), 257));
  CHECK_THROWS(encode_theorem2(make_gnp(0.5), 300));
  const auto enc = encode_theorem1(make_gnp(0.5), 4);
  CHECK_THROWS(sample_graph(enc, 5, RngKey{1, 0}));
}

TEST_CASE("distribution comparison separates equal and unequal models") {
  const auto eq = verify_equivalence(make_gnp(0.3), make_gnp(0.3), 6, 4000, 0.01,
                                     CompareMode::Labeled, 127);
  CHECK(eq.verdict == EquivalenceReport::Verdict::Equivalent);

  const auto ne = verify_equivalence(make_gnp(0.2), make_gnp(0.6), 6, 4000, 0.01,
                                     CompareMode::Labeled, 127);
  CHECK(ne.verdict == EquivalenceReport::Verdict::NotEquivalent);

  // Isomorphism mode ignores labelings: the rigged model and its exchangeable
  // wrapper induce the same unlabeled distribution.
  const auto rigged = make_rigged(0.9, 0.1);
  const auto iso = verify_equivalence(rigged, wrap_exchangeable(rigged), 4, 4000, 0.01,
                                      CompareMode::Isomorphism, 131);
  CHECK(iso.verdict == EquivalenceReport::Verdict::Equivalent);
  const auto lab = verify_equivalence(rigged, wrap_exchangeable(rigged), 4, 4000, 0.01,
                                      CompareMode::Labeled, 131);
  CHECK(lab.verdict == EquivalenceReport::Verdict::NotEquivalent);

  CHECK_THROWS(verify_equivalence(make_gnp(0.5), make_gnp(0.5), 9, 2000, 0.01,
                                  CompareMode::Isomorphism, 1));
  CHECK_THROWS(verify_equivalence(make_gnp(0.5), make_gnp(0.5), 5, 10, 0.01,
                                  CompareMode::Labeled, 1));
}

TEST_CASE("round-trip equivalence through both encoders") {
  const auto base = make_gnp(0.5);
  for (const auto& enc : {encode_theorem1(base, 6), encode_theorem2(base, 6)}) {
    const auto rep = verify_equivalence(base, enc, 5, 4000, 0.01, CompareMode::Labeled, 137);
    CHECK(rep.verdict == EquivalenceReport::Verdict::Equivalent);
  }
}

TEST_SUITE_END();
