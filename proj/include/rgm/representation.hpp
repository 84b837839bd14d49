#pragma once

#include <cstdint>
#include <map>

#include "rgm/model.hpp"
#include "rgm/stats.hpp"

namespace rgm {

/// Compiles an arbitrary model into local form: node i carries, for every
/// graph size m <= n_max, the full base realization as an (m+1) x m matrix
/// whose last row is the binary encoding of i; the shared edge function reads
/// the indices out of its two arguments and looks the edge up.
ModelSpec encode_theorem1(const ModelSpec& base, int n_max);

/// Compiles an arbitrary model into name-invariant form: every node carries
/// the identical sequence of m x m base realization matrices; the edge
/// function for pair (i, j) reads entry [i, j] directly.
ModelSpec encode_theorem2(const ModelSpec& base, int n_max);

/// Key under which the encoders draw the coupled base realization of size m.
/// The encoded graph at size m equals sample_graph(base, m, coupled_base_key(key, m))
/// exactly, every trial.
RngKey coupled_base_key(const RngKey& key, int m);

enum class CompareMode { Labeled, Isomorphism };

struct EquivalenceReport {
  int n = 0;
  long trials = 0;
  double alpha = 0.01;
  CompareMode mode = CompareMode::Labeled;
  stats::ChiSquareTwoSample test;
  // Canonical-form bin -> (count under a, count under b).
  std::map<std::uint64_t, std::pair<long, long>> frequencies;

  enum class Verdict { Equivalent, NotEquivalent, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
};

/// Samples both models and compares the outcome distributions with a
/// two-sample chi-square test over canonical forms (adjacency bits in labeled
/// mode; brute-force canonical labeling in isomorphism mode, n <= 8).
EquivalenceReport verify_equivalence(const ModelSpec& a, const ModelSpec& b, int n,
                                     long trials, double alpha,
                                     CompareMode mode = CompareMode::Labeled,
                                     std::uint64_t master_seed = 0);

}  // namespace rgm
