#include "rgm/representation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rgm {

namespace {

constexpr std::uint64_t kCouplingSalt = 0x7ec0de0000000001ULL;

void check_encoder_args(const ModelSpec&, int n_max) {
  if (n_max < 2) throw std::invalid_argument("encode: n_max must be >= 2");
  if (n_max > 256)
    throw std::invalid_argument("encode: n_max above the 256 memory guard");
}

// Base realizations for every size m <= n_max the base model supports;
// unsupported sizes stay empty.
std::vector<std::optional<LabeledGraph>> draw_base_realizations(const ModelSpec& base,
                                                                int n_max,
                                                                const RngKey& key) {
  std::vector<std::optional<LabeledGraph>> out(static_cast<std::size_t>(n_max));
  const auto fixed = base.impl().fixed_n();
  for (int m = 1; m <= n_max; ++m) {
    if (fixed && *fixed != m) continue;
    out[static_cast<std::size_t>(m - 1)] = sample_graph(base, m, coupled_base_key(key, m));
  }
  return out;
}

int decode_index_row(const MatrixSequence& seq, int m) {
  // Little-endian bits in the last row.
  std::uint64_t value = 0;
  const int row = seq.rows_for(m) - 1;
  for (int bit = 0; bit < m && bit < 63; ++bit) {
    if (seq.at(m, row, bit)) value |= std::uint64_t{1} << bit;
  }
  return static_cast<int>(value);
}

class Theorem1Model final : public LocalModelImpl {
 public:
  Theorem1Model(ModelSpec base, int n_max) : base_(std::move(base)), n_max_(n_max) {}

  std::string family() const override { return "theorem1(" + base_.family() + ")"; }
  ModelFlags flags() const override { return {true, false, false}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    if (n > n_max_)
      throw std::invalid_argument("theorem1: n exceeds the encoded n_max");
    const auto base_graphs = draw_base_realizations(base_, n_max_, key);
    NodeSample s;
    s.n = n;
    s.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      MatrixSequence seq;
      seq.extra_row = true;
      seq.mats.resize(static_cast<std::size_t>(n_max_));
      for (int m = 1; m <= n_max_; ++m) {
        auto& mat = seq.mats[static_cast<std::size_t>(m - 1)];
        mat.assign(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(m), 0);
        const auto& g = base_graphs[static_cast<std::size_t>(m - 1)];
        if (g) {
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l)
              if (k != l && g->edge(k, l)) seq.at(m, k, l) = 1;
        }
        // Last row: binary encoding of i, little-endian, truncated to width m.
        for (int bit = 0; bit < m && bit < 31; ++bit) {
          seq.at(m, m, bit) = static_cast<std::uint8_t>((i >> bit) & 1);
        }
      }
      s.points.push_back(std::move(seq));
    }
    return s;
  }

  bool local_edge(const DomainPoint& a, const DomainPoint& b, int n, double) const override {
    const auto& za = std::get<MatrixSequence>(a);
    const auto& zb = std::get<MatrixSequence>(b);
    const int i = decode_index_row(za, n);
    const int j = decode_index_row(zb, n);
    return za.at(n, i, j) != 0;
  }

 private:
  ModelSpec base_;
  int n_max_;
};

class Theorem2Model final : public ModelImpl {
 public:
  Theorem2Model(ModelSpec base, int n_max) : base_(std::move(base)), n_max_(n_max) {}

  std::string family() const override { return "theorem2(" + base_.family() + ")"; }
  ModelFlags flags() const override { return {false, true, false}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    if (n > n_max_)
      throw std::invalid_argument("theorem2: n exceeds the encoded n_max");
    const auto base_graphs = draw_base_realizations(base_, n_max_, key);
    MatrixSequence seq;
    seq.extra_row = false;
    seq.mats.resize(static_cast<std::size_t>(n_max_));
    for (int m = 1; m <= n_max_; ++m) {
      auto& mat = seq.mats[static_cast<std::size_t>(m - 1)];
      mat.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
      const auto& g = base_graphs[static_cast<std::size_t>(m - 1)];
      if (g) {
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            if (k != l && g->edge(k, l)) seq.at(m, k, l) = 1;
      }
    }
    NodeSample s;
    s.n = n;
    s.points.assign(static_cast<std::size_t>(n), seq);  // all X_i equal
    return s;
  }

  bool edge(const NodeSample& nodes, int i, int j, double) const override {
    const auto& z = std::get<MatrixSequence>(nodes.points[0]);
    return z.at(nodes.n, i, j) != 0;
  }

 private:
  ModelSpec base_;
  int n_max_;
};

std::uint64_t fnv1a(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t labeled_bin(const LabeledGraph& g) {
  if (g.pair_count() <= 64) return g.mask();
  // Larger graphs: hash the adjacency bits.
  std::vector<std::uint64_t> words((g.pair_count() + 63) / 64, 0);
  std::size_t p = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j, ++p)
      if (g.edge(i, j)) words[p >> 6] |= std::uint64_t{1} << (p & 63);
  return fnv1a(words.data(), words.size() * sizeof(std::uint64_t));
}

std::uint64_t isomorphism_bin(const LabeledGraph& g) {
  const int n = g.n();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mask = 0;
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++p) {
        if (g.edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]))
          mask |= std::uint64_t{1} << p;
      }
    }
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

ModelSpec encode_theorem1(const ModelSpec& base, int n_max) {
  check_encoder_args(base, n_max);
  return ModelSpec(std::make_shared<Theorem1Model>(base, n_max));
}

ModelSpec encode_theorem2(const ModelSpec& base, int n_max) {
  check_encoder_args(base, n_max);
  return ModelSpec(std::make_shared<Theorem2Model>(base, n_max));
}

RngKey coupled_base_key(const RngKey& key, int m) {
  RngKey out = key;
  out.master_seed = detail::mix64(detail::mix64(key.master_seed ^ kCouplingSalt) ^
                                  static_cast<std::uint64_t>(m));
  return out;
}

EquivalenceReport verify_equivalence(const ModelSpec& a, const ModelSpec& b, int n,
                                     long trials, double alpha, CompareMode mode,
                                     std::uint64_t master_seed) {
  if (trials < 1000)
    throw std::invalid_argument("verify_equivalence: trials must be >= 1000");
  if (mode == CompareMode::Isomorphism && n > 8)
    throw std::invalid_argument("verify_equivalence: isomorphism mode requires n <= 8");

  EquivalenceReport report;
  report.n = n;
  report.trials = trials;
  report.alpha = alpha;
  report.mode = mode;

  const auto bin_of = [&](const LabeledGraph& g) {
    return mode == CompareMode::Labeled ? labeled_bin(g) : isomorphism_bin(g);
  };
  for (long t = 0; t < trials; ++t) {
    const RngKey ka{master_seed, static_cast<std::uint64_t>(t)};
    const RngKey kb{master_seed, static_cast<std::uint64_t>(trials + t)};
    ++report.frequencies[bin_of(sample_graph(a, n, ka))].first;
    ++report.frequencies[bin_of(sample_graph(b, n, kb))].second;
  }

  report.test = stats::two_sample_chi_square(stats::pool_sparse_bins(report.frequencies, 10));
  if (report.test.inconclusive) {
    report.verdict = EquivalenceReport::Verdict::Inconclusive;
  } else if (report.test.p_value < alpha) {
    report.verdict = EquivalenceReport::Verdict::NotEquivalent;
  } else {
    report.verdict = EquivalenceReport::Verdict::Equivalent;
  }
  return report;
}

}  // namespace rgm
