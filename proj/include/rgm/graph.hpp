#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rgm {

/// Undirected simple graph on vertices 0..n-1, stored as a packed upper
/// triangle. No loops; adjacency is symmetric by construction.
class LabeledGraph {
 public:
  explicit LabeledGraph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("LabeledGraph: n must be >= 1");
    bits_.assign((pair_count() + 63) / 64, 0);
  }

  int n() const { return n_; }

  std::size_t pair_count() const {
    return static_cast<std::size_t>(n_) * (n_ - 1) / 2;
  }

  bool edge(int i, int j) const {
    if (i == j) return false;
    auto p = pair_index(i, j);
    return (bits_[p >> 6] >> (p & 63)) & 1u;
  }

  void set_edge(int i, int j, bool present = true) {
    if (i == j) throw std::invalid_argument("LabeledGraph: no loops");
    auto p = pair_index(i, j);
    if (present)
      bits_[p >> 6] |= std::uint64_t{1} << (p & 63);
    else
      bits_[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
  }

  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < n_; ++j)
      if (j != i && edge(i, j)) ++d;
    return d;
  }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  /// Upper-triangle bits as a single word; only valid for n <= 11 (55 pairs).
  std::uint64_t mask() const {
    if (pair_count() > 64) throw std::invalid_argument("LabeledGraph::mask: n too large");
    return bits_.empty() ? 0 : bits_[0];
  }

  /// Builds the graph whose upper-triangle bits are the given mask (n <= 11).
  static LabeledGraph from_mask(int n, std::uint64_t mask) {
    LabeledGraph g(n);
    if (g.pair_count() > 64) throw std::invalid_argument("from_mask: n too large");
    if (!g.bits_.empty()) g.bits_[0] = mask;
    return g;
  }

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  /// Linear index of the unordered pair {i, j}; pairs ordered by (min, max).
  std::size_t pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n_) throw std::out_of_range("LabeledGraph: vertex out of range");
    // Pairs with first vertex < i come first.
    auto si = static_cast<std::size_t>(i);
    return si * static_cast<std::size_t>(n_) - si * (si + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
  }

 private:
  int n_;
  std::vector<std::uint64_t> bits_;
};

/// Complete graph on n vertices.
inline LabeledGraph complete_graph(int n) {
  LabeledGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j);
  return g;
}

/// Path 0-1-...-(n-1).
inline LabeledGraph path_graph(int n) {
  LabeledGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

}  // namespace rgm
