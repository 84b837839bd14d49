#include "rgm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rgm {

namespace {

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> size;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), size(static_cast<std::size_t>(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[static_cast<std::size_t>(a)] < size[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
  }
};

}  // namespace

ComponentSummary analyze(const LabeledGraph& g) {
  const int n = g.n();
  UnionFind uf(n);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.edge(i, j)) {
        ++degree[static_cast<std::size_t>(i)];
        ++degree[static_cast<std::size_t>(j)];
        uf.unite(i, j);
      }
    }
  }
  ComponentSummary out;
  for (int i = 0; i < n; ++i) {
    out.degree_sum += degree[static_cast<std::size_t>(i)];
    if (degree[static_cast<std::size_t>(i)] == 0) ++out.isolated_count;
    if (uf.find(i) == i) {
      ++out.component_count;
      out.largest_size = std::max(out.largest_size, uf.size[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

double average_degree(const LabeledGraph& g) {
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.n());
}

bool is_beta_connected(const LabeledGraph& g, double beta) {
  if (beta < 0.0 || beta > 1.0) {
    throw std::invalid_argument("is_beta_connected: beta must lie in [0,1]");
  }
  // Ceiling with absolute epsilon so that rational beta * n is exact.
  const auto threshold =
      static_cast<int>(std::ceil(beta * static_cast<double>(g.n()) - 1e-9));
  return analyze(g).largest_size >= threshold;
}

bool is_connected(const LabeledGraph& g) { return analyze(g).component_count == 1; }

}  // namespace rgm
