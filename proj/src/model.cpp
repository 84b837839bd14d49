#include "rgm/model.hpp"

#include <stdexcept>
#include <utility>

namespace rgm {

namespace {

// Reserved counter-stream address for the symmetrizing permutation, disjoint
// from the per-node addresses 0..n-1.
constexpr std::uint64_t kPermStream = 0xffffffff00000001ULL;

void check_size(const ModelImpl& impl, int n) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  if (auto fixed = impl.fixed_n(); fixed && *fixed != n) {
    throw std::invalid_argument("sample: model is defined for n = " +
                                std::to_string(*fixed) + " only");
  }
}

class ExchangeableWrap final : public ModelImpl {
 public:
  explicit ExchangeableWrap(ModelSpec base) : base_(std::move(base)) {}

  std::string family() const override {
    return "exchangeable(" + base_.family() + ")";
  }

  ModelFlags flags() const override {
    ModelFlags f = base_.flags();
    f.name_invariant = true;
    f.free_nodes = false;
    return f;
  }

  std::optional<int> fixed_n() const override { return base_.impl().fixed_n(); }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    auto base_nodes = std::make_shared<NodeSample>(base_.impl().sample_nodes(n, key));
    CounterStream perm_stream(key.with_tag(StreamTag::NodeSampling), kPermStream);
    NodeSample out;
    out.n = n;
    out.perm = random_permutation(n, perm_stream);
    out.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out.points.push_back(base_nodes->points[static_cast<std::size_t>(out.perm[static_cast<std::size_t>(i)])]);
    }
    out.base = std::move(base_nodes);
    return out;
  }

  bool edge(const NodeSample& nodes, int i, int j, double xi) const override {
    if (!nodes.base || nodes.perm.empty()) {
      throw std::logic_error("ExchangeableWrap: node sample lacks permutation state");
    }
    return base_.impl().edge(*nodes.base, nodes.perm[static_cast<std::size_t>(i)],
                             nodes.perm[static_cast<std::size_t>(j)], xi);
  }

 private:
  ModelSpec base_;
};

}  // namespace

NodeSample sample_nodes(const ModelSpec& spec, int n, const RngKey& key) {
  check_size(spec.impl(), n);
  return spec.impl().sample_nodes(n, key.with_tag(StreamTag::NodeSampling));
}

LabeledGraph sample_graph(const ModelSpec& spec, int n, const RngKey& key) {
  check_size(spec.impl(), n);
  if (auto whole = spec.impl().sample_whole_graph(n, key.with_tag(StreamTag::EdgeRandomization))) {
    return *whole;
  }
  NodeSample nodes = spec.impl().sample_nodes(n, key.with_tag(StreamTag::NodeSampling));
  const RngKey edge_key = key.with_tag(StreamTag::EdgeRandomization);
  LabeledGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double xi = uniform01_pair(edge_key, i, j);
      if (spec.impl().edge(nodes, i, j, xi)) g.set_edge(i, j);
    }
  }
  return g;
}

ModelSpec wrap_exchangeable(const ModelSpec& base) {
  if (!base.impl().has_node_stage()) {
    throw std::invalid_argument(
        "wrap_exchangeable: base model has no node-sampling stage");
  }
  return ModelSpec(std::make_shared<ExchangeableWrap>(base));
}

}  // namespace rgm
