#pragma once

#include <memory>
#include <optional>
#include <string>

#include "rgm/domain.hpp"
#include "rgm/graph.hpp"
#include "rgm/rng.hpp"

namespace rgm {

/// Model class membership flags: locality, name invariance (exchangeable node
/// variables), and free (mutually independent node variables).
struct ModelFlags {
  bool local = false;
  bool name_invariant = false;
  bool free_nodes = false;
};

/// A random graph model: node sampling plus an edge function evaluated with
/// one independent uniform per unordered pair. Implementations are immutable;
/// all sampling is a pure function of (n, key).
class ModelImpl {
 public:
  virtual ~ModelImpl() = default;

  virtual std::string family() const = 0;
  virtual ModelFlags flags() const = 0;

  /// False for purely edge-randomized families whose nodes are placeholders.
  virtual bool has_node_stage() const { return true; }

  /// Set when the model is defined for one graph size only (explicit
  /// distributions, enumerated families).
  virtual std::optional<int> fixed_n() const { return std::nullopt; }

  virtual NodeSample sample_nodes(int n, const RngKey& key) const = 0;

  /// Edge indicator for the unordered pair {i, j} (0-based, i != j), given the
  /// full node realization and the pair's independent uniform xi.
  virtual bool edge(const NodeSample& nodes, int i, int j, double xi) const = 0;

  /// Families defined directly as a graph-valued draw (atoms, enumerated
  /// sets) bypass the per-pair loop.
  virtual std::optional<LabeledGraph> sample_whole_graph(int /*n*/,
                                                         const RngKey& /*key*/) const {
    return std::nullopt;
  }
};

/// Local models: the edge between X_i and X_j depends only on the two points
/// and xi, through one shared function per n. The non-local entry point is
/// sealed so locality holds by construction.
class LocalModelImpl : public ModelImpl {
 public:
  virtual bool local_edge(const DomainPoint& a, const DomainPoint& b, int n,
                          double xi) const = 0;

  bool edge(const NodeSample& nodes, int i, int j, double xi) const final {
    return local_edge(nodes.points[static_cast<std::size_t>(i)],
                      nodes.points[static_cast<std::size_t>(j)], nodes.n, xi);
  }
};

/// Value-semantic handle on an immutable model.
class ModelSpec {
 public:
  explicit ModelSpec(std::shared_ptr<const ModelImpl> impl) : impl_(std::move(impl)) {}

  const ModelImpl& impl() const { return *impl_; }
  std::shared_ptr<const ModelImpl> impl_ptr() const { return impl_; }
  ModelFlags flags() const { return impl_->flags(); }
  std::string family() const { return impl_->family(); }

 private:
  std::shared_ptr<const ModelImpl> impl_;
};

/// Draws the node variables X_1..X_n. Deterministic given (spec, n, key).
NodeSample sample_nodes(const ModelSpec& spec, int n, const RngKey& key);

/// Draws a full realization G_n: node sample plus one independent uniform per
/// unordered pair, evaluated for i < j only.
LabeledGraph sample_graph(const ModelSpec& spec, int n, const RngKey& key);

/// Random-permutation symmetrization: samples the base nodes, permutes their
/// indices uniformly, and evaluates edges through the permutation. The
/// resulting node sequence is exchangeable; the name_invariant flag is set.
/// Requires a model with a node-sampling stage.
ModelSpec wrap_exchangeable(const ModelSpec& base);

}  // namespace rgm
