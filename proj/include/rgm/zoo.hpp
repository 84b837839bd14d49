#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rgm/model.hpp"

namespace rgm {

/// Mixing distribution on [0,1] for the graph-level Bernoulli mixture.
struct MixtureLaw {
  enum class Kind { Uniform01, Beta, TwoPoint };

  Kind kind = Kind::Uniform01;
  double a = 1.0;   // beta shape
  double b = 1.0;   // beta shape
  double p1 = 0.0;  // two-point atom, probability w
  double p2 = 0.0;  // two-point atom, probability 1-w
  double w = 0.5;

  static MixtureLaw uniform01() { return {}; }
  static MixtureLaw beta(double a, double b) {
    MixtureLaw l;
    l.kind = Kind::Beta;
    l.a = a;
    l.b = b;
    return l;
  }
  static MixtureLaw two_point(double p1, double p2, double w) {
    MixtureLaw l;
    l.kind = Kind::TwoPoint;
    l.p1 = p1;
    l.p2 = p2;
    l.w = w;
    return l;
  }

  void validate() const;
  double sample(CounterStream& stream) const;
  double mean() const;
};

/// Finite distribution over labeled graphs on a fixed n.
struct ExplicitDistribution {
  int n = 0;
  std::vector<std::pair<LabeledGraph, double>> atoms;

  void validate() const;
};

ModelSpec make_gnp(double p);
ModelSpec make_mixture(const MixtureLaw& law);
ModelSpec make_sphere_cluster(double R, double r, double threshold);
ModelSpec make_knn(int k);
ModelSpec make_explicit(ExplicitDistribution dist);
ModelSpec make_footnote2(int n);
ModelSpec make_connected_maxdeg3(int n);

/// Index-dependent edge probabilities: pair {0,1} gets p_special, every other
/// pair p_other. Deliberately not name invariant; the wrap_exchangeable and
/// exchangeability-test machinery is exercised against it.
ModelSpec make_rigged(double p_special, double p_other);

/// All labeled connected graphs on n vertices with maximum degree <= 3, as
/// upper-triangle masks. Enumerated once per n (2 <= n <= 8) and cached.
const std::vector<std::uint32_t>& connected_maxdeg3_masks(int n);

}  // namespace rgm
