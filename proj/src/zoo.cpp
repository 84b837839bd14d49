#include "rgm/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace rgm {

namespace {

// Reserved counter-stream address for trial-level latents (mixing variable,
// pivot point, atom choice), disjoint from the per-node addresses 0..n-1.
constexpr std::uint64_t kLatentStream = 0xffffffff00000002ULL;

double sample_gamma(double shape, CounterStream& stream) {
  // Marsaglia-Tsang; the shape < 1 case is boosted through shape + 1.
  if (shape < 1.0) {
    const double u = std::max(stream.next_uniform(), 0x1.0p-53);
    return sample_gamma(shape + 1.0, stream) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = stream.next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = std::max(stream.next_uniform(), 0x1.0p-53);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

const RealVector& as_real(const DomainPoint& p) {
  const auto* rv = std::get_if<RealVector>(&p);
  if (!rv) throw std::logic_error("expected a RealVector domain point");
  return *rv;
}

NodeSample placeholder_nodes(int n) {
  NodeSample s;
  s.n = n;
  s.points.assign(static_cast<std::size_t>(n), std::monostate{});
  return s;
}

class GnpModel final : public LocalModelImpl {
 public:
  explicit GnpModel(double p) : p_(p) {}

  std::string family() const override { return "gnp"; }
  ModelFlags flags() const override { return {true, true, true}; }
  bool has_node_stage() const override { return false; }

  NodeSample sample_nodes(int n, const RngKey&) const override {
    return placeholder_nodes(n);
  }

  bool local_edge(const DomainPoint&, const DomainPoint&, int, double xi) const override {
    return xi < p_;
  }

 private:
  double p_;
};

class MixtureModel final : public LocalModelImpl {
 public:
  explicit MixtureModel(MixtureLaw law) : law_(law) {}

  std::string family() const override { return "mixture"; }
  ModelFlags flags() const override { return {true, true, false}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    CounterStream latent(key.with_tag(StreamTag::NodeSampling), kLatentStream);
    const double eta = law_.sample(latent);
    NodeSample s;
    s.n = n;
    s.points.assign(static_cast<std::size_t>(n), RealVector{{eta}});
    return s;
  }

  bool local_edge(const DomainPoint& a, const DomainPoint&, int, double xi) const override {
    return xi < as_real(a).v[0];
  }

 private:
  MixtureLaw law_;
};

struct Vec3 {
  double x, y, z;
};

class SphereClusterModel final : public LocalModelImpl {
 public:
  SphereClusterModel(double R, double r, double threshold)
      : R_(R), r_(r), threshold_(threshold) {}

  std::string family() const override { return "sphere_cluster"; }
  ModelFlags flags() const override { return {true, true, false}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    const RngKey k = key.with_tag(StreamTag::NodeSampling);
    CounterStream latent(k, kLatentStream);
    const Vec3 pivot = uniform_sphere(latent);
    // Tangent frame at the pivot.
    Vec3 e1 = std::abs(pivot.z) < 0.9 ? Vec3{-pivot.y, pivot.x, 0.0}
                                      : Vec3{0.0, -pivot.z, pivot.y};
    e1 = normalize(e1);
    const Vec3 e2 = cross(pivot, e1);

    const double alpha = r_ / R_;  // angular cap radius
    NodeSample s;
    s.n = n;
    s.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CounterStream node(k, static_cast<std::uint64_t>(i));
      // Area-uniform on the cap: cos(theta) uniform in [cos(alpha), 1].
      const double cos_theta = 1.0 - node.next_uniform() * (1.0 - std::cos(alpha));
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
      const double phi = 2.0 * std::numbers::pi * node.next_uniform();
      const Vec3 dir{
          cos_theta * pivot.x + sin_theta * (std::cos(phi) * e1.x + std::sin(phi) * e2.x),
          cos_theta * pivot.y + sin_theta * (std::cos(phi) * e1.y + std::sin(phi) * e2.y),
          cos_theta * pivot.z + sin_theta * (std::cos(phi) * e1.z + std::sin(phi) * e2.z)};
      s.points.push_back(RealVector{{R_ * dir.x, R_ * dir.y, R_ * dir.z}});
    }
    return s;
  }

  bool local_edge(const DomainPoint& a, const DomainPoint& b, int, double) const override {
    const auto& va = as_real(a).v;
    const auto& vb = as_real(b).v;
    const double dot = (va[0] * vb[0] + va[1] * vb[1] + va[2] * vb[2]) / (R_ * R_);
    const double geodesic = R_ * std::acos(std::clamp(dot, -1.0, 1.0));
    return geodesic <= threshold_;
  }

 private:
  static Vec3 uniform_sphere(CounterStream& s) {
    const double z = 2.0 * s.next_uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * s.next_uniform();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(phi), rho * std::sin(phi), z};
  }
  static Vec3 normalize(Vec3 v) {
    const double len = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / len, v.y / len, v.z / len};
  }
  static Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  }

  double R_;
  double r_;
  double threshold_;
};

class KnnModel final : public ModelImpl {
 public:
  explicit KnnModel(int k) : k_(k) {}

  std::string family() const override { return "knn"; }
  ModelFlags flags() const override { return {false, true, true}; }

  NodeSample sample_nodes(int n, const RngKey& key) const override {
    const RngKey k = key.with_tag(StreamTag::NodeSampling);
    NodeSample s;
    s.n = n;
    s.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      CounterStream node(k, static_cast<std::uint64_t>(i));
      const double x = node.next_uniform();
      const double y = node.next_uniform();
      s.points.push_back(RealVector{{x, y}});
    }
    return s;
  }

  bool edge(const NodeSample& nodes, int i, int j, double) const override {
    return among_knn(nodes, i, j) || among_knn(nodes, j, i);
  }

 private:
  // True iff j is among the k nearest neighbors of i; ties broken by lower
  // index. With k >= n-1 every other node qualifies.
  bool among_knn(const NodeSample& nodes, int i, int j) const {
    const auto& pi = as_real(nodes.points[static_cast<std::size_t>(i)]).v;
    const auto& pj = as_real(nodes.points[static_cast<std::size_t>(j)]).v;
    const double dij = sq_dist(pi, pj);
    int closer = 0;
    for (int l = 0; l < nodes.n; ++l) {
      if (l == i || l == j) continue;
      const auto& pl = as_real(nodes.points[static_cast<std::size_t>(l)]).v;
      const double dil = sq_dist(pi, pl);
      if (dil < dij || (dil == dij && l < j)) ++closer;
    }
    return closer < k_;
  }

  static double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
  }

  int k_;
};

class ExplicitModel final : public ModelImpl {
 public:
  explicit ExplicitModel(ExplicitDistribution dist) : dist_(std::move(dist)) {}

  std::string family() const override { return "explicit"; }
  ModelFlags flags() const override { return {false, false, false}; }
  bool has_node_stage() const override { return false; }
  std::optional<int> fixed_n() const override { return dist_.n; }

  NodeSample sample_nodes(int n, const RngKey&) const override {
    return placeholder_nodes(n);
  }

  bool edge(const NodeSample&, int, int, double) const override {
    throw std::logic_error("ExplicitModel: sampled as a whole graph");
  }

  std::optional<LabeledGraph> sample_whole_graph(int, const RngKey& key) const override {
    CounterStream latent(key.with_tag(StreamTag::EdgeRandomization), kLatentStream);
    const double u = latent.next_uniform();
    double cum = 0.0;
    for (const auto& [g, p] : dist_.atoms) {
      cum += p;
      if (u < cum) return g;
    }
    return dist_.atoms.back().first;
  }

 private:
  ExplicitDistribution dist_;
};

class Footnote2Model final : public ModelImpl {
 public:
  explicit Footnote2Model(int n) : n_(n) {}

  std::string family() const override { return "footnote2"; }
  ModelFlags flags() const override { return {false, false, false}; }
  bool has_node_stage() const override { return false; }
  std::optional<int> fixed_n() const override { return n_; }

  NodeSample sample_nodes(int n, const RngKey&) const override {
    return placeholder_nodes(n);
  }

  bool edge(const NodeSample&, int, int, double) const override {
    throw std::logic_error("Footnote2Model: sampled as a whole graph");
  }

  std::optional<LabeledGraph> sample_whole_graph(int n, const RngKey& key) const override {
    CounterStream latent(key.with_tag(StreamTag::EdgeRandomization), kLatentStream);
    const double u = latent.next_uniform();
    if (u < 1.0 / std::sqrt(static_cast<double>(n_))) return LabeledGraph(n);
    return path_graph(n);
  }

 private:
  int n_;
};

class ConnectedMaxdeg3Model final : public ModelImpl {
 public:
  explicit ConnectedMaxdeg3Model(int n) : n_(n), masks_(&connected_maxdeg3_masks(n)) {}

  std::string family() const override { return "connected_maxdeg3"; }
  ModelFlags flags() const override { return {false, false, false}; }
  bool has_node_stage() const override { return false; }
  std::optional<int> fixed_n() const override { return n_; }

  NodeSample sample_nodes(int n, const RngKey&) const override {
    return placeholder_nodes(n);
  }

  bool edge(const NodeSample&, int, int, double) const override {
    throw std::logic_error("ConnectedMaxdeg3Model: sampled as a whole graph");
  }

  std::optional<LabeledGraph> sample_whole_graph(int n, const RngKey& key) const override {
    CounterStream latent(key.with_tag(StreamTag::EdgeRandomization), kLatentStream);
    const auto idx = latent.next_index(masks_->size());
    return LabeledGraph::from_mask(n, (*masks_)[idx]);
  }

 private:
  int n_;
  const std::vector<std::uint32_t>* masks_;
};

class RiggedModel final : public LocalModelImpl {
 public:
  RiggedModel(double p_special, double p_other)
      : p_special_(p_special), p_other_(p_other) {}

  std::string family() const override { return "rigged"; }
  ModelFlags flags() const override { return {true, false, false}; }

  NodeSample sample_nodes(int n, const RngKey&) const override {
    // Node i deterministically carries its own index.
    NodeSample s;
    s.n = n;
    s.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s.points.push_back(RealVector{{static_cast<double>(i)}});
    return s;
  }

  bool local_edge(const DomainPoint& a, const DomainPoint& b, int, double xi) const override {
    const double ia = as_real(a).v[0];
    const double ib = as_real(b).v[0];
    const bool special = std::min(ia, ib) == 0.0 && std::max(ia, ib) == 1.0;
    return xi < (special ? p_special_ : p_other_);
  }

 private:
  double p_special_;
  double p_other_;
};

}  // namespace

void MixtureLaw::validate() const {
  switch (kind) {
    case Kind::Uniform01:
      return;
    case Kind::Beta:
      if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("MixtureLaw: beta shapes must be positive");
      return;
    case Kind::TwoPoint:
      if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0 || w < 0.0 || w > 1.0)
        throw std::invalid_argument("MixtureLaw: two-point parameters must lie in [0,1]");
      return;
  }
  throw std::invalid_argument("MixtureLaw: unknown kind");
}

double MixtureLaw::sample(CounterStream& stream) const {
  switch (kind) {
    case Kind::Uniform01:
      return stream.next_uniform();
    case Kind::Beta: {
      const double x = sample_gamma(a, stream);
      const double y = sample_gamma(b, stream);
      return x / (x + y);
    }
    case Kind::TwoPoint:
      return stream.next_uniform() < w ? p1 : p2;
  }
  throw std::logic_error("MixtureLaw: unknown kind");
}

double MixtureLaw::mean() const {
  switch (kind) {
    case Kind::Uniform01:
      return 0.5;
    case Kind::Beta:
      return a / (a + b);
    case Kind::TwoPoint:
      return w * p1 + (1.0 - w) * p2;
  }
  throw std::logic_error("MixtureLaw: unknown kind");
}

void ExplicitDistribution::validate() const {
  if (n < 1) throw std::invalid_argument("ExplicitDistribution: n must be >= 1");
  if (atoms.empty()) throw std::invalid_argument("ExplicitDistribution: no atoms");
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& [g, p] = atoms[i];
    if (g.n() != n)
      throw std::invalid_argument("ExplicitDistribution: atom on a different n");
    if (p < 0.0) throw std::invalid_argument("ExplicitDistribution: negative probability");
    sum += p;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms[j].first == g)
        throw std::invalid_argument("ExplicitDistribution: duplicate graph atom");
    }
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ExplicitDistribution: probabilities must sum to 1");
}

ModelSpec make_gnp(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_gnp: p must lie in [0,1]");
  return ModelSpec(std::make_shared<GnpModel>(p));
}

ModelSpec make_mixture(const MixtureLaw& law) {
  law.validate();
  return ModelSpec(std::make_shared<MixtureModel>(law));
}

ModelSpec make_sphere_cluster(double R, double r, double threshold) {
  if (!(R > 0.0)) throw std::invalid_argument("make_sphere_cluster: R must be positive");
  if (!(r > 0.0) || r > R)
    throw std::invalid_argument("make_sphere_cluster: r must lie in (0, R]");
  if (threshold < 0.0)
    throw std::invalid_argument("make_sphere_cluster: threshold must be nonnegative");
  return ModelSpec(std::make_shared<SphereClusterModel>(R, r, threshold));
}

ModelSpec make_knn(int k) {
  if (k < 1) throw std::invalid_argument("make_knn: k must be >= 1");
  return ModelSpec(std::make_shared<KnnModel>(k));
}

ModelSpec make_explicit(ExplicitDistribution dist) {
  dist.validate();
  return ModelSpec(std::make_shared<ExplicitModel>(std::move(dist)));
}

ModelSpec make_footnote2(int n) {
  if (n < 2) throw std::invalid_argument("make_footnote2: n must be >= 2");
  return ModelSpec(std::make_shared<Footnote2Model>(n));
}

ModelSpec make_connected_maxdeg3(int n) {
  if (n < 2 || n > 8)
    throw std::invalid_argument("make_connected_maxdeg3: n must lie in [2,8]");
  return ModelSpec(std::make_shared<ConnectedMaxdeg3Model>(n));
}

ModelSpec make_rigged(double p_special, double p_other) {
  if (p_special < 0.0 || p_special > 1.0 || p_other < 0.0 || p_other > 1.0)
    throw std::invalid_argument("make_rigged: probabilities must lie in [0,1]");
  return ModelSpec(std::make_shared<RiggedModel>(p_special, p_other));
}

namespace {

bool mask_connected(int n, std::uint32_t mask) {
  // Union-find over the packed upper triangle.
  int parent[8];
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int p = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++p) {
      if (mask & (1u << p)) {
        const int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }
    }
  }
  const int root = find(0);
  for (int i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

void enumerate_maxdeg3(int n, std::vector<std::uint32_t>& out) {
  const int pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pair_of(static_cast<std::size_t>(pairs));
  {
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pair_of[static_cast<std::size_t>(p++)] = {i, j};
  }
  int deg[8] = {0};
  std::uint32_t mask = 0;

  // Depth-first over pairs with degree-cap pruning.
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == pairs) {
      if (mask_connected(n, mask)) out.push_back(mask);
      return;
    }
    self(self, idx + 1);  // edge absent
    const auto [i, j] = pair_of[static_cast<std::size_t>(idx)];
    if (deg[i] < 3 && deg[j] < 3) {
      ++deg[i];
      ++deg[j];
      mask |= 1u << idx;
      self(self, idx + 1);
      mask &= ~(1u << idx);
      --deg[i];
      --deg[j];
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
}

}  // namespace

const std::vector<std::uint32_t>& connected_maxdeg3_masks(int n) {
  if (n < 2 || n > 8)
    throw std::invalid_argument("connected_maxdeg3_masks: n must lie in [2,8]");
  static std::mutex mu;
  static std::map<int, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::uint32_t> masks;
    enumerate_maxdeg3(n, masks);
    it = cache.emplace(n, std::move(masks)).first;
  }
  return it->second;
}

}  // namespace rgm
