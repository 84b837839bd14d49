#pragma once

#include <cstdint>
#include <vector>

namespace rgm {

/// Purpose tag separating the random streams of one trial.
enum class StreamTag : std::uint64_t {
  NodeSampling = 1,
  EdgeRandomization = 2,
  DistanceNoise = 3,
};

/// Key of a counter-based random stream. Identical keys reproduce identical
/// streams; distinct keys share no state, so trials can be evaluated in any
/// order (or concurrently) with identical results.
struct RngKey {
  std::uint64_t master_seed = 0;
  std::uint64_t trial = 0;
  StreamTag tag = StreamTag::EdgeRandomization;

  RngKey with_tag(StreamTag t) const { return {master_seed, trial, t}; }
  RngKey with_trial(std::uint64_t t) const { return {master_seed, t, tag}; }

  friend bool operator==(const RngKey&, const RngKey&) = default;
};

namespace detail {
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t hash_key(const RngKey& key, std::uint64_t a, std::uint64_t b,
                       std::uint64_t counter) noexcept;
}  // namespace detail

/// Keyed counter draw: a pure function of (key, a, b, counter), uniform on [0,1).
double uniform01(const RngKey& key, std::uint64_t a, std::uint64_t b,
                 std::uint64_t counter = 0);

/// The per-pair edge randomization xi_{ij}. Requires i < j; the i > j case is
/// defined by symmetry and must be handled by the caller swapping indices.
/// Throws std::invalid_argument when i >= j.
double uniform01_pair(const RngKey& key, int i, int j);

/// Sequential draws for one logical consumer (a node, a latent variable, a
/// rejection-sampling loop). Pure function of (key, a, b, draw index).
class CounterStream {
 public:
  CounterStream(const RngKey& key, std::uint64_t a, std::uint64_t b = 0)
      : key_(key), a_(a), b_(b) {}

  double next_uniform() {
    return static_cast<double>(detail::hash_key(key_, a_, b_, counter_++) >> 11) *
           0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two uniforms.
  double next_normal();

  /// Uniform integer in [0, bound).
  std::uint64_t next_index(std::uint64_t bound);

 private:
  RngKey key_;
  std::uint64_t a_;
  std::uint64_t b_;
  std::uint64_t counter_ = 0;
};

/// Uniformly random permutation of {0,...,n-1} (Fisher-Yates).
std::vector<int> random_permutation(int n, CounterStream& stream);

}  // namespace rgm
