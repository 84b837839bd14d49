#include "rgm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rgm {
namespace detail {

// splitmix64 finalizer; full 64-bit avalanche.
std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_key(const RngKey& key, std::uint64_t a, std::uint64_t b,
                       std::uint64_t counter) noexcept {
  std::uint64_t h = mix64(key.master_seed ^ 0x8badf00d5ca1ab1eULL);
  h = mix64(h ^ key.trial);
  h = mix64(h ^ static_cast<std::uint64_t>(key.tag));
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ counter);
  return h;
}

}  // namespace detail

double uniform01(const RngKey& key, std::uint64_t a, std::uint64_t b,
                 std::uint64_t counter) {
  return static_cast<double>(detail::hash_key(key, a, b, counter) >> 11) * 0x1.0p-53;
}

double uniform01_pair(const RngKey& key, int i, int j) {
  if (i >= j) {
    throw std::invalid_argument("uniform01_pair: requires i < j");
  }
  if (i < 0) {
    throw std::invalid_argument("uniform01_pair: negative index");
  }
  return uniform01(key, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
}

double CounterStream::next_normal() {
  // Box-Muller; guard the log against a zero uniform.
  double u1 = next_uniform();
  double u2 = next_uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterStream::next_index(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("CounterStream::next_index: bound must be positive");
  }
  // Modulo of a 64-bit hash; bias is below 2^-50 for any bound used here.
  return detail::hash_key(key_, a_, b_, counter_++) % bound;
}

std::vector<int> random_permutation(int n, CounterStream& stream) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(stream.next_index(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace rgm
