#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace migmap {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Folds several values into one seed with SplitMix64.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

/// Seeded generator that yields the same stream on every platform: the engine
/// is std::mt19937_64 (fully specified by the standard) and bounded draws use
/// rejection sampling instead of the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace migmap
