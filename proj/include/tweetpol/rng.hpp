#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tweetpol {

/// Deterministic generator used for every random decision in the toolkit.
///
/// The engine is MT19937-64 (`std::mt19937_64`, whose output sequence for a
/// given seed is fixed by the C++ standard). The distributions are written
/// out here rather than taken from <random>, whose algorithms differ between
/// standard libraries:
///   below(n)  - rejection sampling on the raw 64-bit output: draws below
///               2^64 mod n are discarded, the rest are reduced mod n.
///   uniform() - top 53 bits of one draw scaled by 2^-53, in [0, 1).
/// Together these make shuffles, splits and synthetic corpora reproducible
/// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates, walking from the back: for i = n-1 .. 1 swap element i with
/// element below(i + 1).
template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace tweetpol
