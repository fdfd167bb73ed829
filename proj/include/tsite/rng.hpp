#pragma once

#include <cstdint>
#include <random>

namespace tsite {

// Seeded generator with a portable integer mapping (no std distributions,
// whose output differs across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(g_() % span);
  }
  bool coin(int num = 1, int den = 2) { return uniform(0, den - 1) < num; }
  Rng fork(std::uint64_t salt) { return Rng(g_() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

 private:
  std::mt19937_64 g_;
};

}  // namespace tsite
