#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace dualvc {

/// Seedable random stream shared by every randomized component.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Its 64-bit seed is the splitmix64 finalizer applied to the
/// caller's seed, so adjacent seeds give unrelated streams. Trial i of a
/// benchmark cell with base seed S uses seed S + i. Derived quantities
/// (bounded integers, coins, geometric gaps) use the mappings below instead
/// of std:: distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static Rng for_trial(std::uint64_t base_seed, std::uint64_t trial) { return Rng(base_seed + trial); }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = -n % n;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  bool coin() { return (next() >> 63) != 0; }

  /// Uniform double in (0, 1], 53 bits.
  double unit_open_closed() { return static_cast<double>((next() >> 11) + 1) * 0x1p-53; }

  /// Number of failures before the first success of Bernoulli(p) trials.
  /// Returns max() when the gap is astronomically large (p tiny).
  std::uint64_t geometric_gap(double p) {
    if (p >= 1.0) return 0;
    const double gap = std::floor(std::log(unit_open_closed()) / std::log1p(-p));
    if (!(gap < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(gap);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dualvc
