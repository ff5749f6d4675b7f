#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "edgesift/errors.hpp"

namespace edgesift {

// Scrambles a seed into an independent substream seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with hand-rolled samplers. The engine's output sequence is fully
// specified by the standard; the std::*_distribution adaptors are not, so we
// avoid them to keep results identical across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t bits() { return engine_(); }

  // [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Inclusive on both ends. Range must fit comfortably below 2^53.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw UsageError("uniform_int: empty range");
    const auto span = hi - lo + 1;
    auto v = static_cast<std::uint64_t>(uniform01() * static_cast<double>(span));
    if (v >= span) v = span - 1;
    return lo + v;
  }

  // Box-Muller, cosine branch only.
  double normal() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  double lognormal(double log_mean, double log_sigma) {
    return std::exp(normal(log_mean, log_sigma));
  }

  // Index drawn proportionally to the given non-negative masses.
  std::size_t categorical(std::span<const double> masses) {
    if (masses.empty()) throw UsageError("categorical: no masses");
    double total = 0.0;
    for (double m : masses) total += m;
    if (!(total > 0.0)) throw UsageError("categorical: masses sum to zero");
    const double r = uniform01() * total;
    double cum = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      if (masses[i] <= 0.0) continue;
      cum += masses[i];
      last = i;
      if (r < cum) return i;
    }
    return last;
  }

  // Support {1, 2, ...} with the given mean; values above cap are clamped.
  std::size_t geometric(double mean, std::size_t cap) {
    if (!(mean >= 1.0)) throw UsageError("geometric: mean must be >= 1");
    if (mean == 1.0) return 1;
    const double p = 1.0 / mean;
    const double u = uniform01();
    const double k = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
    auto n = static_cast<std::size_t>(k);
    if (n < 1) n = 1;
    return n > cap ? cap : n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgesift
