#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrg {

/// splitmix64 finalizer, used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random source: a seeded mt19937_64 plus hand-rolled
/// bounded/real sampling so results are identical across platforms
/// (std distributions are not portable, the raw engine is).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}

  /// Per-trial stream: seed derived as mix64(master + (trial+1) * golden).
  static Rng for_trial(std::uint64_t master, std::uint64_t trial) {
    return Rng(master + (trial + 1) * 0x9e3779b97f4a7c15ULL);
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, bound), unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real01() < p; }

  /// Inverse-CDF sample from an explicit probability vector.
  std::size_t sample_cdf(const std::vector<double>& probs) {
    double u = real01();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }

  std::string bitstring(std::size_t len) {
    std::string s(len, '0');
    for (auto& c : s) c = (eng_() >> 32) & 1 ? '1' : '0';
    return s;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qrg
