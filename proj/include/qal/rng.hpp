#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qal {

// Derives the seed for one ensemble member from the master seed. splitmix64
// over (master, index) so neighboring indices decorrelate.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// mt19937_64 with hand-rolled variate conversions. The std distribution
// objects are implementation-defined, which would break byte-identical
// outputs across standard libraries; these conversions pin the exact
// consumption of engine draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution; one engine draw.
  double uniform();

  // Uniform in [0, 2*pi); one engine draw.
  double angle();

  // Standard normal via Box-Muller (pairs cached).
  double gaussian();

  bool bernoulli(double p);

  // Uniform integer in [0, n); rejection sampling, n >= 1.
  std::uint64_t below(std::uint64_t n);

  // Fisher-Yates; identical element order for identical seeds.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool have_cached_gaussian_ = false;
};

}  // namespace qal
