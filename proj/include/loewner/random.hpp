#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>

namespace loewner {

// SplitMix64 stream. The state advances by the golden-ratio increment and each
// output is the state passed through the SplitMix64 finalizer, so a seed
// determines the same stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Order-independent per-trial seed: hash of (master, tag, a, b).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t a,
                          std::uint64_t b = 0);

Eigen::MatrixXd gaussian_matrix(int rows, int cols, SplitMix64& rng);
// Haar-distributed orthogonal matrix: Q from QR of a Gaussian matrix with
// column signs fixed by diag(R).
Eigen::MatrixXd random_orthogonal(int dim, SplitMix64& rng);

}  // namespace loewner
