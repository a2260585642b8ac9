#include "loewner/random.hpp"

#include <cmath>
#include <numbers>

namespace loewner {

double SplitMix64::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double SplitMix64::normal() {
  // 1 - uniform() lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t a,
                          std::uint64_t b) {
  // FNV-1a over the tag, then SplitMix finalizer rounds.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  std::uint64_t z = SplitMix64::mix(master + 0x9E3779B97F4A7C15ULL);
  z = SplitMix64::mix(z ^ h);
  z = SplitMix64::mix(z ^ (a * 0xD1B54A32D192ED03ULL));
  z = SplitMix64::mix(z ^ (b * 0xABC98388FB8FAC03ULL));
  return z;
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, SplitMix64& rng) {
  Eigen::MatrixXd g(rows, cols);
  // Fill row-major so the stream order does not depend on Eigen's storage.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  return g;
}

Eigen::MatrixXd random_orthogonal(int dim, SplitMix64& rng) {
  const Eigen::MatrixXd g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace loewner
