#include "loewner/instances.hpp"

#include "loewner/error.hpp"
#include "loewner/spectral.hpp"
#include "text.hpp"

#include <cmath>

namespace loewner {

SymMatrix random_spd(int dim, double lo, double hi, SplitMix64& rng) {
  if (dim < 1) throw DimensionError("random_spd requires dim >= 1");
  if (!(lo > 0.0 && hi >= lo && std::isfinite(hi))) {
    throw InvalidArgument("random_spd requires 0 < lo <= hi, got [" + text::format_double(lo) + ", " +
                          text::format_double(hi) + "]");
  }
  if (lo == hi) return SymMatrix::scalar(dim, lo);
  const Eigen::MatrixXd q = random_orthogonal(dim, rng);
  Eigen::VectorXd lambda(dim);
  for (int i = 0; i < dim; ++i) lambda(i) = rng.uniform(lo, hi);
  return SymMatrix(Eigen::MatrixXd(q * lambda.asDiagonal() * q.transpose()));
}

SymMatrix random_spd(int dim, double lo, double hi, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_spd(dim, lo, hi, rng);
}

std::pair<double, double> estimate_sandwich(const SymMatrix& a, const SymMatrix& b) {
  const auto inner = SymMatrix::congruence(inv_sqrtm(a).mat(), b);
  return spectrum_bounds(inner);
}

SandwichPair random_sandwich_pair(int dim, double s, double t, std::uint64_t seed, double a_lo,
                                  double a_hi) {
  if (!(s > 0.0 && t >= s && std::isfinite(t))) {
    throw InvalidArgument("random_sandwich_pair requires 0 < s <= t");
  }
  SplitMix64 rng(seed);
  auto a = random_spd(dim, a_lo, a_hi, rng);
  SymMatrix b = s == t ? s * a : SymMatrix::congruence(sqrtm(a).mat(), random_spd(dim, s, t, rng));

  const auto [s_star, t_star] = estimate_sandwich(a, b);
  const double tol = 1e-9 * std::max(1.0, t);
  if (!(s_star >= s - tol && t_star <= t + tol)) {
    throw ConvergenceError("generated sandwich pair violates s <= s* <= t* <= t (s* = " +
                               text::format_double(s_star) + ", t* = " + text::format_double(t_star) + ")",
                           std::max(s - s_star, t_star - t));
  }
  return {std::move(a), std::move(b), s, t};
}

BoundedPair random_bounded_pair(int dim, double m, double big_m, std::uint64_t seed) {
  if (!(m > 0.0 && big_m > m && std::isfinite(big_m))) {
    throw InvalidArgument("random_bounded_pair requires 0 < m < M");
  }
  SplitMix64 rng(seed);
  auto a = random_spd(dim, m, big_m, rng);
  auto b = random_spd(dim, m, big_m, rng);
  return {std::move(a), std::move(b), m, big_m};
}

}  // namespace loewner
