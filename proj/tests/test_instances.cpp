#include "loewner/error.hpp"
#include "loewner/instances.hpp"
#include "loewner/spectral.hpp"

#include <gtest/gtest.h>

using namespace loewner;

TEST(Random, SeedDeterminism) {
  SplitMix64 a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  EXPECT_EQ(derive_seed(7, "midpoint", 3, 9), derive_seed(7, "midpoint", 3, 9));
  EXPECT_NE(derive_seed(7, "midpoint", 3, 9), derive_seed(7, "midpoint", 9, 3));
  EXPECT_NE(derive_seed(7, "midpoint", 3, 9), derive_seed(7, "ando", 3, 9));
}

TEST(Random, UniformAndNormalMoments) {
  SplitMix64 rng(1);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.03);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(Random, OrthogonalFactor) {
  SplitMix64 rng(2);
  for (int dim : {1, 2, 5, 9}) {
    const auto q = random_orthogonal(dim, rng);
    EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(dim, dim)).norm(), 1e-13);
  }
}

TEST(Instances, SpdSpectrumInRange) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    const auto a = random_spd(1 + static_cast<int>(k % 6), 0.5, 3.0, k);
    const auto [lo, hi] = spectrum_bounds(a);
    EXPECT_GE(lo, 0.5 - 1e-12);
    EXPECT_LE(hi, 3.0 + 1e-12);
  }
  EXPECT_EQ(random_spd(3, 2.0, 2.0, 1), SymMatrix::scalar(3, 2.0));
  EXPECT_EQ(random_spd(3, 0.5, 3.0, 11), random_spd(3, 0.5, 3.0, 11));
  EXPECT_THROW(random_spd(3, 0.0, 1.0, 1), InvalidArgument);
  EXPECT_THROW(random_spd(0, 1.0, 2.0, 1), DimensionError);
}

TEST(Instances, SandwichPairs) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    const int dim = 1 + static_cast<int>(k % 6);
    const auto p = random_sandwich_pair(dim, 0.3, 7.0, k);
    const auto [s, t] = estimate_sandwich(p.a, p.b);
    EXPECT_GE(s, 0.3 - 1e-9);
    EXPECT_LE(t, 7.0 + 1e-9);
    // scale invariance of the tightest scalars
    const auto [s2, t2] = estimate_sandwich(5.0 * p.a, 5.0 * p.b);
    EXPECT_NEAR(s, s2, 1e-10 * t);
    EXPECT_NEAR(t, t2, 1e-10 * t);
  }
  const auto eq = random_sandwich_pair(3, 2.0, 2.0, 5);
  EXPECT_EQ(eq.b, 2.0 * eq.a);
  EXPECT_THROW(random_sandwich_pair(2, 2.0, 1.0, 1), InvalidArgument);
}

TEST(Instances, BoundedPairs) {
  const auto p = random_bounded_pair(4, 1.0, 4.0, 3);
  for (const auto* m : {&p.a, &p.b}) {
    const auto [lo, hi] = spectrum_bounds(*m);
    EXPECT_GE(lo, 1.0 - 1e-12);
    EXPECT_LE(hi, 4.0 + 1e-12);
  }
  EXPECT_THROW(random_bounded_pair(2, 1.0, 1.0, 1), InvalidArgument);
}
