#pragma once

#include "loewner/random.hpp"
#include "loewner/sym_matrix.hpp"

#include <cstdint>
#include <utility>

namespace loewner {

// sA <= B <= tA
struct SandwichPair {
  SymMatrix a;
  SymMatrix b;
  double s;
  double t;
};

// mI <= A, B <= MI
struct BoundedPair {
  SymMatrix a;
  SymMatrix b;
  double m;
  double big_m;
};

// Q diag(lambda) Q^T with lambda uniform in [lo, hi] and Q Haar-orthogonal.
// lo == hi yields exactly lo * I.
SymMatrix random_spd(int dim, double lo, double hi, std::uint64_t seed);
SymMatrix random_spd(int dim, double lo, double hi, SplitMix64& rng);

// A = random_spd(dim, a_lo, a_hi), C = random_spd with spectrum in [s, t],
// B = A^{1/2} C A^{1/2}. The sandwich invariant is verified before returning.
SandwichPair random_sandwich_pair(int dim, double s, double t, std::uint64_t seed,
                                  double a_lo = 0.1, double a_hi = 10.0);

BoundedPair random_bounded_pair(int dim, double m, double big_m, std::uint64_t seed);

// Extreme eigenvalues of A^{-1/2} B A^{-1/2}: the tightest sandwich scalars.
std::pair<double, double> estimate_sandwich(const SymMatrix& a, const SymMatrix& b);

}  // namespace loewner
