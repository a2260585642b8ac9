#pragma once

#include "loewner/kernels.hpp"
#include "loewner/sym_matrix.hpp"

namespace loewner {

struct MeanContext {
  ScalarKernel kernel;
  double cond_cap = 1e8;  // maximum allowed condition number of A
};

// A^{1/2} k(A^{-1/2} B A^{-1/2}) A^{1/2}. Requires A, B positive definite and
// cond(A) <= cond_cap.
SymMatrix mean(const MeanContext& ctx, const SymMatrix& a, const SymMatrix& b);
SymMatrix mean(const ScalarKernel& kernel, const SymMatrix& a, const SymMatrix& b);

SymMatrix arithmetic(const SymMatrix& a, const SymMatrix& b);
SymMatrix harmonic(const SymMatrix& a, const SymMatrix& b);
SymMatrix geometric(const SymMatrix& a, const SymMatrix& b);

}  // namespace loewner
