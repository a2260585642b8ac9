#include "loewner/means.hpp"

#include "loewner/error.hpp"
#include "loewner/spectral.hpp"
#include "text.hpp"

#include <cmath>
#include <limits>

namespace loewner {

SymMatrix mean(const MeanContext& ctx, const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("mean: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
  if (!(ctx.cond_cap > 1.0)) throw InvalidArgument("mean: cond_cap must exceed 1");

  const auto da = decompose(a);
  const double lo = da.eigenvalues(0);
  const double hi = da.eigenvalues(da.eigenvalues.size() - 1);
  if (!(lo > 0.0)) {
    throw DomainError("mean: A is not positive definite (lambda_min = " + text::format_double(lo) + ")");
  }
  if (hi / lo > ctx.cond_cap) {
    throw DomainError("mean: cond(A) = " + text::format_double(hi / lo) + " exceeds cap " +
                      text::format_double(ctx.cond_cap));
  }
  if (!(lambda_min(b) > 0.0)) throw DomainError("mean: B is not positive definite");

  const auto a_half = matrix_function(da, [](double x) { return std::sqrt(x); });
  const auto a_inv_half = matrix_function(da, [](double x) { return 1.0 / std::sqrt(x); });
  const auto inner = SymMatrix::congruence(a_inv_half.mat(), b);
  const auto& k = ctx.kernel.eval;
  const auto mapped = matrix_function(inner, [&k](double x) {
    // roundoff can push a tiny eigenvalue of a PD congruence to <= 0
    return x > 0.0 ? k(x) : std::numeric_limits<double>::quiet_NaN();
  });
  return SymMatrix::congruence(a_half.mat(), mapped);
}

SymMatrix mean(const ScalarKernel& kernel, const SymMatrix& a, const SymMatrix& b) {
  return mean(MeanContext{kernel}, a, b);
}

SymMatrix arithmetic(const SymMatrix& a, const SymMatrix& b) { return 0.5 * (a + b); }

SymMatrix harmonic(const SymMatrix& a, const SymMatrix& b) {
  return inverse(0.5 * (inverse(a) + inverse(b)));
}

SymMatrix geometric(const SymMatrix& a, const SymMatrix& b) {
  return mean(ScalarKernel::geometric(), a, b);
}

}  // namespace loewner
