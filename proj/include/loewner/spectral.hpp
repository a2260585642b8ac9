#pragma once

#include "loewner/sym_matrix.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <utility>

namespace loewner {

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd basis;        // orthonormal columns, basis.col(i) pairs with eigenvalues(i)
};

// Throws ConvergenceError (carrying the reconstruction residual) when the
// eigensolver does not converge or the reconstruction contract is missed.
SpectralDecomposition decompose(const SymMatrix& a);

using ScalarFn = std::function<double(double)>;

// Q diag(fn(lambda_i)) Q^T. Throws DomainError naming the first eigenvalue at
// which fn is not finite.
SymMatrix matrix_function(const SymMatrix& a, const ScalarFn& fn);
SymMatrix matrix_function(const SpectralDecomposition& d, const ScalarFn& fn);

std::pair<double, double> spectrum_bounds(const SymMatrix& x);
double lambda_min(const SymMatrix& x);
double lambda_max(const SymMatrix& x);

// Inverse square root, square root and inverse of a positive definite matrix.
SymMatrix sqrtm(const SymMatrix& a);
SymMatrix inv_sqrtm(const SymMatrix& a);
SymMatrix inverse(const SymMatrix& a);

enum class Relation { LE, GE, EQ, INCOMPARABLE };
std::string_view to_string(Relation r);

struct LoewnerVerdict {
  Relation relation;
  double slack_le;  // lambda_min(Y - X)
  double slack_ge;  // lambda_min(X - Y)
};

LoewnerVerdict loewner_compare(const SymMatrix& x, const SymMatrix& y, double tol);

inline constexpr double kDefaultTolRel = 1e-9;

// tol_rel * max(1, ||X||_op + ||Y||_op)
double default_tolerance(const SymMatrix& x, const SymMatrix& y, double tol_rel = kDefaultTolRel);

struct NormKind {
  enum class Variant { Operator, Trace, Frobenius, KyFan, Schatten };
  Variant variant = Variant::Operator;
  int k = 1;       // KyFan
  double p = 2.0;  // Schatten

  static NormKind op() { return {}; }
  static NormKind trace() { return {Variant::Trace}; }
  static NormKind frobenius() { return {Variant::Frobenius}; }
  static NormKind ky_fan(int k) { return {Variant::KyFan, k}; }
  static NormKind schatten(double p) { return {Variant::Schatten, 1, p}; }

  // "op", "trace", "frobenius", "kyfan:K", "schatten:P"
  static NormKind parse(std::string_view id);
  std::string id() const;
};

double ui_norm(const SymMatrix& x, const NormKind& kind);

}  // namespace loewner
