#include "loewner/spectral.hpp"

#include "loewner/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace loewner {

SpectralDecomposition decompose(const SymMatrix& a) {
  const int n = a.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.mat());
  SpectralDecomposition d;
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver did not converge (dim " + std::to_string(n) + ")",
                           std::numeric_limits<double>::infinity());
  }
  d.eigenvalues = solver.eigenvalues();
  d.basis = solver.eigenvectors();

  const double scale = std::max(1.0, a.frobenius());
  const double residual =
      (d.basis * d.eigenvalues.asDiagonal() * d.basis.transpose() - a.mat()).norm();
  if (!(residual <= 1e-12 * scale)) {
    throw ConvergenceError("eigendecomposition residual " + text::format_double(residual) +
                               " exceeds 1e-12 * " + text::format_double(scale),
                           residual);
  }
  return d;
}

SymMatrix matrix_function(const SpectralDecomposition& d, const ScalarFn& fn) {
  const Eigen::Index n = d.eigenvalues.size();
  Eigen::VectorXd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = fn(d.eigenvalues(i));
    if (!std::isfinite(v)) {
      throw DomainError("function undefined at eigenvalue " +
                        text::format_double(d.eigenvalues(i)));
    }
    mapped(i) = v;
  }
  return SymMatrix(Eigen::MatrixXd(d.basis * mapped.asDiagonal() * d.basis.transpose()));
}

SymMatrix matrix_function(const SymMatrix& a, const ScalarFn& fn) {
  return matrix_function(decompose(a), fn);
}

std::pair<double, double> spectrum_bounds(const SymMatrix& x) {
  const auto d = decompose(x);
  return {d.eigenvalues(0), d.eigenvalues(d.eigenvalues.size() - 1)};
}

double lambda_min(const SymMatrix& x) { return spectrum_bounds(x).first; }
double lambda_max(const SymMatrix& x) { return spectrum_bounds(x).second; }

namespace {

SpectralDecomposition decompose_pd(const SymMatrix& a, const char* what) {
  auto d = decompose(a);
  if (!(d.eigenvalues(0) > 0.0)) {
    throw DomainError(std::string(what) + " requires a positive definite matrix, lambda_min = " +
                      text::format_double(d.eigenvalues(0)));
  }
  return d;
}

}  // namespace

SymMatrix sqrtm(const SymMatrix& a) {
  auto d = decompose(a);
  if (d.eigenvalues(0) < 0.0) {
    throw DomainError("sqrtm requires a positive semidefinite matrix, lambda_min = " +
                      text::format_double(d.eigenvalues(0)));
  }
  return matrix_function(d, [](double x) { return std::sqrt(x); });
}

SymMatrix inv_sqrtm(const SymMatrix& a) {
  return matrix_function(decompose_pd(a, "inv_sqrtm"), [](double x) { return 1.0 / std::sqrt(x); });
}

SymMatrix inverse(const SymMatrix& a) {
  return matrix_function(decompose_pd(a, "inverse"), [](double x) { return 1.0 / x; });
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::LE: return "LE";
    case Relation::GE: return "GE";
    case Relation::EQ: return "EQ";
    case Relation::INCOMPARABLE: return "INCOMPARABLE";
  }
  return "?";
}

LoewnerVerdict loewner_compare(const SymMatrix& x, const SymMatrix& y, double tol) {
  if (x.dim() != y.dim()) {
    throw DimensionError("loewner_compare: dimension mismatch " + std::to_string(x.dim()) +
                         " vs " + std::to_string(y.dim()));
  }
  if (!(tol >= 0.0)) throw InvalidArgument("loewner_compare: tol must be >= 0");
  LoewnerVerdict v{};
  v.slack_le = lambda_min(y - x);
  v.slack_ge = lambda_min(x - y);
  const bool le = v.slack_le >= -tol;
  const bool ge = v.slack_ge >= -tol;
  if (le && ge) v.relation = Relation::EQ;
  else if (le) v.relation = Relation::LE;
  else if (ge) v.relation = Relation::GE;
  else v.relation = Relation::INCOMPARABLE;
  return v;
}

double default_tolerance(const SymMatrix& x, const SymMatrix& y, double tol_rel) {
  return tol_rel * std::max(1.0, ui_norm(x, NormKind::op()) + ui_norm(y, NormKind::op()));
}

NormKind NormKind::parse(std::string_view id) {
  const auto parts = text::split(id, ':');
  const auto& head = parts[0];
  if (head == "op" || head == "operator") {
    if (parts.size() == 1) return op();
  } else if (head == "trace") {
    if (parts.size() == 1) return trace();
  } else if (head == "frobenius") {
    if (parts.size() == 1) return frobenius();
  } else if (head == "kyfan" && parts.size() == 2) {
    const int k = text::parse_int(parts[1], "kyfan k");
    if (k < 1) throw ParseError("kyfan k must be >= 1");
    return ky_fan(k);
  } else if (head == "schatten" && parts.size() == 2) {
    const double p = text::parse_double(parts[1], "schatten p");
    if (!(p >= 1.0)) throw ParseError("schatten p must be >= 1");
    return schatten(p);
  }
  throw ParseError("unknown norm '" + std::string(id) +
                   "' (expected op, trace, frobenius, kyfan:K or schatten:P)");
}

std::string NormKind::id() const {
  switch (variant) {
    case Variant::Operator: return "op";
    case Variant::Trace: return "trace";
    case Variant::Frobenius: return "frobenius";
    case Variant::KyFan: return "kyfan:" + std::to_string(k);
    case Variant::Schatten: return "schatten:" + text::format_double(p);
  }
  return "?";
}

double ui_norm(const SymMatrix& x, const NormKind& kind) {
  const auto d = decompose(x);
  std::vector<double> sv(static_cast<std::size_t>(d.eigenvalues.size()));
  for (std::size_t i = 0; i < sv.size(); ++i) sv[i] = std::abs(d.eigenvalues(static_cast<Eigen::Index>(i)));
  std::sort(sv.begin(), sv.end(), std::greater<>());

  switch (kind.variant) {
    case NormKind::Variant::Operator:
      return sv.front();
    case NormKind::Variant::Trace:
      return std::accumulate(sv.begin(), sv.end(), 0.0);
    case NormKind::Variant::KyFan:
      if (kind.k < 1 || kind.k > x.dim()) {
        throw InvalidArgument("KyFan k = " + std::to_string(kind.k) + " out of range 1.." +
                              std::to_string(x.dim()));
      }
      return std::accumulate(sv.begin(), sv.begin() + kind.k, 0.0);
    case NormKind::Variant::Frobenius:
    case NormKind::Variant::Schatten: {
      const double p = kind.variant == NormKind::Variant::Frobenius ? 2.0 : kind.p;
      if (!(p >= 1.0)) throw InvalidArgument("Schatten p must be >= 1");
      // Scale by the largest singular value to avoid overflow for large p.
      const double top = sv.front();
      if (top == 0.0) return 0.0;
      double acc = 0.0;
      for (double s : sv) acc += std::pow(s / top, p);
      return top * std::pow(acc, 1.0 / p);
    }
  }
  return 0.0;
}

}  // namespace loewner
