#include "loewner/sym_matrix.hpp"

#include "loewner/error.hpp"

#include <cmath>
#include <string>

namespace loewner {

namespace {

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("SymMatrix requires a square matrix, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
  }
  if (m.rows() == 0) throw DimensionError("SymMatrix requires dim >= 1");
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  if (!s.allFinite()) throw DomainError("SymMatrix entries must be finite");
  return s;
}

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) : m_(symmetrize(m)) {}

SymMatrix::SymMatrix(Eigen::MatrixXd m, Trusted) : m_(std::move(m)) {}

SymMatrix::SymMatrix(int dim, std::span<const double> row_major) {
  if (dim < 1) throw DimensionError("SymMatrix requires dim >= 1");
  if (row_major.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(row_major.size()));
  }
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = row_major[static_cast<std::size_t>(i * dim + j)];
  m_ = symmetrize(m);
}

SymMatrix SymMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("SymMatrix requires dim >= 1");
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim), Trusted{});
}

SymMatrix SymMatrix::zero(int dim) {
  if (dim < 1) throw DimensionError("SymMatrix requires dim >= 1");
  return SymMatrix(Eigen::MatrixXd::Zero(dim, dim), Trusted{});
}

SymMatrix SymMatrix::scalar(int dim, double value) {
  if (!std::isfinite(value)) throw DomainError("SymMatrix entries must be finite");
  return SymMatrix(value * Eigen::MatrixXd::Identity(dim, dim), Trusted{});
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  if (d.empty()) throw DimensionError("SymMatrix requires dim >= 1");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()),
                                            static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return SymMatrix(m);
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

SymMatrix SymMatrix::congruence(const Eigen::MatrixXd& t, const SymMatrix& x) {
  if (t.rows() != x.dim()) {
    throw DimensionError("congruence factor has " + std::to_string(t.rows()) +
                         " rows, matrix dim is " + std::to_string(x.dim()));
  }
  return SymMatrix(Eigen::MatrixXd(t.transpose() * x.m_ * t));
}

SymMatrix SymMatrix::congruence_t(const Eigen::MatrixXd& t, const SymMatrix& x) {
  if (t.cols() != x.dim()) {
    throw DimensionError("congruence factor has " + std::to_string(t.cols()) +
                         " columns, matrix dim is " + std::to_string(x.dim()));
  }
  return SymMatrix(Eigen::MatrixXd(t * x.m_ * t.transpose()));
}

std::vector<double> SymMatrix::row_major() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim() * dim()));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out.push_back(m_(i, j));
  return out;
}

static void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  require_same_dim(*this, o);
  return SymMatrix(m_ + o.m_, Trusted{});
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  require_same_dim(*this, o);
  return SymMatrix(m_ - o.m_, Trusted{});
}

SymMatrix SymMatrix::operator*(double c) const {
  if (!std::isfinite(c)) throw DomainError("scalar factor must be finite");
  return SymMatrix(c * m_, Trusted{});
}

SymMatrix SymMatrix::commuting_product(const SymMatrix& o) const {
  require_same_dim(*this, o);
  return SymMatrix(Eigen::MatrixXd(m_ * o.m_));
}

double SymMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

}  // namespace loewner
