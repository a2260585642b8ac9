#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace loewner {

// Dense real symmetric matrix. Symmetry is exact: the constructor replaces
// its input by (X + X^T) / 2, and every entry must be finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);
  // Row-major entries, n*n of them.
  SymMatrix(int dim, std::span<const double> row_major);

  static SymMatrix identity(int dim);
  static SymMatrix zero(int dim);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix diagonal(std::initializer_list<double> d);
  static SymMatrix scalar(int dim, double value);
  // (T^T X T), symmetrized. T may be rectangular (rows == X.dim()).
  static SymMatrix congruence(const Eigen::MatrixXd& t, const SymMatrix& x);
  // (T X T^T), symmetrized.
  static SymMatrix congruence_t(const Eigen::MatrixXd& t, const SymMatrix& x);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& mat() const noexcept { return m_; }
  std::vector<double> row_major() const;

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator*(double c) const;
  friend SymMatrix operator*(double c, const SymMatrix& x) { return x * c; }
  // Symmetrized product, for factors known to commute (e.g. X*X).
  SymMatrix commuting_product(const SymMatrix& o) const;

  double frobenius() const { return m_.norm(); }
  double trace() const { return m_.trace(); }
  double max_abs() const;

  bool operator==(const SymMatrix& o) const { return m_ == o.m_; }

 private:
  struct Trusted {};
  SymMatrix(Eigen::MatrixXd m, Trusted);
  Eigen::MatrixXd m_;
};

}  // namespace loewner
