#pragma once

// Reference computations that share no code with the library: plain
// std::vector matrices, std::mt19937_64 sampling, closed forms.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat from_rows(int n, const std::vector<double>& row_major) {
  Mat m(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = row_major[static_cast<std::size_t>(i * n + j)];
  return m;
}

inline double quad(const Mat& m, const std::vector<double>& v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * m[i][j] * v[j];
  return s;
}

// min and max of v^T (Y - X) v over `samples` random unit vectors.
struct QuadRange {
  double lo;
  double hi;
};

inline QuadRange quadratic_form_range(const Mat& x, const Mat& y, int samples, std::uint64_t seed) {
  const std::size_t n = x.size();
  Mat d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = y[i][j] - x[i][j];
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  QuadRange r{INFINITY, -INFINITY};
  std::vector<double> v(n);
  for (int k = 0; k < samples; ++k) {
    double norm = 0;
    for (auto& e : v) {
      e = nd(gen);
      norm += e * e;
    }
    norm = std::sqrt(norm);
    for (auto& e : v) e /= norm;
    const double q = quad(d, v);
    r.lo = std::min(r.lo, q);
    r.hi = std::max(r.hi, q);
  }
  return r;
}

// Eigenvalues of [[a, b], [b, c]], ascending.
inline std::pair<double, double> eig2(double a, double b, double c) {
  const double mid = (a + c) / 2;
  const double rad = std::hypot((a - c) / 2, b);
  return {mid - rad, mid + rad};
}

inline double det(Mat m) {
  const std::size_t n = m.size();
  double d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// Sylvester-type test: every principal minor >= -eps.
inline bool psd_by_minors(const Mat& m, double eps) {
  const std::size_t n = m.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Mat sub(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = m[idx[i]][idx[j]];
    if (det(sub) < -eps) return false;
  }
  return true;
}

// Divided differences of f at the points (derivative by central difference).
template <typename F>
Mat loewner_matrix(F f, const std::vector<double>& x) {
  const std::size_t n = x.size();
  Mat m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        const double h = 1e-5 * x[i];
        m[i][j] = (f(x[i] + h) - f(x[i] - h)) / (2 * h);
      } else {
        m[i][j] = (f(x[i]) - f(x[j])) / (x[i] - x[j]);
      }
    }
  return m;
}

// Closed-form 2x2 geometric mean: sqrt(sqrt(ab)) (A/sqrt(a) + B/sqrt(b)) / sqrt(det(A/sqrt(a) + B/sqrt(b))),
// a = det A, b = det B.
inline Mat geometric2(const Mat& x, const Mat& y) {
  const double a = det(x);
  const double b = det(y);
  Mat s(2, std::vector<double>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s[i][j] = x[i][j] / std::sqrt(a) + y[i][j] / std::sqrt(b);
  const double scale = std::sqrt(std::sqrt(a * b)) / std::sqrt(det(s));
  for (auto& row : s)
    for (auto& e : row) e *= scale;
  return s;
}

}  // namespace oracle
