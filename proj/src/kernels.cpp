#include "loewner/kernels.hpp"

#include "loewner/error.hpp"
#include "loewner/spectral.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace loewner {

ScalarKernel ScalarKernel::arithmetic() {
  return {"arithmetic", [](double t) { return 0.5 * (1.0 + t); }, true};
}

ScalarKernel ScalarKernel::geometric() {
  return {"geometric", [](double t) { return std::sqrt(t); }, true};
}

ScalarKernel ScalarKernel::harmonic() {
  return {"harmonic", [](double t) { return 2.0 * t / (1.0 + t); }, true};
}

ScalarKernel ScalarKernel::logarithmic() {
  return {"logarithmic",
          [](double t) {
            const double u = t - 1.0;
            if (std::abs(u) < 1e-8) return 1.0 + 0.5 * u;  // removable singularity at t = 1
            return u / std::log1p(u);
          },
          true};
}

ScalarKernel ScalarKernel::heinz(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("heinz parameter must lie in [0, 1]");
  return {"heinz:" + text::format_double(nu),
          [nu](double t) { return 0.5 * (std::pow(t, nu) + std::pow(t, 1.0 - nu)); }, true};
}

ScalarKernel ScalarKernel::parse(std::string_view id) {
  const auto parts = text::split(id, ':');
  const auto& head = parts[0];
  if (parts.size() == 1) {
    if (head == "arithmetic") return arithmetic();
    if (head == "geometric") return geometric();
    if (head == "harmonic") return harmonic();
    if (head == "logarithmic") return logarithmic();
  } else if (parts.size() == 2 && head == "heinz") {
    return heinz(text::parse_double(parts[1], "heinz parameter"));
  }
  throw ParseError("unknown kernel '" + std::string(id) +
                   "' (expected arithmetic, geometric, harmonic, logarithmic or heinz:NU)");
}

const std::vector<std::string>& kernel_catalog_ids() {
  static const std::vector<std::string> ids = {"arithmetic", "geometric", "harmonic",
                                               "logarithmic", "heinz:0.25"};
  return ids;
}

namespace {

constexpr auto kMono = static_cast<std::uint8_t>(FunctionClass::OperatorMonotone);
constexpr auto kDecr = static_cast<std::uint8_t>(FunctionClass::OperatorMonotoneDecreasing);
constexpr auto kConv = static_cast<std::uint8_t>(FunctionClass::OperatorConvexZero);

MonotoneFunction power_fn(std::string id, double p) {
  std::uint8_t cls = 0;
  if (p > 0.0 && p <= 1.0) cls |= kMono;
  if (p >= 1.0 && p <= 2.0) cls |= kConv;
  if (cls == 0) throw DomainError("power exponent must lie in (0, 2]");
  return {std::move(id), [p](double t) { return t == 0.0 ? 0.0 : std::pow(t, p); }, cls};
}

}  // namespace

MonotoneFunction MonotoneFunction::parse(std::string_view id) {
  const auto parts = text::split(id, ':');
  const auto& head = parts[0];
  const std::string full(id);
  if (parts.size() == 1) {
    if (head == "sqrt") return power_fn(full, 0.5);
    if (head == "identity") return power_fn(full, 1.0);
    if (head == "square") return power_fn(full, 2.0);
    if (head == "log1p") return {full, [](double t) { return std::log1p(t); }, kMono};
    if (head == "inverse") return {full, [](double t) { return 1.0 / t; }, kDecr};
  } else if (parts.size() == 2) {
    const double v = text::parse_double(parts[1], head + " parameter");
    if (head == "power") return power_fn(full, v);
    if (head == "rational") {
      if (!(v > 0.0)) throw DomainError("rational:c requires c > 0");
      return {full, [v](double t) { return t / (t + v); }, kMono};
    }
    if (head == "inv_power") {
      if (!(v > 0.0 && v <= 1.0)) throw DomainError("inv_power exponent must lie in (0, 1]");
      return {full, [v](double t) { return std::pow(t, -v); }, kDecr};
    }
    if (head == "shifted_inverse") {
      if (!(v >= 0.0)) throw DomainError("shifted_inverse:c requires c >= 0");
      return {full, [v](double t) { return 1.0 / (t + v); }, kDecr};
    }
  }
  throw ParseError("unknown function '" + full + "'");
}

const std::vector<std::string>& function_catalog_ids(FunctionClass c) {
  static const std::vector<std::string> mono = {"sqrt", "power:0.3", "identity", "log1p",
                                                "rational:1"};
  static const std::vector<std::string> decr = {"inverse", "inv_power:0.5", "shifted_inverse:1",
                                                "shifted_inverse:0.5"};
  static const std::vector<std::string> conv = {"square", "power:1.5"};
  switch (c) {
    case FunctionClass::OperatorMonotone: return mono;
    case FunctionClass::OperatorMonotoneDecreasing: return decr;
    case FunctionClass::OperatorConvexZero: return conv;
  }
  return mono;
}

double eval_kernel(const ScalarKernel& k, double t) {
  if (!(t > 0.0)) throw DomainError("kernel argument must be positive, got " + text::format_double(t));
  return k.eval(t);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi >= lo) || count < 1) throw InvalidArgument("invalid log grid");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    g[static_cast<std::size_t>(i)] = count == 1 ? lo : std::exp(a + (b - a) * i / (count - 1));
  }
  return g;
}

const std::vector<double>& default_grid() {
  static const std::vector<double> g = log_grid(1e-4, 1e4, 400);
  return g;
}

DominanceVerdict kernel_dominance(const ScalarKernel& k1, const ScalarKernel& k2,
                                  std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("kernel_dominance: empty grid");
  DominanceVerdict v{true, grid[0], std::numeric_limits<double>::infinity()};
  for (double t : grid) {
    const double gap = eval_kernel(k2, t) - eval_kernel(k1, t);
    if (gap < v.worst_gap) {
      v.worst_gap = gap;
      v.worst_point = t;
    }
    if (gap < -1e-12) v.holds = false;
  }
  return v;
}

bool is_symmetric_kernel(const ScalarKernel& k, std::span<const double> grid) {
  for (double t : grid) {
    const double kt = eval_kernel(k, t);
    if (std::abs(kt - t * eval_kernel(k, 1.0 / t)) > 1e-10 * (1.0 + kt)) return false;
  }
  return true;
}

std::vector<std::vector<double>> loewner_matrix(const std::function<double(double)>& f,
                                                std::span<const double> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double xi = points[i];
      const double xj = points[j];
      if (i == j) {
        const double h = 1e-6 * xi;
        l[i][j] = (f(xi + h) - f(xi - h)) / (2.0 * h);
      } else {
        if (xi == xj) throw InvalidArgument("loewner_matrix: duplicate point " + text::format_double(xi));
        l[i][j] = (f(xi) - f(xj)) / (xi - xj);
      }
    }
  }
  return l;
}

bool loewner_matrix_psd_test(const std::function<double(double)>& f, std::span<const double> points) {
  if (points.empty()) throw InvalidArgument("loewner_matrix_psd_test: no points");
  const auto l = loewner_matrix(f, points);
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return lambda_min(SymMatrix(m)) >= -1e-8;
}

bool loewner_matrix_psd_test(const MonotoneFunction& f, std::span<const double> points) {
  return loewner_matrix_psd_test(f.eval, points);
}

double specht_ratio(double h) {
  if (!(h > 0.0)) throw DomainError("specht_ratio requires h > 0");
  const double u = h - 1.0;
  if (u == 0.0) return 1.0;
  // l = ln h^{1/(h-1)}
  const double l = std::log1p(u) / u;
  return std::exp(l) / (std::numbers::e * l);
}

static void require_sandwich_scalars(double s, double t) {
  if (!(s > 0.0 && t >= s && std::isfinite(t))) {
    throw DomainError("sandwich scalars must satisfy 0 < s <= t, got s = " + text::format_double(s) +
                      ", t = " + text::format_double(t));
  }
}

double sandwich_factor(double s, double t) {
  require_sandwich_scalars(s, t);
  const double sum = std::sqrt(s) + std::sqrt(t);
  return s * t >= 1.0 ? 0.5 * sum : sum / (2.0 * std::sqrt(s * t));
}

double sandwich_constant(double s, double t) {
  const double c = sandwich_factor(s, t);
  return c * c;
}

double kantorovich_constant(double m, double big_m) {
  if (!(m > 0.0 && big_m >= m)) throw DomainError("kantorovich constant requires 0 < m <= M");
  return (big_m + m) * (big_m + m) / (4.0 * big_m * m);
}

}  // namespace loewner
