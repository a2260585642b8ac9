#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loewner {

// Representing function of a binary operator mean: positive on (0, inf),
// normalized so that eval(1) == 1.
struct ScalarKernel {
  std::string id;
  std::function<double(double)> eval;
  bool claims_symmetric = true;

  // arithmetic | geometric | harmonic | logarithmic | heinz:NU
  static ScalarKernel parse(std::string_view id);
  static ScalarKernel arithmetic();
  static ScalarKernel geometric();
  static ScalarKernel harmonic();
  static ScalarKernel logarithmic();
  static ScalarKernel heinz(double nu);
};

const std::vector<std::string>& kernel_catalog_ids();

enum class FunctionClass : std::uint8_t {
  OperatorMonotone = 1,
  OperatorMonotoneDecreasing = 2,
  OperatorConvexZero = 4,
};

struct MonotoneFunction {
  std::string id;
  std::function<double(double)> eval;
  std::uint8_t classes = 0;

  bool has_class(FunctionClass c) const { return (classes & static_cast<std::uint8_t>(c)) != 0; }

  // power:P | sqrt | identity | square | log1p | rational:C | inv_power:P |
  // inverse | shifted_inverse:C
  static MonotoneFunction parse(std::string_view id);
};

const std::vector<std::string>& function_catalog_ids(FunctionClass c);

// Throws DomainError for t <= 0.
double eval_kernel(const ScalarKernel& k, double t);

// 400 log-spaced points in [1e-4, 1e4].
const std::vector<double>& default_grid();
std::vector<double> log_grid(double lo, double hi, int count);

struct DominanceVerdict {
  bool holds;
  double worst_point;  // argmin of k2 - k1
  double worst_gap;    // k2 - k1 there
};

// k1(t) <= k2(t) + 1e-12 at every grid point.
DominanceVerdict kernel_dominance(const ScalarKernel& k1, const ScalarKernel& k2,
                                  std::span<const double> grid = default_grid());

// |k(t) - t k(1/t)| <= 1e-10 (1 + k(t)) on the grid.
bool is_symmetric_kernel(const ScalarKernel& k, std::span<const double> grid = default_grid());

// Divided-difference (Loewner) matrix of f at the points is PSD up to -1e-8.
// Necessary condition for operator monotonicity. Throws on duplicate points.
bool loewner_matrix_psd_test(const std::function<double(double)>& f, std::span<const double> points);
bool loewner_matrix_psd_test(const MonotoneFunction& f, std::span<const double> points);
std::vector<std::vector<double>> loewner_matrix(const std::function<double(double)>& f,
                                                std::span<const double> points);

// S(h) = h^{1/(h-1)} / (e ln h^{1/(h-1)}), S(1) = 1.
double specht_ratio(double h);

// ((sqrt s + sqrt t) / 2)^2 when st >= 1, ((sqrt s + sqrt t) / (2 sqrt(st)))^2 otherwise.
double sandwich_constant(double s, double t);
// Square root of sandwich_constant: the two-sided factor relating the
// arithmetic, geometric and harmonic means under sA <= B <= tA.
double sandwich_factor(double s, double t);

// (M + m)^2 / (4 M m)
double kantorovich_constant(double m, double big_m);

}  // namespace loewner
