#pragma once

#include "loewner/kernels.hpp"
#include "loewner/maps.hpp"
#include "loewner/spectral.hpp"
#include "loewner/sym_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace loewner {

// Everything needed to re-evaluate a certificate, besides the matrices.
struct CheckParams {
  std::string map;    // MapSpec id
  std::string tau;    // kernel ids
  std::string sigma;
  std::string fn;     // MonotoneFunction id
  std::string norm;   // NormKind id
  std::optional<double> s, t, m, big_m, alpha;
  int dim = 0;
  std::uint64_t seed = 0;
};

using Side = std::variant<double, SymMatrix>;

// One evaluated inequality instance LHS <= RHS.
//
// slack is lambda_min(RHS - LHS) for operator inequalities and RHS - LHS for
// scalar ones; holds iff slack >= -tolerance. ratio is the effective constant
// of the instance (the smallest constant for which it would still hold), so
// ratio <= constant up to tolerance whenever the certificate holds.
struct Certificate {
  std::string inequality_id;
  CheckParams params;
  Side lhs = 0.0;
  Side rhs = 0.0;
  double constant = 1.0;
  double slack = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  std::vector<Certificate> parts;

  double tightness() const { return ratio / constant; }
};

struct CheckOptions {
  double tol_rel = kDefaultTolRel;
  double constant_scale = 1.0;  // multiplies the constant (sensitivity runs)
};

// Phi(A) # Phi(B) <= (M+m)/(2 sqrt(Mm)) Phi(A # B); ratio = ||LHS||_op / ||Phi(A # B)||_op.
Certificate check_polya_szego(const MapSpec& phi, const SymMatrix& a, const SymMatrix& b, double m,
                              double big_m, const CheckOptions& opts = {});

// f(Phi(A)) tau f(Phi(B)) <= (M+m)^2/(4Mm) f(Phi(A sigma B)).
Certificate check_kantorovich_f(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                double m, double big_m, const CheckOptions& opts = {});

// c1 (A nabla B) <= A # B <= c2 (A ! B), branch on st versus 1.
std::pair<Certificate, Certificate> check_sandwich_lemma(const SymMatrix& a, const SymMatrix& b, double s,
                                                         double t, const CheckOptions& opts = {});
// Scalar inequalities behind the lemma on a grid over [s, t].
Certificate check_sandwich_lemma_scalar(double s, double t, const CheckOptions& opts = {});

// f(alpha x) <= alpha f(x) (monotone) or g(alpha x) >= g(x) / alpha (decreasing) on the grid.
Certificate check_alpha_scaling(const MonotoneFunction& fn, double alpha,
                                std::span<const double> grid = default_grid(),
                                const CheckOptions& opts = {});

// Phi(f(A)) tau Phi(f(B)) <= C(s,t) Phi(f(A sigma B)).
Certificate check_main_monotone(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                double s, double t, const CheckOptions& opts = {});

// Phi(g(A tau B)) <= C(s,t) Phi(g(A)) sigma Phi(g(B)).
Certificate check_main_decreasing(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                  const MonotoneFunction& g, const SymMatrix& a, const SymMatrix& b,
                                  double s, double t, const CheckOptions& opts = {});

enum class GrussFamily { Monotone, Decreasing };

// Difference bounds (M-m)^2/(4Mm) f(M) and (M-m)^2/(4Mm) g(m). Requires a unital
// map; a non-unital map raises HypothesisError.
Certificate check_gruss(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                        const MonotoneFunction& fn, const SymMatrix& a, const SymMatrix& b, double m,
                        double big_m, GrussFamily family, const CheckOptions& opts = {});
// Same evaluation without the unitality gate.
Certificate gruss_difference(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                             const MonotoneFunction& fn, const SymMatrix& a, const SymMatrix& b, double m,
                             double big_m, GrussFamily family, const CheckOptions& opts = {});

enum class NormRatioMode { TauSide, SharpSide, Power4, Eq15 };

struct NormRatioInput {
  NormRatioMode mode = NormRatioMode::TauSide;
  ScalarKernel tau = ScalarKernel::geometric();
  ScalarKernel sigma = ScalarKernel::geometric();
  MonotoneFunction g;
  NormKind norm;
  double s = 1.0, t = 1.0;      // sandwich modes
  double m = 1.0, big_m = 1.0;  // Eq15 mode
};

// Audit check: the verdict may be negative; it is data, not an error.
Certificate check_norm_ratio(const NormRatioInput& in, const SymMatrix& a, const SymMatrix& b,
                             const CheckOptions& opts = {});

// A <= B and mI <= A <= MI imply A^2 <= (M+m)^2/(4Mm) B^2.
Certificate check_squared(const SymMatrix& a, const SymMatrix& b, double m, double big_m,
                          const CheckOptions& opts = {});
// (f(A) # f(B))^2 <= K^2 f(A # B)^2
Certificate check_squared_consequence_f(const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                        double m, double big_m, const CheckOptions& opts = {});
// g(A # B)^2 <= K^2 (g(A) # g(B))^2
Certificate check_squared_consequence_g(const MonotoneFunction& g, const SymMatrix& a, const SymMatrix& b,
                                        double m, double big_m, const CheckOptions& opts = {});

// (sqrt(st) A + B) / 2 <= (sqrt s + sqrt t)/2 A # B
Certificate check_midpoint(const SymMatrix& a, const SymMatrix& b, double s, double t,
                           const CheckOptions& opts = {});

Certificate check_diaz_metcalf(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                               const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b, double s,
                               double t, const CheckOptions& opts = {});

Certificate check_klamkin_mclenaghan(const MapSpec& phi, const ScalarKernel& sigma, const MonotoneFunction& f,
                                     const SymMatrix& a, const SymMatrix& b, double s, double t,
                                     const CheckOptions& opts = {});

// (M+m)/2 <= S(M/m) sqrt(Mm)
Certificate check_specht_bound(double m, double big_m, const CheckOptions& opts = {});

// Phi(f(A)) tau Phi(f(B)) <= Phi(f(sqrt(st)A)) tau Phi(f(B)) <= C Phi(f(A sigma B)), sqrt(st) >= 1.
Certificate check_strengthened_remark(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                      const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                      double s, double t, const CheckOptions& opts = {});

// Phi(A sigma B) <= Phi(A) sigma Phi(B)
Certificate ando_check(const MapSpec& phi, const ScalarKernel& sigma, const SymMatrix& a, const SymMatrix& b,
                       const CheckOptions& opts = {});

// ||T + T^{-1} - (T^{1/2} - T^{-1/2})^2 - 2I||_F / max(1, ||T||_F + ||T^{-1}||_F)
double t_inverse_identity_residual(const SymMatrix& t);

// Registry ------------------------------------------------------------------

enum class PairKind { None, Bounded, Sandwich, Ordered };

struct InequalityInfo {
  std::string_view id;
  bool audit;
  PairKind pair;
  bool uses_map;
  bool uses_tau;
  bool uses_sigma;
  std::optional<FunctionClass> fn_class;
  bool uses_norm;
  bool unital_only;
};

const std::vector<InequalityInfo>& inequality_registry();
const InequalityInfo& inequality_info(std::string_view id);

struct CheckRequest {
  std::string id;
  CheckParams params;
  std::optional<SymMatrix> a, b;
};

// Evaluates any registered inequality from its textual parameters.
Certificate evaluate(const CheckRequest& req, const CheckOptions& opts = {});

}  // namespace loewner
