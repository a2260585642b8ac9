#include "loewner/certificates.hpp"

#include "loewner/error.hpp"
#include "loewner/means.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loewner {

namespace {

double op_norm(const SymMatrix& x) { return ui_norm(x, NormKind::op()); }

SymMatrix apply_fn(const MonotoneFunction& f, const SymMatrix& x) { return matrix_function(x, f.eval); }

// Smallest c with L <= c R, for R positive definite.
double effective_constant(const SymMatrix& lhs, const SymMatrix& base) {
  return lambda_max(SymMatrix::congruence(inv_sqrtm(base).mat(), lhs));
}

Certificate make_operator(std::string_view id, CheckParams params, SymMatrix lhs, SymMatrix rhs,
                          double constant, double ratio, const CheckOptions& opts) {
  Certificate c;
  c.inequality_id = std::string(id);
  c.params = std::move(params);
  c.slack = lambda_min(rhs - lhs);
  c.tolerance = opts.tol_rel * std::max(1.0, op_norm(lhs) + op_norm(rhs));
  c.holds = c.slack >= -c.tolerance;
  c.constant = constant;
  c.ratio = ratio;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

// LHS <= constant * base, with constant already including the scale option.
Certificate make_scaled(std::string_view id, CheckParams params, SymMatrix lhs, const SymMatrix& base,
                        double constant, const CheckOptions& opts) {
  const double ratio = effective_constant(lhs, base);
  return make_operator(id, std::move(params), std::move(lhs), constant * base, constant, ratio, opts);
}

Certificate make_scalar(std::string_view id, CheckParams params, double lhs, double rhs, double constant,
                        double ratio, const CheckOptions& opts) {
  Certificate c;
  c.inequality_id = std::string(id);
  c.params = std::move(params);
  c.lhs = lhs;
  c.rhs = rhs;
  c.constant = constant;
  c.ratio = ratio;
  c.slack = rhs - lhs;
  c.tolerance = opts.tol_rel * std::max(1.0, std::abs(lhs) + std::abs(rhs));
  c.holds = c.slack >= -c.tolerance;
  return c;
}

// Holds iff every part holds. Slack and tolerance come from the part with the
// most negative slack / tolerance; ratio and constant from the tightest part.
Certificate make_composite(std::string_view id, CheckParams params, std::vector<Certificate> parts) {
  Certificate c;
  c.inequality_id = std::string(id);
  c.params = std::move(params);
  const auto worst = std::min_element(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    return x.slack / std::max(x.tolerance, 1e-300) < y.slack / std::max(y.tolerance, 1e-300);
  });
  const auto tightest = std::max_element(parts.begin(), parts.end(), [](const auto& x, const auto& y) {
    return x.tightness() < y.tightness();
  });
  c.slack = worst->slack;
  c.tolerance = worst->tolerance;
  c.lhs = worst->lhs;
  c.rhs = worst->rhs;
  c.ratio = tightest->ratio;
  c.constant = tightest->constant;
  c.holds = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.holds; });
  c.parts = std::move(parts);
  return c;
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("A and B have different dimensions (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

void require_bounded(const SymMatrix& x, const char* name, double m, double big_m, double tol_rel) {
  if (!(m > 0.0 && big_m >= m && std::isfinite(big_m))) {
    throw HypothesisError("bounds must satisfy 0 < m <= M");
  }
  const auto [lo, hi] = spectrum_bounds(x);
  const double tol = tol_rel * std::max(1.0, big_m);
  if (lo < m - tol || hi > big_m + tol) {
    throw HypothesisError(std::string("spectrum of ") + name + " = [" + text::format_double(lo) + ", " +
                          text::format_double(hi) + "] is not inside [m, M] = [" + text::format_double(m) +
                          ", " + text::format_double(big_m) + "]");
  }
}

void require_bounded_pair(const SymMatrix& a, const SymMatrix& b, double m, double big_m, double tol_rel) {
  require_same_dim(a, b);
  require_bounded(a, "A", m, big_m, tol_rel);
  require_bounded(b, "B", m, big_m, tol_rel);
}

void require_sandwich(const SymMatrix& a, const SymMatrix& b, double s, double t, double tol_rel) {
  require_same_dim(a, b);
  if (!(s > 0.0 && t >= s && std::isfinite(t))) throw HypothesisError("sandwich scalars must satisfy 0 < s <= t");
  if (!(lambda_min(a) > 0.0)) throw HypothesisError("A must be positive definite");
  const auto [lo, hi] = spectrum_bounds(SymMatrix::congruence(inv_sqrtm(a).mat(), b));
  const double tol = tol_rel * std::max(1.0, t);
  if (lo < s - tol || hi > t + tol) {
    throw HypothesisError("sA <= B <= tA fails: tightest scalars are [" + text::format_double(lo) + ", " +
                          text::format_double(hi) + "], requested [" + text::format_double(s) + ", " +
                          text::format_double(t) + "]");
  }
}

void require_between_means(const ScalarKernel& k, const char* role) {
  if (!kernel_dominance(ScalarKernel::harmonic(), k).holds || !kernel_dominance(k, ScalarKernel::arithmetic()).holds) {
    throw HypothesisError(std::string(role) + " = " + k.id + " does not satisfy ! <= " + role + " <= nabla");
  }
}

void require_class(const MonotoneFunction& f, FunctionClass c) {
  if (!f.has_class(c)) {
    const char* name = c == FunctionClass::OperatorMonotone             ? "operator monotone"
                       : c == FunctionClass::OperatorMonotoneDecreasing ? "operator monotone decreasing"
                                                                        : "operator convex with g(0) = 0";
    throw HypothesisError("function " + f.id + " is not " + name);
  }
  if (c == FunctionClass::OperatorMonotone) {
    const double f0 = f.eval(0.0);
    if (!(f0 >= 0.0)) throw HypothesisError("function " + f.id + " must be nonnegative on [0, inf)");
  }
}

CheckParams base_params(const SymMatrix& a) {
  CheckParams p;
  p.dim = a.dim();
  return p;
}

}  // namespace

Certificate check_polya_szego(const MapSpec& phi, const SymMatrix& a, const SymMatrix& b, double m,
                              double big_m, const CheckOptions& opts) {
  require_bounded_pair(a, b, m, big_m, opts.tol_rel);
  auto p = base_params(a);
  p.map = phi.id();
  p.m = m;
  p.big_m = big_m;
  const auto geo = ScalarKernel::geometric();
  auto lhs = mean(geo, apply(phi, a), apply(phi, b));
  const auto base = apply(phi, mean(geo, a, b));
  const double constant = opts.constant_scale * (big_m + m) / (2.0 * std::sqrt(big_m * m));
  const double ratio = op_norm(lhs) / op_norm(base);
  return make_operator("polya-szego", std::move(p), std::move(lhs), constant * base, constant, ratio, opts);
}

Certificate check_kantorovich_f(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                double m, double big_m, const CheckOptions& opts) {
  require_bounded_pair(a, b, m, big_m, opts.tol_rel);
  require_between_means(tau, "tau");
  require_between_means(sigma, "sigma");
  require_class(f, FunctionClass::OperatorMonotone);
  auto p = base_params(a);
  p.map = phi.id();
  p.tau = tau.id;
  p.sigma = sigma.id;
  p.fn = f.id;
  p.m = m;
  p.big_m = big_m;
  auto lhs = mean(tau, apply_fn(f, apply(phi, a)), apply_fn(f, apply(phi, b)));
  const auto base = apply_fn(f, apply(phi, mean(sigma, a, b)));
  const double constant = opts.constant_scale * kantorovich_constant(m, big_m);
  return make_scaled("kantorovich-f", std::move(p), std::move(lhs), base, constant, opts);
}

std::pair<Certificate, Certificate> check_sandwich_lemma(const SymMatrix& a, const SymMatrix& b, double s,
                                                         double t, const CheckOptions& opts) {
  require_sandwich(a, b, s, t, opts.tol_rel);
  auto p = base_params(a);
  p.s = s;
  p.t = t;
  const double c = opts.constant_scale * sandwich_factor(s, t);
  const auto am = arithmetic(a, b);
  const auto gm = geometric(a, b);
  const auto hm = harmonic(a, b);
  // c1 (A nabla B) <= A # B with c1 = 1 / c, written as A nabla B <= c (A # B).
  auto left = make_scaled("sandwich-lemma", p, am, gm, c, opts);
  auto right = make_scaled("sandwich-lemma", p, gm, hm, c, opts);
  return {std::move(left), std::move(right)};
}

Certificate check_sandwich_lemma_scalar(double s, double t, const CheckOptions& opts) {
  if (!(s > 0.0 && t >= s && std::isfinite(t))) throw HypothesisError("sandwich scalars must satisfy 0 < s <= t");
  CheckParams p;
  p.dim = 1;
  p.s = s;
  p.t = t;
  const double c = opts.constant_scale * sandwich_factor(s, t);
  const auto grid = log_grid(s, t, s == t ? 1 : 201);
  std::vector<Certificate> parts;
  for (double x : grid) {
    const double rx = std::sqrt(x);
    // (x+1)/2 <= c sqrt(x)
    parts.push_back(make_scalar("sandwich-lemma", p, 0.5 * (x + 1.0), c * rx, c, 0.5 * (x + 1.0) / rx, opts));
    // (1/x+1)/2 <= c / sqrt(x)
    parts.push_back(
        make_scalar("sandwich-lemma", p, 0.5 * (1.0 / x + 1.0), c / rx, c, 0.5 * (1.0 / x + 1.0) * rx, opts));
  }
  auto cert = make_composite("sandwich-lemma", p, std::move(parts));
  cert.parts.clear();
  return cert;
}

Certificate check_alpha_scaling(const MonotoneFunction& fn, double alpha, std::span<const double> grid,
                                const CheckOptions& opts) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw HypothesisError("alpha-scaling requires alpha >= 1");
  if (grid.empty()) throw InvalidArgument("alpha-scaling: empty grid");
  const bool increasing = fn.has_class(FunctionClass::OperatorMonotone);
  if (!increasing && !fn.has_class(FunctionClass::OperatorMonotoneDecreasing)) {
    throw HypothesisError("alpha-scaling requires an operator monotone or monotone decreasing function, got " +
                          fn.id);
  }
  if (increasing) require_class(fn, FunctionClass::OperatorMonotone);
  CheckParams p;
  p.dim = 1;
  p.fn = fn.id;
  p.alpha = alpha;
  const double c = opts.constant_scale * alpha;
  std::vector<Certificate> parts;
  parts.reserve(grid.size());
  for (double x : grid) {
    const double fx = fn.eval(x);
    const double fax = fn.eval(alpha * x);
    if (increasing) {
      parts.push_back(make_scalar("alpha-scaling", p, fax, c * fx, c, fax / fx, opts));
    } else {
      parts.push_back(make_scalar("alpha-scaling", p, fx, c * fax, c, fx / fax, opts));
    }
  }
  auto cert = make_composite("alpha-scaling", p, std::move(parts));
  cert.parts.clear();
  return cert;
}

namespace {

void require_theorem_hypotheses(const SymMatrix& a, const SymMatrix& b, double s, double t,
                                const ScalarKernel& tau, const ScalarKernel& sigma, const CheckOptions& opts) {
  require_sandwich(a, b, s, t, opts.tol_rel);
  require_between_means(tau, "tau");
  require_between_means(sigma, "sigma");
}

CheckParams theorem_params(const SymMatrix& a, const MapSpec& phi, const ScalarKernel& tau,
                           const ScalarKernel& sigma, const MonotoneFunction& f, double s, double t) {
  auto p = base_params(a);
  p.map = phi.id();
  p.tau = tau.id;
  p.sigma = sigma.id;
  p.fn = f.id;
  p.s = s;
  p.t = t;
  return p;
}

}  // namespace

Certificate check_main_monotone(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                double s, double t, const CheckOptions& opts) {
  require_theorem_hypotheses(a, b, s, t, tau, sigma, opts);
  require_class(f, FunctionClass::OperatorMonotone);
  auto lhs = mean(tau, apply(phi, apply_fn(f, a)), apply(phi, apply_fn(f, b)));
  const auto base = apply(phi, apply_fn(f, mean(sigma, a, b)));
  const double constant = opts.constant_scale * sandwich_constant(s, t);
  return make_scaled("main-monotone", theorem_params(a, phi, tau, sigma, f, s, t), std::move(lhs), base,
                     constant, opts);
}

Certificate check_main_decreasing(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                  const MonotoneFunction& g, const SymMatrix& a, const SymMatrix& b,
                                  double s, double t, const CheckOptions& opts) {
  require_theorem_hypotheses(a, b, s, t, tau, sigma, opts);
  require_class(g, FunctionClass::OperatorMonotoneDecreasing);
  auto lhs = apply(phi, apply_fn(g, mean(tau, a, b)));
  const auto base = mean(sigma, apply(phi, apply_fn(g, a)), apply(phi, apply_fn(g, b)));
  const double constant = opts.constant_scale * sandwich_constant(s, t);
  return make_scaled("main-decreasing", theorem_params(a, phi, tau, sigma, g, s, t), std::move(lhs), base,
                     constant, opts);
}

Certificate gruss_difference(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                             const MonotoneFunction& fn, const SymMatrix& a, const SymMatrix& b, double m,
                             double big_m, GrussFamily family, const CheckOptions& opts) {
  require_bounded_pair(a, b, m, big_m, opts.tol_rel);
  require_between_means(tau, "tau");
  require_between_means(sigma, "sigma");
  auto p = base_params(a);
  p.map = phi.id();
  p.tau = tau.id;
  p.sigma = sigma.id;
  p.fn = fn.id;
  p.m = m;
  p.big_m = big_m;
  const double constant = opts.constant_scale * (big_m - m) * (big_m - m) / (4.0 * big_m * m);
  const int out = phi.out_dim();
  if (family == GrussFamily::Monotone) {
    require_class(fn, FunctionClass::OperatorMonotone);
    auto diff = mean(tau, apply(phi, apply_fn(fn, a)), apply(phi, apply_fn(fn, b))) -
                apply(phi, apply_fn(fn, mean(sigma, a, b)));
    return make_scaled("gruss-f", std::move(p), std::move(diff), SymMatrix::scalar(out, fn.eval(big_m)),
                       constant, opts);
  }
  require_class(fn, FunctionClass::OperatorMonotoneDecreasing);
  auto diff = apply(phi, apply_fn(fn, mean(tau, a, b))) -
              mean(sigma, apply(phi, apply_fn(fn, a)), apply(phi, apply_fn(fn, b)));
  return make_scaled("gruss-g", std::move(p), std::move(diff), SymMatrix::scalar(out, fn.eval(m)), constant,
                     opts);
}

Certificate check_gruss(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                        const MonotoneFunction& fn, const SymMatrix& a, const SymMatrix& b, double m,
                        double big_m, GrussFamily family, const CheckOptions& opts) {
  const auto unital = check_unital(phi);
  if (!unital.is_unital) {
    throw HypothesisError("Gruss bounds need a unital map: ||Phi(I) - I||_op = " +
                          text::format_double(unital.deviation) + " for " + phi.id() +
                          " (the bound compares Phi(f(A sigma B)) with the scalar f(M))");
  }
  return gruss_difference(phi, tau, sigma, fn, a, b, m, big_m, family, opts);
}

Certificate check_norm_ratio(const NormRatioInput& in, const SymMatrix& a, const SymMatrix& b,
                             const CheckOptions& opts) {
  require_class(in.g, FunctionClass::OperatorConvexZero);
  if (in.g.eval(0.0) != 0.0) throw HypothesisError("norm-ratio requires g(0) = 0");
  const auto geo = ScalarKernel::geometric();
  auto p = base_params(a);
  p.fn = in.g.id;
  p.norm = in.norm.id();
  std::string_view id;
  switch (in.mode) {
    case NormRatioMode::TauSide:
      id = "norm-ratio-tau";
      if (!kernel_dominance(geo, in.tau).holds) throw HypothesisError("norm-ratio-tau requires tau >= #");
      p.tau = in.tau.id;
      break;
    case NormRatioMode::SharpSide:
      id = "norm-ratio-sharp";
      if (!kernel_dominance(in.sigma, geo).holds) throw HypothesisError("norm-ratio-sharp requires sigma <= #");
      p.sigma = in.sigma.id;
      break;
    case NormRatioMode::Power4:
      id = "norm-ratio-power4";
      require_between_means(in.tau, "tau");
      require_between_means(in.sigma, "sigma");
      p.tau = in.tau.id;
      p.sigma = in.sigma.id;
      break;
    case NormRatioMode::Eq15:
      id = "norm-ratio-eq15";
      break;
  }
  if (in.mode == NormRatioMode::Eq15) {
    require_bounded_pair(a, b, in.m, in.big_m, opts.tol_rel);
    p.m = in.m;
    p.big_m = in.big_m;
  } else {
    require_sandwich(a, b, in.s, in.t, opts.tol_rel);
    p.s = in.s;
    p.t = in.t;
  }

  const auto ga = apply_fn(in.g, a);
  const auto gb = apply_fn(in.g, b);
  const auto nrm = [&](const SymMatrix& x) { return ui_norm(x, in.norm); };
  const auto g_over_x = [&](const SymMatrix& x) {
    return nrm(matrix_function(x, [&](double v) { return in.g.eval(v) / v; }));
  };
  const auto mean_ratio = [&](const ScalarKernel& k) { return nrm(mean(k, ga, gb)) / nrm(mean(k, a, b)); };

  double lhs = 0.0;
  double base = 0.0;
  double constant = 0.0;
  switch (in.mode) {
    case NormRatioMode::TauSide:
      lhs = mean_ratio(in.tau);
      base = g_over_x(mean(geo, a, b));
      constant = sandwich_constant(in.s, in.t);
      break;
    case NormRatioMode::SharpSide:
      lhs = mean_ratio(geo);
      base = g_over_x(mean(in.sigma, a, b));
      constant = sandwich_constant(in.s, in.t);
      break;
    case NormRatioMode::Power4:
      lhs = mean_ratio(in.tau);
      base = g_over_x(mean(in.sigma, a, b));
      constant = sandwich_constant(in.s, in.t) * sandwich_constant(in.s, in.t);
      break;
    case NormRatioMode::Eq15: {
      lhs = mean_ratio(geo);
      base = g_over_x(mean(geo, a, b));
      const double k = (in.big_m + in.m) / (2.0 * std::sqrt(in.big_m * in.m));
      constant = 2.0 * k * k;
      break;
    }
  }
  constant *= opts.constant_scale;
  return make_scalar(id, std::move(p), lhs, constant * base, constant, lhs / base, opts);
}

Certificate check_squared(const SymMatrix& a, const SymMatrix& b, double m, double big_m,
                          const CheckOptions& opts) {
  require_same_dim(a, b);
  require_bounded(a, "A", m, big_m, opts.tol_rel);
  const auto order = loewner_compare(a, b, default_tolerance(a, b, opts.tol_rel));
  if (order.relation != Relation::LE && order.relation != Relation::EQ) {
    throw HypothesisError("squared requires A <= B (lambda_min(B - A) = " + text::format_double(order.slack_le) +
                          ")");
  }
  auto p = base_params(a);
  p.m = m;
  p.big_m = big_m;
  const double constant = opts.constant_scale * kantorovich_constant(m, big_m);
  return make_scaled("squared", std::move(p), a.commuting_product(a), b.commuting_product(b), constant, opts);
}

Certificate check_squared_consequence_f(const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                        double m, double big_m, const CheckOptions& opts) {
  require_bounded_pair(a, b, m, big_m, opts.tol_rel);
  require_class(f, FunctionClass::OperatorMonotone);
  auto p = base_params(a);
  p.fn = f.id;
  p.m = m;
  p.big_m = big_m;
  const auto lhs_root = geometric(apply_fn(f, a), apply_fn(f, b));
  const auto base_root = apply_fn(f, geometric(a, b));
  const double k = kantorovich_constant(m, big_m);
  return make_scaled("squared-consequence-f", std::move(p), lhs_root.commuting_product(lhs_root),
                     base_root.commuting_product(base_root), opts.constant_scale * k * k, opts);
}

Certificate check_squared_consequence_g(const MonotoneFunction& g, const SymMatrix& a, const SymMatrix& b,
                                        double m, double big_m, const CheckOptions& opts) {
  require_bounded_pair(a, b, m, big_m, opts.tol_rel);
  require_class(g, FunctionClass::OperatorMonotoneDecreasing);
  auto p = base_params(a);
  p.fn = g.id;
  p.m = m;
  p.big_m = big_m;
  const auto lhs_root = apply_fn(g, geometric(a, b));
  const auto base_root = geometric(apply_fn(g, a), apply_fn(g, b));
  const double k = kantorovich_constant(m, big_m);
  return make_scaled("squared-consequence-g", std::move(p), lhs_root.commuting_product(lhs_root),
                     base_root.commuting_product(base_root), opts.constant_scale * k * k, opts);
}

Certificate check_midpoint(const SymMatrix& a, const SymMatrix& b, double s, double t, const CheckOptions& opts) {
  require_sandwich(a, b, s, t, opts.tol_rel);
  auto p = base_params(a);
  p.s = s;
  p.t = t;
  auto lhs = 0.5 * (std::sqrt(s * t) * a + b);
  const double constant = opts.constant_scale * 0.5 * (std::sqrt(s) + std::sqrt(t));
  return make_scaled("midpoint", std::move(p), std::move(lhs), geometric(a, b), constant, opts);
}

namespace {

double diaz_metcalf_constant(double s, double t) {
  const double r = std::sqrt(s * t);
  const double sum = std::sqrt(s) + std::sqrt(t);
  return r >= 1.0 ? 0.25 * sum * sum : sum * sum / (4.0 * r);
}

}  // namespace

Certificate check_diaz_metcalf(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                               const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b, double s,
                               double t, const CheckOptions& opts) {
  require_theorem_hypotheses(a, b, s, t, tau, sigma, opts);
  require_class(f, FunctionClass::OperatorMonotone);
  const double r = std::sqrt(s * t);
  auto lhs = mean(tau, apply(phi, apply_fn(f, r * a)), apply(phi, apply_fn(f, b)));
  const auto base = apply(phi, apply_fn(f, mean(sigma, a, b)));
  const double constant = opts.constant_scale * diaz_metcalf_constant(s, t);
  return make_scaled("diaz-metcalf", theorem_params(a, phi, tau, sigma, f, s, t), std::move(lhs), base, constant,
                     opts);
}

Certificate check_klamkin_mclenaghan(const MapSpec& phi, const ScalarKernel& sigma, const MonotoneFunction& f,
                                     const SymMatrix& a, const SymMatrix& b, double s, double t,
                                     const CheckOptions& opts) {
  require_sandwich(a, b, s, t, opts.tol_rel);
  require_between_means(sigma, "sigma");
  require_class(f, FunctionClass::OperatorMonotone);
  auto p = base_params(a);
  p.map = phi.id();
  p.sigma = sigma.id;
  p.fn = f.id;
  p.s = s;
  p.t = t;

  const double r = std::sqrt(s * t);
  const auto big_p = apply(phi, apply_fn(f, mean(sigma, a, b)));
  const auto q = apply(phi, apply_fn(f, r * a));
  const auto fb = apply(phi, apply_fn(f, b));
  if (!(lambda_min(big_p) > 0.0) || !(lambda_min(q) > 0.0)) {
    throw HypothesisError("klamkin-mclenaghan requires Phi(f(A sigma B)) and Phi(f(sqrt(st) A)) positive definite");
  }
  const auto p_inv_half = inv_sqrtm(big_p).mat();
  const auto p_half = sqrtm(big_p).mat();
  auto x = SymMatrix::congruence(p_inv_half, fb) - SymMatrix::congruence(p_half, inverse(q));
  const auto t_mat = SymMatrix::congruence(p_inv_half, q);
  const auto d = sqrtm(t_mat) - inv_sqrtm(t_mat);
  const auto d2 = d.commuting_product(d);

  const double sum = std::sqrt(s) + std::sqrt(t);
  const double c = opts.constant_scale * (r >= 1.0 ? 0.5 * sum * sum : sum * sum / (2.0 * r));
  const int n = x.dim();
  auto rhs = SymMatrix::scalar(n, c - 2.0) - d2;
  const double ratio = lambda_max(x + SymMatrix::scalar(n, 2.0) + d2);
  return make_operator("klamkin-mclenaghan", std::move(p), std::move(x), std::move(rhs), c, ratio, opts);
}

Certificate check_specht_bound(double m, double big_m, const CheckOptions& opts) {
  if (!(m > 0.0 && big_m >= m && std::isfinite(big_m))) throw HypothesisError("specht-bound requires 0 < m <= M");
  CheckParams p;
  p.dim = 1;
  p.m = m;
  p.big_m = big_m;
  const double gm = std::sqrt(big_m * m);
  const double constant = opts.constant_scale * specht_ratio(big_m / m);
  const double lhs = 0.5 * (big_m + m);
  return make_scalar("specht-bound", std::move(p), lhs, constant * gm, constant, lhs / gm, opts);
}

Certificate check_strengthened_remark(const MapSpec& phi, const ScalarKernel& tau, const ScalarKernel& sigma,
                                      const MonotoneFunction& f, const SymMatrix& a, const SymMatrix& b,
                                      double s, double t, const CheckOptions& opts) {
  const double r = std::sqrt(s * t);
  if (!(r >= 1.0)) {
    throw HypothesisError("strengthened-remark requires sqrt(st) >= 1, got " + text::format_double(r));
  }
  require_theorem_hypotheses(a, b, s, t, tau, sigma, opts);
  require_class(f, FunctionClass::OperatorMonotone);
  auto p = theorem_params(a, phi, tau, sigma, f, s, t);
  const auto fb = apply(phi, apply_fn(f, b));
  auto first_lhs = mean(tau, apply(phi, apply_fn(f, a)), fb);
  const auto middle = mean(tau, apply(phi, apply_fn(f, r * a)), fb);
  CheckOptions first_opts = opts;
  first_opts.constant_scale = 1.0;
  auto first = make_scaled("strengthened-remark", p, std::move(first_lhs), middle, 1.0, first_opts);
  auto second = check_diaz_metcalf(phi, tau, sigma, f, a, b, s, t, opts);
  return make_composite("strengthened-remark", std::move(p), {std::move(first), std::move(second)});
}

Certificate ando_check(const MapSpec& phi, const ScalarKernel& sigma, const SymMatrix& a, const SymMatrix& b,
                       const CheckOptions& opts) {
  require_same_dim(a, b);
  auto p = base_params(a);
  p.map = phi.id();
  p.sigma = sigma.id;
  auto lhs = apply(phi, mean(sigma, a, b));
  const auto pa = apply(phi, a);
  const auto pb = apply(phi, b);
  if (!(lambda_min(pa) > 0.0) || !(lambda_min(pb) > 0.0)) {
    throw HypothesisError("ando requires Phi(A) and Phi(B) positive definite");
  }
  const auto base = mean(sigma, pa, pb);
  return make_scaled("ando", std::move(p), std::move(lhs), base, opts.constant_scale, opts);
}

double t_inverse_identity_residual(const SymMatrix& t) {
  const auto inv = inverse(t);
  const auto d = sqrtm(t) - inv_sqrtm(t);
  const auto residual = t + inv - d.commuting_product(d) - SymMatrix::scalar(t.dim(), 2.0);
  return residual.frobenius() / std::max(1.0, t.frobenius() + inv.frobenius());
}

// Registry ------------------------------------------------------------------

const std::vector<InequalityInfo>& inequality_registry() {
  using FC = FunctionClass;
  constexpr auto mono = FC::OperatorMonotone;
  constexpr auto decr = FC::OperatorMonotoneDecreasing;
  constexpr auto conv = FC::OperatorConvexZero;
  //                 id                        audit  pair               map    tau    sigma  fn     norm   unital
  static const std::vector<InequalityInfo> reg = {
      {"polya-szego", false, PairKind::Bounded, true, false, false, std::nullopt, false, false},
      {"kantorovich-f", false, PairKind::Bounded, true, true, true, mono, false, false},
      {"sandwich-lemma", false, PairKind::Sandwich, false, false, false, std::nullopt, false, false},
      {"alpha-scaling", false, PairKind::None, false, false, false, std::nullopt, false, false},
      {"main-monotone", false, PairKind::Sandwich, true, true, true, mono, false, false},
      {"main-decreasing", false, PairKind::Sandwich, true, true, true, decr, false, false},
      {"gruss-f", false, PairKind::Bounded, true, true, true, mono, false, true},
      {"gruss-g", false, PairKind::Bounded, true, true, true, decr, false, true},
      {"norm-ratio-tau", true, PairKind::Sandwich, false, true, false, conv, true, false},
      {"norm-ratio-sharp", true, PairKind::Sandwich, false, false, true, conv, true, false},
      {"norm-ratio-power4", true, PairKind::Sandwich, false, true, true, conv, true, false},
      {"norm-ratio-eq15", true, PairKind::Bounded, false, false, false, conv, true, false},
      {"squared", false, PairKind::Ordered, false, false, false, std::nullopt, false, false},
      {"squared-consequence-f", false, PairKind::Bounded, false, false, false, mono, false, false},
      {"squared-consequence-g", false, PairKind::Bounded, false, false, false, decr, false, false},
      {"midpoint", false, PairKind::Sandwich, false, false, false, std::nullopt, false, false},
      {"diaz-metcalf", false, PairKind::Sandwich, true, true, true, mono, false, false},
      {"klamkin-mclenaghan", false, PairKind::Sandwich, true, false, true, mono, false, false},
      {"specht-bound", false, PairKind::None, false, false, false, std::nullopt, false, false},
      {"strengthened-remark", false, PairKind::Sandwich, true, true, true, mono, false, false},
      {"ando", false, PairKind::Bounded, true, false, true, std::nullopt, false, false},
  };
  return reg;
}

const InequalityInfo& inequality_info(std::string_view id) {
  for (const auto& info : inequality_registry()) {
    if (info.id == id) return info;
  }
  throw ParseError("unknown inequality id '" + std::string(id) + "'");
}

namespace {

double need(const std::optional<double>& v, const char* name, std::string_view id) {
  if (!v) throw InvalidArgument(std::string(id) + " needs parameter " + name);
  return *v;
}

const SymMatrix& need(const std::optional<SymMatrix>& v, const char* name, std::string_view id) {
  if (!v) throw InvalidArgument(std::string(id) + " needs matrix " + name);
  return *v;
}

}  // namespace

namespace {

Certificate evaluate_impl(const CheckRequest& req, const CheckOptions& opts) {
  const auto& info = inequality_info(req.id);
  const auto& p = req.params;
  const auto id = info.id;

  if (id == "alpha-scaling") {
    return check_alpha_scaling(MonotoneFunction::parse(p.fn), need(p.alpha, "alpha", id), default_grid(), opts);
  }
  if (id == "specht-bound") return check_specht_bound(need(p.m, "m", id), need(p.big_m, "M", id), opts);

  const auto& a = need(req.a, "A", id);
  const auto& b = need(req.b, "B", id);
  const auto phi = [&] { return MapSpec::parse(p.map.empty() ? "identity" : p.map, a.dim(), p.seed); };
  const auto tau = [&] { return ScalarKernel::parse(p.tau); };
  const auto sigma = [&] { return ScalarKernel::parse(p.sigma); };
  const auto fn = [&] { return MonotoneFunction::parse(p.fn); };

  if (id == "polya-szego") return check_polya_szego(phi(), a, b, need(p.m, "m", id), need(p.big_m, "M", id), opts);
  if (id == "kantorovich-f") {
    return check_kantorovich_f(phi(), tau(), sigma(), fn(), a, b, need(p.m, "m", id), need(p.big_m, "M", id), opts);
  }
  if (id == "sandwich-lemma") {
    const double s = need(p.s, "s", id);
    const double t = need(p.t, "t", id);
    auto [left, right] = check_sandwich_lemma(a, b, s, t, opts);
    auto scalar = check_sandwich_lemma_scalar(s, t, opts);
    auto params = left.params;
    return make_composite(id, std::move(params), {std::move(left), std::move(right), std::move(scalar)});
  }
  if (id == "main-monotone") {
    return check_main_monotone(phi(), tau(), sigma(), fn(), a, b, need(p.s, "s", id), need(p.t, "t", id), opts);
  }
  if (id == "main-decreasing") {
    return check_main_decreasing(phi(), tau(), sigma(), fn(), a, b, need(p.s, "s", id), need(p.t, "t", id), opts);
  }
  if (id == "gruss-f" || id == "gruss-g") {
    return check_gruss(phi(), tau(), sigma(), fn(), a, b, need(p.m, "m", id), need(p.big_m, "M", id),
                       id == "gruss-f" ? GrussFamily::Monotone : GrussFamily::Decreasing, opts);
  }
  if (id.starts_with("norm-ratio-")) {
    NormRatioInput in;
    in.g = fn();
    in.norm = NormKind::parse(p.norm.empty() ? "op" : p.norm);
    if (id == "norm-ratio-tau") in.mode = NormRatioMode::TauSide;
    else if (id == "norm-ratio-sharp") in.mode = NormRatioMode::SharpSide;
    else if (id == "norm-ratio-power4") in.mode = NormRatioMode::Power4;
    else in.mode = NormRatioMode::Eq15;
    if (!p.tau.empty()) in.tau = tau();
    if (!p.sigma.empty()) in.sigma = sigma();
    if (in.mode == NormRatioMode::Eq15) {
      in.m = need(p.m, "m", id);
      in.big_m = need(p.big_m, "M", id);
    } else {
      in.s = need(p.s, "s", id);
      in.t = need(p.t, "t", id);
    }
    return check_norm_ratio(in, a, b, opts);
  }
  if (id == "squared") return check_squared(a, b, need(p.m, "m", id), need(p.big_m, "M", id), opts);
  if (id == "squared-consequence-f") {
    return check_squared_consequence_f(fn(), a, b, need(p.m, "m", id), need(p.big_m, "M", id), opts);
  }
  if (id == "squared-consequence-g") {
    return check_squared_consequence_g(fn(), a, b, need(p.m, "m", id), need(p.big_m, "M", id), opts);
  }
  if (id == "midpoint") return check_midpoint(a, b, need(p.s, "s", id), need(p.t, "t", id), opts);
  if (id == "diaz-metcalf") {
    return check_diaz_metcalf(phi(), tau(), sigma(), fn(), a, b, need(p.s, "s", id), need(p.t, "t", id), opts);
  }
  if (id == "klamkin-mclenaghan") {
    return check_klamkin_mclenaghan(phi(), sigma(), fn(), a, b, need(p.s, "s", id), need(p.t, "t", id), opts);
  }
  if (id == "strengthened-remark") {
    return check_strengthened_remark(phi(), tau(), sigma(), fn(), a, b, need(p.s, "s", id), need(p.t, "t", id),
                                     opts);
  }
  if (id == "ando") return ando_check(phi(), sigma(), a, b, opts);
  throw ParseError("inequality '" + std::string(id) + "' has no evaluator");
}

}  // namespace

Certificate evaluate(const CheckRequest& req, const CheckOptions& opts) {
  auto c = evaluate_impl(req, opts);
  c.params.seed = req.params.seed;
  if (req.params.dim > 0 && c.params.dim == 0) c.params.dim = req.params.dim;
  return c;
}

}  // namespace loewner
