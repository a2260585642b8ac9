#include "loewner/suite.hpp"

#include "loewner/error.hpp"
#include "loewner/instances.hpp"
#include "loewner/random.hpp"
#include "text.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

namespace loewner {

std::vector<std::string> resolve_inequalities(std::string_view selector) {
  std::vector<std::string> out;
  const auto add = [&](std::string_view id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.emplace_back(id);
  };
  for (const auto& item : text::split(selector, ',')) {
    if (item.empty()) continue;
    if (item == "all" || item == "all-non-audit") {
      for (const auto& info : inequality_registry()) {
        if (item == "all" || !info.audit) add(info.id);
      }
    } else {
      add(inequality_info(item).id);
    }
  }
  if (out.empty()) throw InvalidArgument("no inequalities selected by '" + std::string(selector) + "'");
  return out;
}

std::vector<MapPoolEntry> default_map_pool(int n) {
  const int k = std::max(1, n - 1);
  const std::string shape = std::to_string(n) + "x" + std::to_string(k);
  const std::string pinch =
      n >= 2 ? "pinching:" + std::to_string((n + 1) / 2) + "," + std::to_string(n / 2) : std::string("pinching:1");
  return {
      {"identity", "identity", true},
      {"ntrace:1", "ntrace:1", true},
      {"ntrace:2", "ntrace:2", true},
      {"congruence:random", "congruence:random:" + shape, false},
      {"congruence:isometry", "congruence:isometry:" + shape, true},
      {"kraus:2", "kraus:2", false},
      {"kraus:3:unital", "kraus:3:unital", true},
      {"pinching", pinch, true},
      {"mix-unital", "mix:0.25*identity+0.75*" + pinch, true},
      {"mix-nonunital",
       "mix:0.5*ntrace:" + std::to_string(n) + "+0.5*congruence:random:" + std::to_string(n) + "x" +
           std::to_string(n),
       false},
  };
}

std::vector<std::string> default_norm_pool(int dim) {
  std::vector<std::string> out = {"op", "trace", "frobenius", "kyfan:1"};
  if (dim >= 2) out.push_back("kyfan:2");
  out.push_back("schatten:3");
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxViolating = 10;
constexpr std::size_t kMaxMessages = 5;

template <typename T>
const T& pick(const std::vector<T>& v, SplitMix64& rng) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

void validate(const SuiteConfig& c) {
  if (c.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (c.dims.empty()) throw InvalidArgument("dims must not be empty");
  for (int d : c.dims) {
    if (d < 1 || d > 16) throw InvalidArgument("dims must lie in [1, 16], got " + std::to_string(d));
  }
  if (!(c.tol_rel > 0.0) || !std::isfinite(c.tol_rel)) throw InvalidArgument("tol must be positive");
  if (!(c.constant_override > 0.0) || !std::isfinite(c.constant_override)) {
    throw InvalidArgument("override-constant must be positive");
  }
  if (c.probe_steps < 0) throw InvalidArgument("probe_steps must be >= 0");
  if (c.s.has_value() != c.t.has_value()) throw InvalidArgument("--s and --t must be given together");
  if (c.m.has_value() != c.big_m.has_value()) throw InvalidArgument("--m and --M must be given together");
  if (c.s && !(*c.s > 0.0 && *c.t >= *c.s && std::isfinite(*c.t))) throw InvalidArgument("need 0 < s <= t");
  if (c.m && !(*c.m > 0.0 && *c.big_m >= *c.m && std::isfinite(*c.big_m))) throw InvalidArgument("need 0 < m <= M");
  for (const Range* r : {&c.st_range, &c.m_range, &c.ratio_range, &c.a_range}) {
    if (!(r->lo > 0.0 && r->hi >= r->lo && std::isfinite(r->hi))) throw InvalidArgument("ranges need 0 < lo <= hi");
  }
  if (c.ratio_range.lo < 1.0) throw InvalidArgument("ratio_range must start at >= 1");
}

bool kernel_admissible(std::string_view id, bool tau_side, const ScalarKernel& k) {
  static const auto geo = ScalarKernel::geometric();
  static const auto har = ScalarKernel::harmonic();
  static const auto ari = ScalarKernel::arithmetic();
  if (id == "norm-ratio-tau" && tau_side) return kernel_dominance(geo, k).holds;
  if (id == "norm-ratio-sharp" && !tau_side) return kernel_dominance(k, geo).holds;
  if (id == "norm-ratio-power4") return kernel_dominance(har, k).holds && kernel_dominance(k, ari).holds;
  return true;
}

std::vector<std::string> kernel_pool(const std::vector<std::string>& requested, std::string_view id, bool tau_side) {
  const auto filter = [&](const std::vector<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& k : ids) {
      const auto kernel = ScalarKernel::parse(k);
      if (kernel_admissible(id, tau_side, kernel)) out.push_back(kernel.id);
    }
    return out;
  };
  auto pool = filter(requested);
  if (pool.empty()) pool = filter(kernel_catalog_ids());
  if (pool.empty()) pool = {"geometric"};
  return pool;
}

std::vector<std::string> function_pool(const std::vector<std::string>& requested, std::uint8_t classes) {
  const auto filter = [&](const std::vector<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& f : ids) {
      const auto fn = MonotoneFunction::parse(f);
      if ((fn.classes & classes) != 0 && std::find(out.begin(), out.end(), fn.id) == out.end()) out.push_back(fn.id);
    }
    return out;
  };
  auto pool = filter(requested);
  if (pool.empty()) {
    std::vector<std::string> catalog;
    for (auto c : {FunctionClass::OperatorMonotone, FunctionClass::OperatorMonotoneDecreasing,
                   FunctionClass::OperatorConvexZero}) {
      if ((classes & static_cast<std::uint8_t>(c)) == 0) continue;
      for (const auto& f : function_catalog_ids(c)) catalog.push_back(f);
    }
    pool = filter(catalog);
  }
  return pool;
}

// Parameter pools for one inequality; maps and norms are resolved per dimension.
struct Pools {
  std::vector<std::string> taus, sigmas, fns;
  std::vector<std::string> requested_maps, requested_norms;
  bool unital_only = false;

  std::vector<MapPoolEntry> maps(int dim) const {
    std::vector<MapPoolEntry> out;
    if (requested_maps.empty()) {
      out = default_map_pool(dim);
    } else {
      for (const auto& spec : requested_maps) {
        try {
          const auto phi = MapSpec::parse(spec, dim, 0);
          out.push_back({spec, spec, check_unital(phi).is_unital});
        } catch (const DimensionError&) {
        } catch (const InvalidArgument&) {
        }
      }
    }
    if (unital_only) {
      std::erase_if(out, [](const MapPoolEntry& e) { return !e.unital; });
    }
    return out;
  }

  std::vector<std::string> norms(int dim) const {
    if (requested_norms.empty()) return default_norm_pool(dim);
    std::vector<std::string> out;
    for (const auto& n : requested_norms) {
      const auto kind = NormKind::parse(n);
      if (kind.variant == NormKind::Variant::KyFan && kind.k > dim) continue;
      out.push_back(kind.id());
    }
    return out;
  }
};

Pools make_pools(const InequalityInfo& info, const SuiteConfig& c) {
  Pools p;
  p.taus = kernel_pool(c.taus, info.id, true);
  p.sigmas = kernel_pool(c.sigmas, info.id, false);
  if (info.fn_class) {
    p.fns = function_pool(c.fns, static_cast<std::uint8_t>(*info.fn_class));
  } else if (info.id == "alpha-scaling") {
    p.fns = function_pool(c.fns, static_cast<std::uint8_t>(FunctionClass::OperatorMonotone) |
                                     static_cast<std::uint8_t>(FunctionClass::OperatorMonotoneDecreasing));
  }
  p.requested_maps = c.maps;
  p.requested_norms = c.norms;
  p.unital_only = info.unital_only;
  return p;
}

struct Sampled {
  CheckRequest req;
  std::string map_label;
};

std::pair<double, double> sample_bounds(const SuiteConfig& c, SplitMix64& rng) {
  if (c.m) return {*c.m, *c.big_m};
  const double m = rng.log_uniform(c.m_range.lo, c.m_range.hi);
  return {m, m * rng.log_uniform(c.ratio_range.lo, c.ratio_range.hi)};
}

std::pair<double, double> sample_sandwich(const SuiteConfig& c, std::string_view id, SplitMix64& rng) {
  if (c.s) return {*c.s, *c.t};
  double s = rng.log_uniform(c.st_range.lo, c.st_range.hi);
  double t = rng.log_uniform(c.st_range.lo, c.st_range.hi);
  if (s > t) std::swap(s, t);
  // The strengthened form is only claimed for st >= 1.
  if (id == "strengthened-remark" && s * t < 1.0) {
    const double s2 = 1.0 / t;
    t = 1.0 / s;
    s = s2;
  }
  return {s, t};
}

// Draws the textual parameters shared by the suite and the probe.
Sampled sample_params(const InequalityInfo& info, const Pools& pools, int dim, std::uint64_t seed,
                      SplitMix64& rng) {
  Sampled out;
  auto& p = out.req.params;
  out.req.id = std::string(info.id);
  p.dim = dim;
  p.seed = seed;
  if (info.uses_map) {
    const auto maps = pools.maps(dim);
    if (maps.empty()) throw InvalidArgument("no map in the pool applies at dim " + std::to_string(dim));
    const auto& e = pick(maps, rng);
    p.map = e.spec;
    out.map_label = e.label;
  }
  if (info.uses_tau) p.tau = pick(pools.taus, rng);
  if (info.uses_sigma) p.sigma = pick(pools.sigmas, rng);
  if (!pools.fns.empty()) p.fn = pick(pools.fns, rng);
  if (info.uses_norm) {
    const auto norms = pools.norms(dim);
    if (norms.empty()) throw InvalidArgument("no norm in the pool applies at dim " + std::to_string(dim));
    p.norm = pick(norms, rng);
  }
  return out;
}

Sampled sample_trial(const InequalityInfo& info, const Pools& pools, const SuiteConfig& c, int dim,
                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto out = sample_params(info, pools, dim, seed, rng);
  auto& req = out.req;
  auto& p = req.params;
  const std::uint64_t pair_seed = derive_seed(seed, "pair", 0);
  switch (info.pair) {
    case PairKind::None:
      if (info.id == "alpha-scaling") {
        p.alpha = rng.log_uniform(1.0, 10.0);
      } else {
        const auto [m, big_m] = sample_bounds(c, rng);
        p.m = m;
        p.big_m = big_m;
      }
      break;
    case PairKind::Bounded: {
      const auto [m, big_m] = sample_bounds(c, rng);
      p.m = m;
      p.big_m = big_m;
      if (big_m == m) {
        req.a = SymMatrix::scalar(dim, m);
        req.b = SymMatrix::scalar(dim, m);
      } else {
        auto pair = random_bounded_pair(dim, m, big_m, pair_seed);
        req.a = std::move(pair.a);
        req.b = std::move(pair.b);
      }
      break;
    }
    case PairKind::Sandwich: {
      const auto [s, t] = sample_sandwich(c, info.id, rng);
      p.s = s;
      p.t = t;
      auto pair = random_sandwich_pair(dim, s, t, pair_seed, c.a_range.lo, c.a_range.hi);
      req.a = std::move(pair.a);
      req.b = std::move(pair.b);
      break;
    }
    case PairKind::Ordered: {
      const auto [m, big_m] = sample_bounds(c, rng);
      p.m = m;
      p.big_m = big_m;
      SplitMix64 prng(pair_seed);
      auto a = random_spd(dim, m, big_m, prng);
      auto gap = random_spd(dim, 0.01 * m, big_m, prng);
      req.b = a + gap;
      req.a = std::move(a);
      break;
    }
  }
  return out;
}

InstanceRecord make_record(const CheckRequest& req, const Certificate& cert, long long trial, bool pinned) {
  InstanceRecord r;
  r.inequality_id = req.id;
  r.trial = trial;
  r.pinned = pinned;
  r.params = req.params;
  r.a = req.a;
  r.b = req.b;
  r.slack = cert.slack;
  r.ratio = cert.ratio;
  r.constant = cert.constant;
  r.tolerance = cert.tolerance;
  r.holds = cert.holds;
  return r;
}

CheckRequest request_from(const InstanceRecord& r) { return {r.inequality_id, r.params, r.a, r.b}; }

template <typename T>
std::vector<T> sorted(const std::set<T>& s) {
  return {s.begin(), s.end()};
}

struct CoverageSets {
  std::set<std::string> maps, kernels, functions, norms;
  std::set<int> dims;

  void add(const Sampled& s) {
    const auto& p = s.req.params;
    if (!s.map_label.empty()) maps.insert(s.map_label);
    if (!p.tau.empty()) kernels.insert(p.tau);
    if (!p.sigma.empty()) kernels.insert(p.sigma);
    if (!p.fn.empty()) functions.insert(p.fn);
    if (!p.norm.empty()) norms.insert(p.norm);
    dims.insert(p.dim);
  }

  Coverage finish() const { return {sorted(maps), sorted(kernels), sorted(functions), sorted(norms), sorted(dims)}; }
};

InequalityStats run_inequality(const InequalityInfo& info, const SuiteConfig& c, const CheckOptions& opts) {
  InequalityStats st;
  st.id = std::string(info.id);
  st.audit = info.audit;
  const auto pools = make_pools(info, c);
  CoverageSets cov;
  double min_slack = std::numeric_limits<double>::infinity();
  double max_ratio = -std::numeric_limits<double>::infinity();
  double max_tight = -std::numeric_limits<double>::infinity();
  long long index = 0;
  for (int dim : c.dims) {
    for (int k = 0; k < c.trials; ++k, ++index) {
      const auto seed = derive_seed(c.seed, info.id, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(k));
      try {
        const auto trial = sample_trial(info, pools, c, dim, seed);
        const auto cert = evaluate(trial.req, opts);
        cov.add(trial);
        ++st.trials;
        min_slack = std::min(min_slack, cert.slack);
        max_ratio = std::max(max_ratio, cert.ratio);
        max_tight = std::max(max_tight, cert.tightness());
        if (cert.holds) {
          ++st.holds_count;
        } else {
          ++st.violations;
          if (st.first_violation_trial < 0) st.first_violation_trial = index;
          if (st.violating_instances.size() < kMaxViolating) {
            st.violating_instances.push_back(make_record(trial.req, cert, index, false));
          }
        }
      } catch (const HypothesisError& e) {
        ++st.refused;
        if (st.error_messages.size() < kMaxMessages) st.error_messages.push_back("refused: " + std::string(e.what()));
      } catch (const std::exception& e) {
        ++st.errors;
        if (st.error_messages.size() < kMaxMessages) st.error_messages.push_back(e.what());
      }
    }
  }
  if (st.trials > 0) {
    st.min_slack = min_slack;
    st.max_ratio = max_ratio;
    st.max_tightness = max_tight;
  }
  st.coverage = cov.finish();
  return st;
}

bool stats_pass(const InequalityStats& s) {
  return s.audit || (s.violations == 0 && s.refused == 0 && s.errors == 0 && s.trials > 0);
}

Report run_checks(const SuiteConfig& config, double scale, std::string command) {
  const auto start = Clock::now();
  validate(config);
  Report r;
  r.config = config;
  r.config.command = std::move(command);
  if (r.config.inequalities.empty()) r.config.inequalities = resolve_inequalities("all-non-audit");
  // Expand selectors such as "all" so the echoed config is explicit.
  {
    std::vector<std::string> ids;
    for (const auto& sel : r.config.inequalities) {
      for (auto& id : resolve_inequalities(sel)) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(std::move(id));
      }
    }
    r.config.inequalities = std::move(ids);
  }
  const auto& c = r.config;
  CheckOptions opts;
  opts.tol_rel = c.tol_rel;
  opts.constant_scale = scale;

  r.all_non_audit_hold = true;
  for (const auto& id : c.inequalities) {
    const auto& info = inequality_info(id);
    auto stats = run_inequality(info, c, opts);
    if (id.starts_with("norm-ratio-")) {
      auto pinned = pinned_norm_ratio_instance(id);
      const auto cert = evaluate(request_from(pinned), opts);
      pinned = make_record(request_from(pinned), cert, -1, true);
      if (!pinned.holds) stats.violating_instances.push_back(pinned);
      r.audit_pinned.push_back(std::move(pinned));
    }
    r.all_non_audit_hold = r.all_non_audit_hold && stats_pass(stats);
    r.inequalities.push_back(std::move(stats));
  }
  if (c.record_timing) r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// Probe -------------------------------------------------------------------

struct Cell {
  std::optional<double> s, t, m, big_m;
};

std::vector<Cell> probe_cells(const InequalityInfo& info, const SuiteConfig& c) {
  std::vector<Cell> cells;
  switch (info.pair) {
    case PairKind::Sandwich:
      if (c.s) return {{c.s, c.t, {}, {}}};
      for (auto [s, t] : std::vector<std::pair<double, double>>{{0.25, 4.0}, {0.5, 2.0}, {0.2, 0.9}, {1.0, 1.0}}) {
        if (info.id == "strengthened-remark" && s * t < 1.0) continue;
        cells.push_back({s, t, {}, {}});
      }
      return cells;
    case PairKind::Bounded:
    case PairKind::Ordered:
      if (c.m) return {{{}, {}, c.m, c.big_m}};
      return {{{}, {}, 1.0, 4.0}, {{}, {}, 1.0, 2.0}, {{}, {}, 0.5, 8.0}};
    case PairKind::None:
      if (info.id == "alpha-scaling") return {Cell{}};
      if (c.m) return {{{}, {}, c.m, c.big_m}};
      return {{{}, {}, 1.0, 4.0}, {{}, {}, 1.0, 2.0}, {{}, {}, 0.5, 8.0}};
  }
  return cells;
}

// Spectral parametrization of a probe instance.
//   Bounded:  A = Qa diag(la) Qa^T, B = Qb diag(lb) Qb^T, la, lb in [m, M]
//   Sandwich: A as above with la in a_range, B = A^{1/2} Qb diag(lb) Qb^T A^{1/2}, lb in [s, t]
//   Ordered:  A as bounded, B = A + Qb diag(lb) Qb^T, lb in [0, M]
struct ProbePoint {
  Eigen::VectorXd la, lb;
  Eigen::MatrixXd qa, qb;
  double la_lo = 0, la_hi = 0, lb_lo = 0, lb_hi = 0;
};

double sample_eigen(double lo, double hi, SplitMix64& rng) {
  if (rng.uniform() < 0.5) return rng.uniform() < 0.5 ? lo : hi;
  return rng.uniform(lo, hi);
}

Eigen::MatrixXd sample_basis(int dim, SplitMix64& rng) {
  if (rng.uniform() < 0.25) return Eigen::MatrixXd::Identity(dim, dim);
  return random_orthogonal(dim, rng);
}

ProbePoint sample_point(PairKind kind, const Cell& cell, const SuiteConfig& c, int dim, SplitMix64& rng) {
  ProbePoint pt;
  if (kind == PairKind::Sandwich) {
    pt.la_lo = c.a_range.lo;
    pt.la_hi = c.a_range.hi;
    pt.lb_lo = *cell.s;
    pt.lb_hi = *cell.t;
  } else {
    pt.la_lo = *cell.m;
    pt.la_hi = *cell.big_m;
    pt.lb_lo = kind == PairKind::Ordered ? 0.0 : *cell.m;
    pt.lb_hi = *cell.big_m;
  }
  pt.la.resize(dim);
  pt.lb.resize(dim);
  const bool corner = rng.uniform() < 0.2;
  for (int i = 0; i < dim; ++i) {
    if (corner) {
      pt.la(i) = rng.uniform() < 0.5 ? pt.la_lo : pt.la_hi;
      const double frac = (pt.la(i) - pt.la_lo) / std::max(pt.la_hi - pt.la_lo, 1e-300);
      pt.lb(i) = pt.lb_hi - frac * (pt.lb_hi - pt.lb_lo);
    } else {
      pt.la(i) = sample_eigen(pt.la_lo, pt.la_hi, rng);
      pt.lb(i) = sample_eigen(pt.lb_lo, pt.lb_hi, rng);
    }
  }
  pt.qa = sample_basis(dim, rng);
  pt.qb = corner || rng.uniform() < 0.3 ? pt.qa : sample_basis(dim, rng);
  return pt;
}

SymMatrix spectral(const Eigen::MatrixXd& q, const Eigen::VectorXd& l) {
  return SymMatrix(Eigen::MatrixXd(q * l.asDiagonal() * q.transpose()));
}

void build_pair(PairKind kind, const ProbePoint& pt, CheckRequest& req) {
  auto a = spectral(pt.qa, pt.la);
  auto inner = spectral(pt.qb, pt.lb);
  switch (kind) {
    case PairKind::Sandwich: {
      const Eigen::MatrixXd half = pt.qa * pt.la.cwiseSqrt().asDiagonal() * pt.qa.transpose();
      req.b = SymMatrix::congruence(half, inner);
      break;
    }
    case PairKind::Ordered:
      req.b = a + inner;
      break;
    default:
      req.b = std::move(inner);
  }
  req.a = std::move(a);
}

void perturb(ProbePoint& pt, SplitMix64& rng) {
  const int dim = static_cast<int>(pt.la.size());
  if (dim >= 2 && rng.uniform() < 0.5) {
    auto& q = rng.uniform() < 0.5 ? pt.qa : pt.qb;
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim - 1)));
    if (j >= i) ++j;
    const double angle = 0.3 * rng.normal();
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    const Eigen::VectorXd ci = q.col(i);
    const Eigen::VectorXd cj = q.col(j);
    q.col(i) = cs * ci - sn * cj;
    q.col(j) = sn * ci + cs * cj;
    return;
  }
  const bool first = rng.uniform() < 0.5;
  auto& l = first ? pt.la : pt.lb;
  const double lo = first ? pt.la_lo : pt.lb_lo;
  const double hi = first ? pt.la_hi : pt.lb_hi;
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
  if (rng.uniform() < 0.3) {
    l(i) = rng.uniform() < 0.5 ? lo : hi;
  } else {
    l(i) = std::clamp(l(i) + 0.15 * (hi - lo) * rng.normal(), lo, hi);
  }
}

struct Scored {
  Sampled sample;
  ProbePoint point;
  Certificate cert;
  double tightness = -std::numeric_limits<double>::infinity();
  bool ok = false;
};

struct ProbeTally {
  long long samples = 0;
  bool non_audit_failed = false;
};

void score(const InequalityInfo& info, Scored& s, const CheckOptions& opts, ProbeTally& tally) {
  ++tally.samples;
  if (info.pair != PairKind::None) build_pair(info.pair, s.point, s.sample.req);
  try {
    s.cert = evaluate(s.sample.req, opts);
    s.tightness = s.cert.tightness();
    s.ok = std::isfinite(s.tightness);
    if (!s.cert.holds && !info.audit) tally.non_audit_failed = true;
  } catch (const std::exception&) {
    s.ok = false;
    s.tightness = -std::numeric_limits<double>::infinity();
  }
}

ProbeCell probe_cell(const InequalityInfo& info, const Pools& pools, const Cell& cell, std::size_t cell_index,
                     const SuiteConfig& c, ProbeTally& tally) {
  constexpr std::size_t kClimbers = 6;
  ProbeCell out;
  out.inequality_id = std::string(info.id);
  out.s = cell.s;
  out.t = cell.t;
  out.m = cell.m;
  out.big_m = cell.big_m;
  const CheckOptions opts{c.tol_rel, 1.0};
  const long long before = tally.samples;

  std::optional<Scored> best;
  const auto consider = [&](const Scored& s) {
    if (s.ok && (!best || s.tightness > best->tightness)) best = s;
  };

  for (int dim : c.dims) {
    if (info.pair == PairKind::None && dim != c.dims.front()) break;
    const auto cell_tag = std::string(info.id) + "/probe/" + std::to_string(cell_index);
    std::vector<Scored> found;
    const int samples = info.pair == PairKind::None && info.id != "alpha-scaling" ? 1 : c.trials;
    for (int k = 0; k < samples; ++k) {
      const auto seed = derive_seed(c.seed, cell_tag, static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(k));
      SplitMix64 rng(seed);
      Scored s;
      try {
        s.sample = sample_params(info, pools, dim, seed, rng);
      } catch (const std::exception&) {
        continue;
      }
      auto& p = s.sample.req.params;
      p.s = cell.s;
      p.t = cell.t;
      p.m = cell.m;
      p.big_m = cell.big_m;
      if (info.id == "alpha-scaling") p.alpha = rng.log_uniform(1.0, 10.0);
      if (info.pair != PairKind::None) s.point = sample_point(info.pair, cell, c, dim, rng);
      score(info, s, opts, tally);
      consider(s);
      if (s.ok) found.push_back(std::move(s));
    }
    if (info.pair == PairKind::None) continue;
    std::stable_sort(found.begin(), found.end(), [](const Scored& x, const Scored& y) { return x.tightness > y.tightness; });
    if (found.size() > kClimbers) found.resize(kClimbers);
    for (std::size_t r = 0; r < found.size(); ++r) {
      SplitMix64 rng(derive_seed(c.seed, cell_tag + "/climb", static_cast<std::uint64_t>(dim), r));
      Scored cur = found[r];
      for (int step = 0; step < c.probe_steps; ++step) {
        Scored next = cur;
        perturb(next.point, rng);
        score(info, next, opts, tally);
        if (next.ok && next.tightness > cur.tightness) cur = std::move(next);
      }
      consider(cur);
    }
  }
  out.samples = tally.samples - before;
  if (best) {
    build_pair(info.pair, best->point, best->sample.req);
    out.max_ratio = best->cert.ratio;
    out.constant = best->cert.constant;
    out.max_tightness = best->tightness;
    out.best = make_record(best->sample.req, best->cert, -1, false);
  }
  return out;
}

// Scalar checks -------------------------------------------------------------

std::string fmt(double v) { return text::format_double(v); }

ScalarCheckItem kernel_ordering() {
  const auto har = ScalarKernel::harmonic();
  const auto geo = ScalarKernel::geometric();
  const auto ari = ScalarKernel::arithmetic();
  std::string bad;
  if (!kernel_dominance(har, geo).holds) bad += " harmonic>geometric";
  if (!kernel_dominance(geo, ari).holds) bad += " geometric>arithmetic";
  for (const auto& id : kernel_catalog_ids()) {
    const auto k = ScalarKernel::parse(id);
    if (!kernel_dominance(har, k).holds) bad += " " + id + "<harmonic";
    if (!kernel_dominance(k, ari).holds) bad += " " + id + ">arithmetic";
  }
  return {"kernel-ordering", bad.empty(), bad.empty() ? "harmonic <= k <= arithmetic for the catalog" : bad};
}

ScalarCheckItem kernel_symmetry() {
  std::string detail;
  bool ok = true;
  for (const auto& id : kernel_catalog_ids()) {
    const auto k = ScalarKernel::parse(id);
    const bool sym = is_symmetric_kernel(k);
    ok = ok && sym == k.claims_symmetric;
    detail += id + (sym ? ":symmetric " : ":asymmetric ");
  }
  detail.pop_back();
  return {"kernel-symmetry", ok, detail};
}

ScalarCheckItem loewner_psd(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, "scalarcheck/loewner", 0));
  std::string bad;
  int square_rejections = 0;
  const auto square = MonotoneFunction::parse("square");
  for (int set = 0; set < 20; ++set) {
    std::vector<double> pts;
    while (pts.size() < 5) {
      const double x = rng.log_uniform(1e-3, 1e3);
      if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    for (const auto& id : function_catalog_ids(FunctionClass::OperatorMonotone)) {
      if (!loewner_matrix_psd_test(MonotoneFunction::parse(id), pts)) bad += " " + id + "@set" + std::to_string(set);
    }
    if (!loewner_matrix_psd_test(square, pts)) ++square_rejections;
  }
  const bool ok = bad.empty() && square_rejections > 0;
  return {"loewner-matrix-psd", ok,
          (bad.empty() ? std::string("catalog monotone functions accepted on 20 sets") : "rejected:" + bad) +
              "; square rejected on " + std::to_string(square_rejections) + "/20"};
}

ScalarCheckItem specht_values() {
  bool ok = std::abs(specht_ratio(1.0) - 1.0) <= 1e-12;
  double worst = std::numeric_limits<double>::infinity();
  for (double h : log_grid(1e-3, 1e3, 201)) {
    const double s = specht_ratio(h);
    const double sym = specht_ratio(1.0 / h);
    if (!(s >= 1.0 - 1e-12) || std::abs(s - sym) > 1e-9 * s) ok = false;
    if (std::abs(h - 1.0) > 1e-3 && !(s > 1.0)) ok = false;
    worst = std::min(worst, s);
  }
  return {"specht-ratio", ok, "S(1) = 1, S(h) = S(1/h) >= 1, min on grid " + fmt(worst)};
}

ScalarCheckItem sandwich_continuity(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, "scalarcheck/continuity", 0));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double s = rng.log_uniform(1e-2, 1.0);
    const double t = 1.0 / s;
    const double upper = std::pow((std::sqrt(s) + std::sqrt(t)) / 2.0, 2);
    const double lower = std::pow((std::sqrt(s) + std::sqrt(t)) / (2.0 * std::sqrt(s * t)), 2);
    worst = std::max(worst, std::abs(upper - lower) / upper);
    worst = std::max(worst, std::abs(sandwich_constant(s, t) - upper) / upper);
  }
  return {"sandwich-constant-continuity", worst <= 1e-12, "max relative branch gap at st = 1: " + fmt(worst)};
}

ScalarCheckItem kantorovich_coherence(std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, "scalarcheck/coherence", 0));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double m = rng.log_uniform(0.01, 10.0);
    const double big_m = m * rng.log_uniform(1.0, 1000.0);
    const double k = kantorovich_constant(m, big_m);
    worst = std::max(worst, std::abs(sandwich_constant(m / big_m, big_m / m) - k) / k);
  }
  return {"kantorovich-coherence", worst <= 1e-12, "max relative gap " + fmt(worst)};
}

ScalarCheckItem sandwich_scalar(double tol_rel) {
  const std::vector<double> vals = {0.1, 0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0, 10.0};
  std::string bad;
  int count = 0;
  for (double s : vals) {
    for (double t : vals) {
      if (t < s) continue;
      ++count;
      if (!check_sandwich_lemma_scalar(s, t, {tol_rel, 1.0}).holds) bad += " (" + fmt(s) + "," + fmt(t) + ")";
    }
  }
  return {"sandwich-lemma-scalar", bad.empty(),
          bad.empty() ? std::to_string(count) + " (s,t) pairs hold" : "violated at" + bad};
}

ScalarCheckItem alpha_scaling(double tol_rel) {
  std::string bad;
  int count = 0;
  for (auto cls : {FunctionClass::OperatorMonotone, FunctionClass::OperatorMonotoneDecreasing}) {
    for (const auto& id : function_catalog_ids(cls)) {
      const auto fn = MonotoneFunction::parse(id);
      for (double alpha : {1.0, 1.5, 2.0, 5.0, 10.0}) {
        ++count;
        if (!check_alpha_scaling(fn, alpha, default_grid(), {tol_rel, 1.0}).holds) {
          bad += " " + id + "@" + fmt(alpha);
        }
      }
    }
  }
  return {"alpha-scaling", bad.empty(), bad.empty() ? std::to_string(count) + " cases hold" : "violated:" + bad};
}

ScalarCheckItem specht_bound(double tol_rel) {
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (double h : log_grid(1.01, 100.0, 200)) {
    const auto c = check_specht_bound(1.0, h, {tol_rel, 1.0});
    ok = ok && c.holds;
    worst = std::min(worst, c.slack);
  }
  const auto eq = check_specht_bound(2.0, 2.0, {tol_rel, 1.0});
  ok = ok && std::abs(eq.slack) <= 1e-12;
  return {"specht-bound", ok, "200-point grid min slack " + fmt(worst) + ", slack at m = M " + fmt(eq.slack)};
}

}  // namespace

Report run_suite(const SuiteConfig& config) { return run_checks(config, 1.0, "verify"); }

Report hunt_counterexamples(const SuiteConfig& config) {
  return run_checks(config, config.constant_override, "hunt");
}

Report probe_tightness(const SuiteConfig& config) {
  const auto start = Clock::now();
  validate(config);
  Report r;
  r.config = config;
  r.config.command = "probe";
  if (r.config.inequalities.empty()) r.config.inequalities = resolve_inequalities("all-non-audit");
  std::vector<std::string> ids;
  for (const auto& sel : r.config.inequalities) {
    for (auto& id : resolve_inequalities(sel)) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(std::move(id));
    }
  }
  r.config.inequalities = ids;
  ProbeTally tally;
  for (const auto& id : ids) {
    const auto& info = inequality_info(id);
    const auto pools = make_pools(info, r.config);
    const auto cells = probe_cells(info, r.config);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      r.probe.push_back(probe_cell(info, pools, cells[i], i, r.config, tally));
    }
  }
  r.all_non_audit_hold = !tally.non_audit_failed;
  if (config.record_timing) r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

Report run_scalarcheck(const SuiteConfig& config) {
  const auto start = Clock::now();
  validate(config);
  Report r;
  r.config = config;
  r.config.command = "scalarcheck";
  r.scalar_checks = {kernel_ordering(),
                     kernel_symmetry(),
                     loewner_psd(config.seed),
                     specht_values(),
                     sandwich_continuity(config.seed),
                     kantorovich_coherence(config.seed),
                     sandwich_scalar(config.tol_rel),
                     alpha_scaling(config.tol_rel),
                     specht_bound(config.tol_rel)};
  r.all_non_audit_hold =
      std::all_of(r.scalar_checks.begin(), r.scalar_checks.end(), [](const auto& it) { return it.passed; });
  if (config.record_timing) r.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

Report run_command(const SuiteConfig& config) {
  if (config.command == "verify") return run_suite(config);
  if (config.command == "hunt") return hunt_counterexamples(config);
  if (config.command == "probe") return probe_tightness(config);
  if (config.command == "scalarcheck") return run_scalarcheck(config);
  throw InvalidArgument("unknown command '" + config.command + "' (expected verify, hunt, probe or scalarcheck)");
}

std::vector<InstanceRecord> recheckable_instances(const Report& report) {
  std::vector<InstanceRecord> out;
  for (const auto& s : report.inequalities) {
    for (const auto& v : s.violating_instances) out.push_back(v);
  }
  for (const auto& p : report.audit_pinned) {
    const bool listed = std::any_of(out.begin(), out.end(), [&](const InstanceRecord& r) {
      return r.pinned && r.inequality_id == p.inequality_id;
    });
    if (!listed) out.push_back(p);
  }
  for (const auto& cell : report.probe) {
    if (cell.best) out.push_back(*cell.best);
  }
  return out;
}

Certificate recheck(const Report& report, std::size_t index) {
  const auto all = recheckable_instances(report);
  if (index >= all.size()) {
    throw InvalidArgument("instance index " + std::to_string(index) + " out of range (report has " +
                          std::to_string(all.size()) + " re-checkable instances)");
  }
  CheckOptions opts;
  opts.tol_rel = report.config.tol_rel;
  if (report.config.command == "hunt") opts.constant_scale = report.config.constant_override;
  return evaluate(request_from(all[index]), opts);
}

InstanceRecord pinned_norm_ratio_instance(std::string_view inequality_id) {
  const auto& info = inequality_info(inequality_id);
  if (!info.id.starts_with("norm-ratio-")) {
    throw InvalidArgument("no pinned instance for '" + std::string(inequality_id) + "'");
  }
  InstanceRecord r;
  r.inequality_id = std::string(info.id);
  r.pinned = true;
  r.a = SymMatrix::diagonal({1.0, 4.0});
  r.b = SymMatrix::diagonal({4.0, 1.0});
  auto& p = r.params;
  p.dim = 2;
  p.fn = "square";
  p.norm = "op";
  if (info.id == "norm-ratio-eq15") {
    p.m = 1.0;
    p.big_m = 4.0;
  } else {
    p.s = 0.25;
    p.t = 4.0;
  }
  if (info.uses_tau) p.tau = "arithmetic";
  if (info.uses_sigma) p.sigma = "geometric";
  return r;
}

}  // namespace loewner
