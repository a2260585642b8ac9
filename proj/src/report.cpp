#include "loewner/report.hpp"

#include "loewner/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace loewner {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Non-finite doubles are stored as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_null()) return kNaN;
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

void put_opt(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = num(*v);
}

json matrix_json(const SymMatrix& m) {
  json j;
  j["dim"] = m.dim();
  json data = json::array();
  for (double v : m.row_major()) data.push_back(v);
  j["data"] = std::move(data);
  return j;
}

SymMatrix matrix_from(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
    throw ParseError("matrix field 'dim' must be a positive integer");
  }
  const int n = j.at("dim").get<int>();
  if (!j.contains("data") || !j.at("data").is_array()) throw ParseError("matrix field 'data' must be an array");
  const auto& data = j.at("data");
  if (data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ParseError("matrix field 'data' has " + std::to_string(data.size()) + " entries, 'dim' " +
                     std::to_string(n) + " needs " + std::to_string(n * n));
  }
  std::vector<double> v;
  v.reserve(data.size());
  for (const auto& x : data) {
    if (!x.is_number()) throw ParseError("matrix field 'data' must hold numbers");
    v.push_back(x.get<double>());
  }
  double scale = 1.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double d = std::abs(v[static_cast<std::size_t>(i * n + k)] - v[static_cast<std::size_t>(k * n + i)]);
      if (d > 1e-8 * scale) {
        throw ParseError("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(k) +
                         "): difference " + text::format_double(d));
      }
    }
  }
  return SymMatrix(n, v);
}

json params_json(const CheckParams& p) {
  json j;
  if (!p.map.empty()) j["map"] = p.map;
  if (!p.tau.empty()) j["tau"] = p.tau;
  if (!p.sigma.empty()) j["sigma"] = p.sigma;
  if (!p.fn.empty()) j["fn"] = p.fn;
  if (!p.norm.empty()) j["norm"] = p.norm;
  put_opt(j, "s", p.s);
  put_opt(j, "t", p.t);
  put_opt(j, "m", p.m);
  put_opt(j, "M", p.big_m);
  put_opt(j, "alpha", p.alpha);
  j["dim"] = p.dim;
  j["seed"] = p.seed;
  return j;
}

CheckParams params_from(const json& j) {
  CheckParams p;
  p.map = get_or<std::string>(j, "map", "");
  p.tau = get_or<std::string>(j, "tau", "");
  p.sigma = get_or<std::string>(j, "sigma", "");
  p.fn = get_or<std::string>(j, "fn", "");
  p.norm = get_or<std::string>(j, "norm", "");
  p.s = get_opt(j, "s");
  p.t = get_opt(j, "t");
  p.m = get_opt(j, "m");
  p.big_m = get_opt(j, "M");
  p.alpha = get_opt(j, "alpha");
  p.dim = get_or<int>(j, "dim", 0);
  p.seed = get_or<std::uint64_t>(j, "seed", 0);
  return p;
}

json instance_json(const InstanceRecord& r) {
  json j;
  j["inequality_id"] = r.inequality_id;
  j["trial"] = r.trial;
  j["pinned"] = r.pinned;
  j["params"] = params_json(r.params);
  if (r.a) j["A"] = matrix_json(*r.a);
  if (r.b) j["B"] = matrix_json(*r.b);
  j["slack"] = num(r.slack);
  j["ratio"] = num(r.ratio);
  j["constant"] = num(r.constant);
  j["tolerance"] = num(r.tolerance);
  j["holds"] = r.holds;
  return j;
}

InstanceRecord instance_from(const json& j) {
  InstanceRecord r;
  r.inequality_id = j.at("inequality_id").get<std::string>();
  r.trial = get_or<long long>(j, "trial", -1);
  r.pinned = get_or<bool>(j, "pinned", false);
  r.params = params_from(j.at("params"));
  if (j.contains("A")) r.a = matrix_from(j.at("A"));
  if (j.contains("B")) r.b = matrix_from(j.at("B"));
  r.slack = get_num(j, "slack");
  r.ratio = get_num(j, "ratio");
  r.constant = get_num(j, "constant");
  r.tolerance = get_num(j, "tolerance");
  r.holds = j.at("holds").get<bool>();
  return r;
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from(const json& j, const char* key, Range fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(std::string("field '") + key + "' must be [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

json config_json(const SuiteConfig& c) {
  json j;
  j["command"] = c.command;
  j["inequalities"] = c.inequalities;
  j["dims"] = c.dims;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tol_rel"] = c.tol_rel;
  put_opt(j, "s", c.s);
  put_opt(j, "t", c.t);
  put_opt(j, "m", c.m);
  put_opt(j, "M", c.big_m);
  j["st_range"] = range_json(c.st_range);
  j["m_range"] = range_json(c.m_range);
  j["ratio_range"] = range_json(c.ratio_range);
  j["a_range"] = range_json(c.a_range);
  j["tau"] = c.taus;
  j["sigma"] = c.sigmas;
  j["fn"] = c.fns;
  j["phi"] = c.maps;
  j["norm"] = c.norms;
  j["constant_override"] = c.constant_override;
  j["probe_steps"] = c.probe_steps;
  j["record_timing"] = c.record_timing;
  return j;
}

SuiteConfig config_from(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  SuiteConfig c;
  c.command = get_or<std::string>(j, "command", c.command);
  if (j.contains("inequalities")) {
    const auto& v = j.at("inequalities");
    if (v.is_string()) c.inequalities = resolve_inequalities(v.get<std::string>());
    else {
      for (const auto& s : v) {
        for (auto& id : resolve_inequalities(s.get<std::string>())) c.inequalities.push_back(std::move(id));
      }
    }
  }
  c.dims = get_or<std::vector<int>>(j, "dims", c.dims);
  c.trials = get_or<int>(j, "trials", c.trials);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.tol_rel = get_or<double>(j, "tol_rel", c.tol_rel);
  c.s = get_opt(j, "s");
  c.t = get_opt(j, "t");
  c.m = get_opt(j, "m");
  c.big_m = get_opt(j, "M");
  c.st_range = range_from(j, "st_range", c.st_range);
  c.m_range = range_from(j, "m_range", c.m_range);
  c.ratio_range = range_from(j, "ratio_range", c.ratio_range);
  c.a_range = range_from(j, "a_range", c.a_range);
  c.taus = get_or<std::vector<std::string>>(j, "tau", {});
  c.sigmas = get_or<std::vector<std::string>>(j, "sigma", {});
  c.fns = get_or<std::vector<std::string>>(j, "fn", {});
  c.maps = get_or<std::vector<std::string>>(j, "phi", {});
  c.norms = get_or<std::vector<std::string>>(j, "norm", {});
  c.constant_override = get_or<double>(j, "constant_override", c.constant_override);
  c.probe_steps = get_or<int>(j, "probe_steps", c.probe_steps);
  c.record_timing = get_or<bool>(j, "record_timing", c.record_timing);
  return c;
}

json coverage_json(const Coverage& c) {
  json j;
  j["maps"] = c.maps;
  j["kernels"] = c.kernels;
  j["functions"] = c.functions;
  j["norms"] = c.norms;
  j["dims"] = c.dims;
  return j;
}

Coverage coverage_from(const json& j) {
  Coverage c;
  c.maps = get_or<std::vector<std::string>>(j, "maps", {});
  c.kernels = get_or<std::vector<std::string>>(j, "kernels", {});
  c.functions = get_or<std::vector<std::string>>(j, "functions", {});
  c.norms = get_or<std::vector<std::string>>(j, "norms", {});
  c.dims = get_or<std::vector<int>>(j, "dims", {});
  return c;
}

json side_json(const Side& s) {
  if (const auto* d = std::get_if<double>(&s)) return num(*d);
  return matrix_json(std::get<SymMatrix>(s));
}

json certificate_json(const Certificate& c) {
  json j;
  j["inequality_id"] = c.inequality_id;
  j["params"] = params_json(c.params);
  j["lhs"] = side_json(c.lhs);
  j["rhs"] = side_json(c.rhs);
  j["constant"] = num(c.constant);
  j["slack"] = num(c.slack);
  j["ratio"] = num(c.ratio);
  j["tightness"] = num(c.tightness());
  j["tolerance"] = num(c.tolerance);
  j["holds"] = c.holds;
  if (!c.parts.empty()) {
    json parts = json::array();
    for (const auto& p : c.parts) parts.push_back(certificate_json(p));
    j["parts"] = std::move(parts);
  }
  return j;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string config_to_json(const SuiteConfig& c) { return config_json(c).dump(2); }

SuiteConfig config_from_json(std::string_view text) {
  try {
    return config_from(parse_text(text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid config: ") + e.what());
  }
}

std::string report_to_json(const Report& r) {
  json body;
  body["schema_version"] = r.schema_version;
  body["tool_version"] = r.tool_version;
  body["config"] = config_json(r.config);
  body["all_non_audit_hold"] = r.all_non_audit_hold;

  json ineqs = json::array();
  json audit = json::object();
  for (const auto& s : r.inequalities) {
    json j;
    j["id"] = s.id;
    j["audit"] = s.audit;
    j["trials"] = s.trials;
    j["holds_count"] = s.holds_count;
    j["violations"] = s.violations;
    j["refused"] = s.refused;
    j["errors"] = s.errors;
    j["min_slack"] = num(s.min_slack);
    j["max_ratio"] = num(s.max_ratio);
    j["max_tightness"] = num(s.max_tightness);
    j["first_violation_trial"] = s.first_violation_trial;
    j["coverage"] = coverage_json(s.coverage);
    json v = json::array();
    for (const auto& inst : s.violating_instances) v.push_back(instance_json(inst));
    j["violating_instances"] = std::move(v);
    j["error_messages"] = s.error_messages;
    if (s.audit) {
      json a;
      a["trials"] = s.trials;
      a["violations"] = s.violations;
      a["violation_rate"] = s.trials > 0 ? json(static_cast<double>(s.violations) / static_cast<double>(s.trials))
                                         : json(nullptr);
      audit[s.id] = std::move(a);
    }
    ineqs.push_back(std::move(j));
  }
  body["inequalities"] = std::move(ineqs);

  json pinned = json::array();
  for (const auto& p : r.audit_pinned) pinned.push_back(instance_json(p));
  body["audit"] = {{"violation_rates", std::move(audit)}, {"pinned_regressions", std::move(pinned)}};

  if (!r.probe.empty()) {
    json cells = json::array();
    for (const auto& c : r.probe) {
      json j;
      j["inequality_id"] = c.inequality_id;
      put_opt(j, "s", c.s);
      put_opt(j, "t", c.t);
      put_opt(j, "m", c.m);
      put_opt(j, "M", c.big_m);
      j["samples"] = c.samples;
      j["max_ratio"] = num(c.max_ratio);
      j["constant"] = num(c.constant);
      j["max_tightness"] = num(c.max_tightness);
      if (c.best) j["best"] = instance_json(*c.best);
      cells.push_back(std::move(j));
    }
    body["probe"] = std::move(cells);
  }
  if (!r.scalar_checks.empty()) {
    json items = json::array();
    for (const auto& it : r.scalar_checks) {
      items.push_back({{"name", it.name}, {"passed", it.passed}, {"detail", it.detail}});
    }
    body["scalar_checks"] = std::move(items);
  }
  if (r.wall_time_s) body["wall_time_s"] = *r.wall_time_s;

  json root;
  root["loewner_lab_report"] = std::move(body);
  return root.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  const auto root = parse_text(text);
  try {
    if (!root.contains("loewner_lab_report")) throw ParseError("missing top-level key 'loewner_lab_report'");
    const auto& body = root.at("loewner_lab_report");
    Report r;
    r.schema_version = body.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw ParseError("unsupported schema_version " + std::to_string(r.schema_version));
    }
    r.tool_version = body.at("tool_version").get<std::string>();
    r.config = config_from(body.at("config"));
    r.all_non_audit_hold = body.at("all_non_audit_hold").get<bool>();
    for (const auto& j : body.at("inequalities")) {
      InequalityStats s;
      s.id = j.at("id").get<std::string>();
      s.audit = j.at("audit").get<bool>();
      s.trials = j.at("trials").get<long long>();
      s.holds_count = j.at("holds_count").get<long long>();
      s.violations = j.at("violations").get<long long>();
      s.refused = j.at("refused").get<long long>();
      s.errors = j.at("errors").get<long long>();
      s.min_slack = get_num(j, "min_slack");
      s.max_ratio = get_num(j, "max_ratio");
      s.max_tightness = get_num(j, "max_tightness");
      s.first_violation_trial = j.at("first_violation_trial").get<long long>();
      s.coverage = coverage_from(j.at("coverage"));
      for (const auto& v : j.at("violating_instances")) s.violating_instances.push_back(instance_from(v));
      s.error_messages = get_or<std::vector<std::string>>(j, "error_messages", {});
      r.inequalities.push_back(std::move(s));
    }
    if (body.contains("audit")) {
      for (const auto& p : body.at("audit").at("pinned_regressions")) r.audit_pinned.push_back(instance_from(p));
    }
    if (body.contains("probe")) {
      for (const auto& j : body.at("probe")) {
        ProbeCell c;
        c.inequality_id = j.at("inequality_id").get<std::string>();
        c.s = get_opt(j, "s");
        c.t = get_opt(j, "t");
        c.m = get_opt(j, "m");
        c.big_m = get_opt(j, "M");
        c.samples = j.at("samples").get<long long>();
        c.max_ratio = get_num(j, "max_ratio");
        c.constant = get_num(j, "constant");
        c.max_tightness = get_num(j, "max_tightness");
        if (j.contains("best")) c.best = instance_from(j.at("best"));
        r.probe.push_back(std::move(c));
      }
    }
    if (body.contains("scalar_checks")) {
      for (const auto& j : body.at("scalar_checks")) {
        r.scalar_checks.push_back(
            {j.at("name").get<std::string>(), j.at("passed").get<bool>(), j.at("detail").get<std::string>()});
      }
    }
    r.wall_time_s = get_opt(body, "wall_time_s");
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid report: ") + e.what());
  }
}

void write_report(const Report& r, const std::filesystem::path& path) { write_file(path, report_to_json(r)); }

Report load_report(const std::filesystem::path& path) { return report_from_json(read_file(path)); }

std::string certificate_to_json(const Certificate& c) { return certificate_json(c).dump(2); }

SymMatrix matrix_from_json(std::string_view text) { return matrix_from(parse_text(text)); }

std::string matrix_to_json(const SymMatrix& m) { return matrix_json(m).dump() + "\n"; }

SymMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_json(read_file(path)); }

void save_matrix(const SymMatrix& m, const std::filesystem::path& path) { write_file(path, matrix_to_json(m)); }

}  // namespace loewner
