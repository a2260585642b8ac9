#pragma once

#include "loewner/certificates.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loewner {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

struct Range {
  double lo;
  double hi;
  bool operator==(const Range&) const = default;
};

// Description of a randomized campaign. Empty selection lists mean "the
// built-in catalog".
struct SuiteConfig {
  std::string command = "verify";  // verify | hunt | probe | scalarcheck
  std::vector<std::string> inequalities;
  std::vector<int> dims = {2, 3, 4, 5, 6};
  int trials = 200;
  std::uint64_t seed = 7;
  double tol_rel = kDefaultTolRel;
  std::optional<double> s, t, m, big_m;
  Range st_range{0.1, 10.0};     // s and t are log-uniform here, then sorted
  Range m_range{0.1, 1.0};       // log-uniform m
  Range ratio_range{1.01, 100};  // M = m * log-uniform ratio
  Range a_range{0.1, 10.0};      // spectrum of A in sandwich pairs
  std::vector<std::string> taus, sigmas, fns, maps, norms;
  double constant_override = 1.0;
  int probe_steps = 200;
  bool record_timing = false;

  bool operator==(const SuiteConfig&) const = default;
};

// Expands "all", "all-non-audit" and comma lists into registry ids.
std::vector<std::string> resolve_inequalities(std::string_view selector);

// A fully re-checkable instance: everything evaluate() needs.
struct InstanceRecord {
  std::string inequality_id;
  long long trial = -1;
  bool pinned = false;
  CheckParams params;
  std::optional<SymMatrix> a, b;
  double slack = 0.0;
  double ratio = 0.0;
  double constant = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

struct Coverage {
  std::vector<std::string> maps, kernels, functions, norms;
  std::vector<int> dims;
};

struct InequalityStats {
  std::string id;
  bool audit = false;
  long long trials = 0;  // evaluated certificates: holds_count + violations
  long long holds_count = 0;
  long long violations = 0;
  long long refused = 0;  // hypothesis violations
  long long errors = 0;   // numerical or other failures
  double min_slack = 0.0;
  double max_ratio = 0.0;
  double max_tightness = 0.0;
  long long first_violation_trial = -1;
  Coverage coverage;
  std::vector<InstanceRecord> violating_instances;  // capped at 10 (+ pinned)
  std::vector<std::string> error_messages;          // capped at 5
};

struct ProbeCell {
  std::string inequality_id;
  std::optional<double> s, t, m, big_m;
  long long samples = 0;
  double max_ratio = 0.0;
  double constant = 0.0;
  double max_tightness = 0.0;
  std::optional<InstanceRecord> best;
};

struct ScalarCheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string tool_version{kToolVersion};
  int schema_version = kSchemaVersion;
  SuiteConfig config;
  std::vector<InequalityStats> inequalities;
  std::vector<InstanceRecord> audit_pinned;
  std::vector<ProbeCell> probe;
  std::vector<ScalarCheckItem> scalar_checks;
  bool all_non_audit_hold = false;
  std::optional<double> wall_time_s;
};

std::string config_to_json(const SuiteConfig& c);
SuiteConfig config_from_json(std::string_view text);

std::string report_to_json(const Report& r);
Report report_from_json(std::string_view text);
void write_report(const Report& r, const std::filesystem::path& path);
Report load_report(const std::filesystem::path& path);

std::string certificate_to_json(const Certificate& c);

// {"dim": n, "data": [n*n row-major numbers]}; asymmetry above 1e-8 relative is rejected.
SymMatrix matrix_from_json(std::string_view text);
std::string matrix_to_json(const SymMatrix& m);
SymMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const SymMatrix& m, const std::filesystem::path& path);

}  // namespace loewner
