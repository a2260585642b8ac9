// Command-line front end. Talks to the library only through the C API.
#include "loewner/loewner.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string ineq = "all-non-audit";
  std::string dims;
  std::optional<int> trials;
  std::optional<unsigned long long> seed;
  std::optional<double> tol, s, t, m, big_m, override_constant;
  std::vector<std::string> tau, sigma, f, g, phi, norm;
  std::optional<int> probe_steps;
  std::string report_path;
  bool timing = false;
  bool print_json = false;
};

struct ReportDeleter {
  void operator()(lw_report* r) const { lw_report_destroy(r); }
};
using ReportPtr = std::unique_ptr<lw_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out = s;
  lw_string_free(s);
  return out;
}

int report_error(const char* what) {
  std::cerr << "error: " << what << ": " << lw_last_error() << "\n";
  return 2;
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto end = item.find(',', start);
      auto piece = item.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (!piece.empty()) out.push_back(piece);
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return out;
}

json build_config(const Options& o) {
  json c;
  c["inequalities"] = o.ineq;
  if (!o.dims.empty()) {
    std::vector<int> dims;
    for (const auto& d : split_commas({o.dims})) dims.push_back(std::stoi(d));
    c["dims"] = dims;
  }
  if (o.trials) c["trials"] = *o.trials;
  if (o.seed) c["seed"] = *o.seed;
  if (o.tol) c["tol_rel"] = *o.tol;
  if (o.s) c["s"] = *o.s;
  if (o.t) c["t"] = *o.t;
  if (o.m) c["m"] = *o.m;
  if (o.big_m) c["M"] = *o.big_m;
  if (!o.tau.empty()) c["tau"] = split_commas(o.tau);
  if (!o.sigma.empty()) c["sigma"] = split_commas(o.sigma);
  auto fns = split_commas(o.f);
  for (auto& g : split_commas(o.g)) fns.push_back(g);
  if (!fns.empty()) c["fn"] = fns;
  if (!o.phi.empty()) c["phi"] = o.phi;
  if (!o.norm.empty()) c["norm"] = split_commas(o.norm);
  if (o.override_constant) c["constant_override"] = *o.override_constant;
  if (o.probe_steps) c["probe_steps"] = *o.probe_steps;
  if (o.timing) c["record_timing"] = true;
  return c;
}

std::string num(const json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
  return buf;
}

void print_summary(const json& body) {
  if (body.contains("inequalities") && !body["inequalities"].empty()) {
    std::printf("%-24s %7s %7s %6s %7s %6s %12s %10s %10s\n", "inequality", "trials", "holds", "viol", "refused",
                "errors", "min_slack", "max_ratio", "tightness");
    for (const auto& s : body["inequalities"]) {
      std::printf("%-24s %7lld %7lld %6lld %7lld %6lld %12s %10s %10s%s\n", s["id"].get<std::string>().c_str(),
                  s["trials"].get<long long>(), s["holds_count"].get<long long>(), s["violations"].get<long long>(),
                  s["refused"].get<long long>(), s["errors"].get<long long>(), num(s["min_slack"]).c_str(),
                  num(s["max_ratio"]).c_str(), num(s["max_tightness"]).c_str(),
                  s["audit"].get<bool>() ? "  [audit]" : "");
      for (const auto& msg : s["error_messages"]) std::printf("    %s\n", msg.get<std::string>().c_str());
    }
  }
  const auto& audit = body["audit"];
  for (const auto& p : audit["pinned_regressions"]) {
    std::printf("pinned %-20s ratio %s constant %s %s\n", p["inequality_id"].get<std::string>().c_str(),
                num(p["ratio"]).c_str(), num(p["constant"]).c_str(),
                p["holds"].get<bool>() ? "holds" : "VIOLATED (audit)");
  }
  if (body.contains("probe")) {
    std::printf("%-24s %-16s %9s %10s %10s %10s\n", "inequality", "cell", "samples", "max_ratio", "constant",
                "tightness");
    for (const auto& c : body["probe"]) {
      std::string cell;
      if (c.contains("s")) cell = "s=" + num(c["s"]) + " t=" + num(c["t"]);
      if (c.contains("m")) cell = "m=" + num(c["m"]) + " M=" + num(c["M"]);
      std::printf("%-24s %-16s %9lld %10s %10s %10s\n", c["inequality_id"].get<std::string>().c_str(), cell.c_str(),
                  c["samples"].get<long long>(), num(c["max_ratio"]).c_str(), num(c["constant"]).c_str(),
                  num(c["max_tightness"]).c_str());
    }
  }
  if (body.contains("scalar_checks")) {
    for (const auto& it : body["scalar_checks"]) {
      std::printf("%-30s %s  %s\n", it["name"].get<std::string>().c_str(), it["passed"].get<bool>() ? "ok  " : "FAIL",
                  it["detail"].get<std::string>().c_str());
    }
  }
  if (body.contains("wall_time_s")) std::printf("wall time %.3f s\n", body["wall_time_s"].get<double>());
  std::printf("all non-audit checks hold: %s\n", body["all_non_audit_hold"].get<bool>() ? "yes" : "no");
}

int run(const std::string& command, const Options& o) {
  const auto config = build_config(o).dump();
  lw_report* raw = nullptr;
  if (lw_run(command.c_str(), config.c_str(), &raw) != LW_OK) return report_error(command.c_str());
  ReportPtr report(raw);
  char* text = nullptr;
  if (lw_report_json(report.get(), &text) != LW_OK) return report_error("serializing report");
  const auto report_json = take_string(text);
  if (o.print_json) {
    std::cout << report_json;
  } else {
    print_summary(json::parse(report_json)["loewner_lab_report"]);
  }
  if (!o.report_path.empty()) {
    if (lw_report_write(report.get(), o.report_path.c_str()) != LW_OK) return report_error("writing report");
  }
  return lw_report_all_hold(report.get()) ? 0 : 1;
}

int recheck(const std::string& path, std::size_t index) {
  lw_report* raw = nullptr;
  if (lw_report_load(path.c_str(), &raw) != LW_OK) return report_error("loading report");
  ReportPtr report(raw);
  char* cert = nullptr;
  int holds = 0;
  int audit = 0;
  if (lw_recheck(report.get(), index, &cert, &holds, &audit) != LW_OK) return report_error("recheck");
  std::cout << take_string(cert) << "\n";
  std::cout << (holds ? "holds" : audit ? "violated (audit inequality)" : "VIOLATED") << "\n";
  return holds || audit ? 0 : 1;
}

void add_suite_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--ineq", o.ineq, "Inequality ids, comma separated, or all / all-non-audit");
  cmd->add_option("--dims", o.dims, "Dimensions, comma separated");
  cmd->add_option("--trials", o.trials, "Trials per inequality and dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--tol", o.tol, "Relative tolerance");
  cmd->add_option("--s", o.s, "Lower sandwich scalar");
  cmd->add_option("--t", o.t, "Upper sandwich scalar");
  cmd->add_option("--m", o.m, "Lower spectral bound");
  cmd->add_option("--M", o.big_m, "Upper spectral bound");
  cmd->add_option("--tau", o.tau, "Kernels for tau");
  cmd->add_option("--sigma", o.sigma, "Kernels for sigma");
  cmd->add_option("--f", o.f, "Operator monotone (or convex) functions");
  cmd->add_option("--g", o.g, "Operator monotone decreasing functions");
  cmd->add_option("--phi", o.phi, "Positive map spec; repeat for several");
  cmd->add_option("--norm", o.norm, "Norms: op, trace, frobenius, kyfan:K, schatten:P");
  cmd->add_option("--report", o.report_path, "Write the JSON report here");
  cmd->add_flag("--timing", o.timing, "Record wall time in the report");
  cmd->add_flag("--json", o.print_json, "Print the JSON report instead of a summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator means, positive maps and their inequalities"};
  app.set_version_flag("--version", std::string(lw_version()));
  app.require_subcommand(1);

  Options opts;
  auto* verify = app.add_subcommand("verify", "Randomized certificate suite");
  auto* hunt = app.add_subcommand("hunt", "Counterexample search, optionally with scaled constants");
  auto* probe = app.add_subcommand("probe", "Tightness probe: maximal observed ratio per parameter cell");
  auto* scalar = app.add_subcommand("scalarcheck", "Scalar kernel and constant invariants");
  for (auto* cmd : {verify, hunt, probe, scalar}) add_suite_flags(cmd, opts);
  hunt->add_option("--override-constant", opts.override_constant, "Multiplier applied to every constant");
  probe->add_option("--steps", opts.probe_steps, "Hill-climbing steps per candidate");

  auto* re = app.add_subcommand("recheck", "Re-evaluate a stored instance of a report");
  std::string report_path;
  std::size_t index = 0;
  re->add_option("report", report_path, "Report JSON")->required();
  re->add_option("index", index, "Instance index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (re->parsed()) return recheck(report_path, index);
    for (auto* cmd : {verify, hunt, probe, scalar}) {
      if (cmd->parsed()) return run(cmd->get_name(), opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
