#include "loewner/error.hpp"
#include "loewner/instances.hpp"
#include "loewner/report.hpp"
#include "loewner/suite.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

using namespace loewner;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("loewner_test_" + name);
}

SuiteConfig small_config() {
  SuiteConfig c;
  c.inequalities = {"all"};
  c.dims = {2, 3};
  c.trials = 5;
  return c;
}

void expect_same_instance(const InstanceRecord& x, const InstanceRecord& y) {
  EXPECT_EQ(x.inequality_id, y.inequality_id);
  EXPECT_EQ(x.trial, y.trial);
  EXPECT_EQ(x.pinned, y.pinned);
  EXPECT_EQ(x.params.map, y.params.map);
  EXPECT_EQ(x.params.seed, y.params.seed);
  EXPECT_EQ(x.params.s, y.params.s);
  EXPECT_EQ(x.params.m, y.params.m);
  EXPECT_EQ(x.a, y.a);
  EXPECT_EQ(x.b, y.b);
  EXPECT_EQ(x.slack, y.slack);
  EXPECT_EQ(x.holds, y.holds);
}

}  // namespace

TEST(Resolve, Selectors) {
  EXPECT_EQ(resolve_inequalities("all").size(), 21u);
  EXPECT_EQ(resolve_inequalities("all-non-audit").size(), 17u);
  EXPECT_EQ(resolve_inequalities("midpoint,ando,midpoint"), (std::vector<std::string>{"midpoint", "ando"}));
  EXPECT_THROW(resolve_inequalities("midpoint,bogus"), ParseError);
  EXPECT_THROW(resolve_inequalities(""), InvalidArgument);
}

TEST(MatrixIo, RoundTripIsBitExact) {
  const auto m = random_spd(4, 0.001, 1000, 3);
  const auto path = temp_path("matrix.json");
  save_matrix(m, path);
  const auto back = load_matrix(path);
  EXPECT_EQ(back, m);
  const auto rm = m.row_major();
  const auto rb = back.row_major();
  EXPECT_EQ(std::memcmp(rm.data(), rb.data(), rm.size() * sizeof(double)), 0);
  std::filesystem::remove(path);
}

TEST(MatrixIo, ErrorsNameTheField) {
  const auto field_error = [](const char* text, const char* needle) {
    try {
      matrix_from_json(text);
      ADD_FAILURE() << "no error for " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  field_error(R"({"dim": "two", "data": [1, 0, 0, 1]})", "'dim'");
  field_error(R"({"dim": 0, "data": []})", "'dim'");
  field_error(R"({"dim": 2, "data": [1, 0, 0]})", "'data'");
  field_error(R"({"dim": 2})", "'data'");
  field_error(R"({"dim": 2, "data": [1, 5, 0, 1]})", "not symmetric");
  field_error("{\"dim\": 2,", "malformed");
  EXPECT_THROW(load_matrix(temp_path("does_not_exist.json")), IoError);
}

TEST(Config, JsonRoundTrip) {
  SuiteConfig c = small_config();
  c.inequalities = resolve_inequalities("all");
  c.s = 0.5;
  c.t = 2;
  c.taus = {"geometric"};
  c.maps = {"pinching:1,1"};
  c.constant_override = 0.8;
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  EXPECT_THROW(config_from_json(R"({"st_range": [1]})"), ParseError);
}

TEST(Suite, ReportInvariantsAndRoundTrip) {
  const auto r = run_suite(small_config());
  ASSERT_EQ(r.inequalities.size(), 21u);
  for (const auto& s : r.inequalities) {
    EXPECT_EQ(s.holds_count + s.violations, s.trials) << s.id;
    if (!s.audit) {
      EXPECT_EQ(s.violations, 0) << s.id;
      EXPECT_EQ(s.errors + s.refused, 0) << s.id << (s.error_messages.empty() ? "" : s.error_messages[0]);
    }
    EXPECT_LE(s.violating_instances.size(), 11u);
  }
  EXPECT_TRUE(r.all_non_audit_hold);
  EXPECT_EQ(r.audit_pinned.size(), 4u);
  EXPECT_FALSE(r.wall_time_s.has_value());

  const auto text = report_to_json(r);
  EXPECT_NE(text.find("\"loewner_lab_report\""), std::string::npos);
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
  const auto back = report_from_json(text);
  EXPECT_EQ(report_to_json(back), text);
  EXPECT_EQ(back.config, r.config);
  ASSERT_EQ(back.inequalities.size(), r.inequalities.size());
  for (std::size_t i = 0; i < r.inequalities.size(); ++i) {
    EXPECT_EQ(back.inequalities[i].min_slack, r.inequalities[i].min_slack);
    EXPECT_EQ(back.inequalities[i].max_ratio, r.inequalities[i].max_ratio);
    ASSERT_EQ(back.inequalities[i].violating_instances.size(), r.inequalities[i].violating_instances.size());
    for (std::size_t k = 0; k < r.inequalities[i].violating_instances.size(); ++k) {
      expect_same_instance(back.inequalities[i].violating_instances[k], r.inequalities[i].violating_instances[k]);
    }
  }
}

TEST(Suite, DeterministicAndOrderIndependent) {
  auto c = small_config();
  c.inequalities = {"midpoint", "kantorovich-f"};
  const auto a = report_to_json(run_suite(c));
  EXPECT_EQ(a, report_to_json(run_suite(c)));
  // Reordering inequalities does not change per-inequality results.
  auto c2 = c;
  c2.inequalities = {"kantorovich-f", "midpoint"};
  const auto r1 = run_suite(c);
  const auto r2 = run_suite(c2);
  EXPECT_EQ(r1.inequalities[0].min_slack, r2.inequalities[1].min_slack);
  EXPECT_EQ(r1.inequalities[1].max_ratio, r2.inequalities[0].max_ratio);
  auto c3 = c;
  c3.seed = 8;
  EXPECT_NE(a, report_to_json(run_suite(c3)));
}

TEST(Suite, ScalarDimensionHolds) {
  SuiteConfig c;
  c.inequalities = {"all-non-audit"};
  c.dims = {1};
  c.trials = 3;
  const auto r = run_suite(c);
  for (const auto& s : r.inequalities) EXPECT_EQ(s.holds_count, s.trials) << s.id;
  EXPECT_TRUE(r.all_non_audit_hold);
}

TEST(Suite, GrussCoverageIsUnitalOnly) {
  SuiteConfig c;
  c.inequalities = {"gruss-f", "gruss-g"};
  c.dims = {3};
  c.trials = 60;
  const auto r = run_suite(c);
  std::vector<std::string> unital;
  for (const auto& e : default_map_pool(3))
    if (e.unital) unital.push_back(e.label);
  std::sort(unital.begin(), unital.end());
  for (const auto& s : r.inequalities) EXPECT_EQ(s.coverage.maps, unital);
}

TEST(Suite, InvalidConfig) {
  auto c = small_config();
  c.trials = 0;
  EXPECT_THROW(run_suite(c), InvalidArgument);
  c = small_config();
  c.dims = {17};
  EXPECT_THROW(run_suite(c), InvalidArgument);
  c = small_config();
  c.s = 2;
  c.t = 1;
  EXPECT_THROW(run_suite(c), InvalidArgument);
  c = small_config();
  c.command = "dance";
  EXPECT_THROW(run_command(c), InvalidArgument);
}

TEST(Hunt, MultiplierOneFindsNothing) {
  SuiteConfig c;
  c.inequalities = {"main-monotone"};
  c.dims = {2, 4};
  c.trials = 50;
  c.constant_override = 1.0;
  const auto r = hunt_counterexamples(c);
  EXPECT_EQ(r.inequalities[0].violations, 0);
}

TEST(Hunt, PinnedAuditInstanceAndRecheck) {
  SuiteConfig c;
  c.inequalities = {"norm-ratio-tau"};
  c.dims = {2};
  c.trials = 10;
  c.taus = {"arithmetic"};
  c.norms = {"op"};
  const auto r = hunt_counterexamples(c);
  EXPECT_TRUE(r.all_non_audit_hold);
  const auto& s = r.inequalities[0];
  ASSERT_FALSE(s.violating_instances.empty());
  const auto& pinned = s.violating_instances.back();
  EXPECT_TRUE(pinned.pinned);
  EXPECT_NEAR(pinned.ratio, 1.7, 1e-12);

  const auto path = temp_path("hunt.json");
  write_report(r, path);
  const auto loaded = load_report(path);
  const auto all = recheckable_instances(loaded);
  ASSERT_FALSE(all.empty());
  const auto cert = recheck(loaded, all.size() - 1);
  EXPECT_FALSE(cert.holds);
  EXPECT_NEAR(std::get<double>(cert.lhs), 3.4, 1e-12);
  EXPECT_THROW(recheck(loaded, all.size()), InvalidArgument);
  std::filesystem::remove(path);
}

TEST(Hunt, ScaledConstantViolationsRecheck) {
  SuiteConfig c;
  c.inequalities = {"polya-szego"};
  c.dims = {2, 3};
  c.trials = 100;
  c.m = 1;
  c.big_m = 4;
  c.constant_override = 0.8;
  const auto r = hunt_counterexamples(c);
  ASSERT_GT(r.inequalities[0].violations, 0);
  const auto back = report_from_json(report_to_json(r));
  for (std::size_t i = 0; i < recheckable_instances(back).size(); ++i) {
    const auto cert = recheck(back, i);
    const auto& inst = recheckable_instances(back)[i];
    EXPECT_EQ(cert.holds, inst.holds);
    EXPECT_EQ(cert.slack, inst.slack);
  }
}

TEST(Probe, DegenerateSandwichHasRatioOne) {
  SuiteConfig c;
  c.inequalities = {"main-monotone"};
  c.dims = {2, 3};
  c.trials = 30;
  c.probe_steps = 20;
  c.s = 1;
  c.t = 1;
  const auto r = probe_tightness(c);
  ASSERT_EQ(r.probe.size(), 1u);
  EXPECT_NEAR(r.probe[0].max_ratio, 1.0, 1e-8);
  EXPECT_TRUE(r.all_non_audit_hold);
}

TEST(Probe, MidpointReachesEquality) {
  SuiteConfig c;
  c.inequalities = {"midpoint"};
  c.dims = {2};
  c.trials = 100;
  c.s = 0.25;
  c.t = 4;
  const auto r = probe_tightness(c);
  ASSERT_EQ(r.probe.size(), 1u);
  EXPECT_GE(r.probe[0].max_tightness, 0.99);
  ASSERT_TRUE(r.probe[0].best.has_value());
  EXPECT_TRUE(r.probe[0].best->holds);
}

TEST(ScalarCheck, AllPass) {
  const auto r = run_scalarcheck(SuiteConfig{});
  EXPECT_TRUE(r.all_non_audit_hold);
  EXPECT_GE(r.scalar_checks.size(), 8u);
  for (const auto& it : r.scalar_checks) EXPECT_TRUE(it.passed) << it.name << ": " << it.detail;
}
