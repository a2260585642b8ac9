// Exercises the shared library through its C header only.
#include "loewner/loewner.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <string>

TEST(CApi, MatrixLifecycleAndMeans) {
  const double a_data[] = {1, 0, 0, 4};
  const double b_data[] = {4, 0, 0, 1};
  lw_matrix* a = nullptr;
  lw_matrix* b = nullptr;
  ASSERT_EQ(lw_matrix_create(2, a_data, &a), LW_OK);
  ASSERT_EQ(lw_matrix_create(2, b_data, &b), LW_OK);
  EXPECT_EQ(lw_matrix_dim(a), 2);
  lw_matrix* g = nullptr;
  ASSERT_EQ(lw_mean("geometric", a, b, &g), LW_OK);
  double out[4];
  ASSERT_EQ(lw_matrix_copy_data(g, out, 4), LW_OK);
  EXPECT_NEAR(out[0], 2.0, 1e-14);
  EXPECT_NEAR(out[1], 0.0, 1e-14);
  EXPECT_NEAR(out[3], 2.0, 1e-14);
  EXPECT_EQ(lw_matrix_copy_data(g, out, 3), LW_INVALID_ARGUMENT);

  lw_relation rel;
  ASSERT_EQ(lw_loewner_compare(a, b, -1.0, &rel), LW_OK);
  EXPECT_EQ(rel, LW_INCOMPARABLE);
  ASSERT_EQ(lw_loewner_compare(a, a, -1.0, &rel), LW_OK);
  EXPECT_EQ(rel, LW_EQ);

  double norm = 0;
  ASSERT_EQ(lw_ui_norm(a, "trace", &norm), LW_OK);
  EXPECT_DOUBLE_EQ(norm, 5.0);
  EXPECT_EQ(lw_ui_norm(a, "bogus", &norm), LW_PARSE);
  EXPECT_NE(std::string(lw_last_error()).find("bogus"), std::string::npos);

  double s = 0, t = 0;
  ASSERT_EQ(lw_estimate_sandwich(a, b, &s, &t), LW_OK);
  EXPECT_NEAR(s, 0.25, 1e-14);
  EXPECT_NEAR(t, 4.0, 1e-14);

  const std::string path = "capi_matrix.json";
  ASSERT_EQ(lw_matrix_save(g, path.c_str()), LW_OK);
  lw_matrix* loaded = nullptr;
  ASSERT_EQ(lw_matrix_load(path.c_str(), &loaded), LW_OK);
  double back[4];
  ASSERT_EQ(lw_matrix_copy_data(loaded, back, 4), LW_OK);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(back[i], out[i]);
  std::remove(path.c_str());

  const double bad[] = {1, 0, 0, -1};
  lw_matrix* neg = nullptr;
  ASSERT_EQ(lw_matrix_create(2, bad, &neg), LW_OK);
  lw_matrix* fail = nullptr;
  EXPECT_EQ(lw_mean("geometric", a, neg, &fail), LW_DOMAIN);
  EXPECT_EQ(fail, nullptr);
  EXPECT_EQ(lw_matrix_create(0, bad, &fail), LW_DIMENSION);
  EXPECT_EQ(lw_matrix_create(2, nullptr, &fail), LW_INVALID_ARGUMENT);
  EXPECT_EQ(lw_matrix_load("/nonexistent/x.json", &fail), LW_IO);

  for (auto* m : {a, b, g, loaded, neg}) lw_matrix_destroy(m);
}

TEST(CApi, RunReportAndRecheck) {
  lw_report* r = nullptr;
  const char* config = R"({"inequalities": "norm-ratio-tau,midpoint", "dims": [2], "trials": 5})";
  ASSERT_EQ(lw_run("verify", config, &r), LW_OK) << lw_last_error();
  EXPECT_EQ(lw_report_all_hold(r), 1);
  char* json = nullptr;
  ASSERT_EQ(lw_report_json(r, &json), LW_OK);
  EXPECT_NE(std::string(json).find("loewner_lab_report"), std::string::npos);
  lw_string_free(json);
  ASSERT_GE(lw_report_instance_count(r), 1u);
  char* cert = nullptr;
  int holds = -1, audit = -1;
  ASSERT_EQ(lw_recheck(r, 0, &cert, &holds, &audit), LW_OK) << lw_last_error();
  EXPECT_EQ(holds, 0);
  EXPECT_EQ(audit, 1);
  lw_string_free(cert);
  EXPECT_EQ(lw_recheck(r, 1000, &cert, &holds, &audit), LW_INVALID_ARGUMENT);

  const std::string path = "capi_report.json";
  ASSERT_EQ(lw_report_write(r, path.c_str()), LW_OK);
  lw_report* loaded = nullptr;
  ASSERT_EQ(lw_report_load(path.c_str(), &loaded), LW_OK);
  EXPECT_EQ(lw_report_instance_count(loaded), lw_report_instance_count(r));
  std::remove(path.c_str());
  lw_report_destroy(loaded);
  lw_report_destroy(r);

  EXPECT_EQ(lw_run("dance", nullptr, &r), LW_INVALID_ARGUMENT);
  EXPECT_EQ(lw_run("verify", "{not json", &r), LW_PARSE);
  EXPECT_STRNE(lw_version(), "");
}
