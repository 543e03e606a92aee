// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <json.hpp>

#include <memory>
#include <sstream>
#include <string>

#include "maskitlab/maskitlab.h"
#include "test_support.hpp"

using nlohmann::json;
using testing_support::config_path;

namespace {

using ConfigPtr = std::unique_ptr<mk_config, decltype(&mk_config_free)>;

ConfigPtr open(const std::string& name) {
  mk_config* raw = nullptr;
  const mk_status s = mk_config_load_file(config_path(name).c_str(), &raw);
  EXPECT_EQ(s, MK_OK) << mk_last_error();
  return ConfigPtr(raw, &mk_config_free);
}

std::string take(char* p) {
  std::string s = p ? p : "";
  mk_free(p);
  return s;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_NE(std::string(mk_version()), "");
  EXPECT_STREQ(mk_status_name(MK_OK), "ok");
  EXPECT_STREQ(mk_status_name(MK_ERR_OUTSIDE_T0), "OutsideT0");
}

TEST(CApi, LoadErrorsCarryMessages) {
  mk_config* raw = nullptr;
  EXPECT_EQ(mk_config_load_file("/nonexistent/x.json", &raw), MK_ERR_IO);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(std::string(mk_last_error()), "");
  EXPECT_EQ(mk_config_load_string("{\"mode\": 3}", &raw), MK_ERR_CONFIG);
  EXPECT_EQ(mk_config_load_string(nullptr, &raw), MK_ERR_USAGE);
}

TEST(CApi, VerifyReportShape) {
  auto cfg = open("dihedral.json");
  ASSERT_TRUE(cfg);
  EXPECT_EQ(mk_config_is_amalgam(cfg.get()), 1);
  EXPECT_EQ(mk_config_depth(cfg.get()), 6);
  char* text = nullptr;
  int exit_code = -1;
  ASSERT_EQ(mk_verify(cfg.get(), &text, &exit_code), MK_OK);
  const json r = json::parse(take(text));
  EXPECT_EQ(exit_code, 0);
  EXPECT_EQ(r["exit_code"], 0);
  EXPECT_EQ(r["mode"], "afp");
  EXPECT_GT(r["min_margin"].get<double>(), 0.0);
  ASSERT_TRUE(r["conditions"].is_array());
  EXPECT_EQ(r["conditions"][0]["id"], "1");
}

TEST(CApi, MutatedVerifyNamesWitness) {
  auto cfg = open("mutated/hnn_wrong_f.json");
  char* text = nullptr;
  int exit_code = -1;
  ASSERT_EQ(mk_verify(cfg.get(), &text, &exit_code), MK_OK);
  EXPECT_EQ(exit_code, 2);
  const json r = json::parse(take(text));
  bool found = false;
  for (const auto& c : r["conditions"]) {
    if (c["id"] == "2") {
      EXPECT_EQ(c["verdict"], "failed");
      EXPECT_EQ(c["witness"], "f");
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(CApi, OverrideWarnings) {
  auto cfg = open("dihedral.json");
  ASSERT_EQ(mk_config_override(cfg.get(), 3, -1.0), MK_OK);
  EXPECT_EQ(mk_config_depth(cfg.get()), 3);
  char* w = nullptr;
  ASSERT_EQ(mk_config_warnings(cfg.get(), &w), MK_OK);
  EXPECT_EQ(json::parse(take(w)).size(), 1u);
}

TEST(CApi, EnumerateAndCoverLines) {
  auto cfg = open("order_two_hnn.json");
  char* text = nullptr;
  ASSERT_EQ(mk_enumerate(cfg.get(), 2, &text), MK_OK);
  std::istringstream in(take(text));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    EXPECT_TRUE(j.contains("form"));
    EXPECT_TRUE(j.contains("matrix"));
    ++n;
  }
  // 4 + 12 + 36 typed forms of length <= 2.
  EXPECT_EQ(n, 52u);
  ASSERT_EQ(mk_cover(cfg.get(), 1, &text), MK_OK);
  std::istringstream cov(take(text));
  n = 0;
  while (std::getline(cov, line)) ++n;
  EXPECT_EQ(n, 16u);
  ASSERT_EQ(mk_cover_stats(cfg.get(), 4, &text), MK_OK);
  EXPECT_TRUE(json::parse(take(text)).is_object());
}

TEST(CApi, CodeClassifyProbe) {
  auto cfg = open("dihedral.json");
  char* text = nullptr;
  ASSERT_EQ(mk_code(cfg.get(), "0,0", 4, 1, &text), MK_OK);
  const json c = json::parse(take(text));
  EXPECT_EQ(c["status"], "depth_reached");
  ASSERT_EQ(c["syllables"].size(), 4u);
  EXPECT_EQ(c["syllables"][0], "v");
  EXPECT_TRUE(c.contains("conical"));
  EXPECT_EQ(mk_code(cfg.get(), "0.7,0", 4, 0, &text), MK_ERR_OUTSIDE_T0);
  EXPECT_EQ(mk_code(cfg.get(), "nonsense", 4, 0, &text), MK_ERR_USAGE);

  ASSERT_EQ(mk_classify(cfg.get(), "u v", &text), MK_OK);
  const json v = json::parse(take(text));
  EXPECT_EQ(v["agreement"], true);

  ASSERT_EQ(mk_probe(cfg.get(), "u v", 10, &text), MK_OK);
  const json p = json::parse(take(text));
  EXPECT_EQ(p["count"], 10);
  EXPECT_EQ(mk_probe(cfg.get(), "u", 10, &text), MK_ERR_PRECONDITION);
}

TEST(CApi, RenderIsDeterministic) {
  auto cfg = open("order_two_hnn.json");
  unsigned char* a = nullptr;
  unsigned char* b = nullptr;
  std::size_t na = 0, nb = 0;
  const double window[4] = {-6, -6, 6, 6};
  ASSERT_EQ(mk_render(cfg.get(), 4, 40, 30, window, &a, &na), MK_OK);
  ASSERT_EQ(mk_render(cfg.get(), 4, 40, 30, window, &b, &nb), MK_OK);
  ASSERT_EQ(na, nb);
  EXPECT_EQ(std::string(reinterpret_cast<char*>(a), na), std::string(reinterpret_cast<char*>(b), nb));
  mk_free(a);
  mk_free(b);
  EXPECT_EQ(mk_render(cfg.get(), 4, 0, 30, nullptr, &a, &na), MK_ERR_USAGE);
}
