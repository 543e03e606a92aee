// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "maskitlab/limitset.hpp"
#include "test_support.hpp"

using namespace maskit;
using testing_support::load;

namespace {

const Cap& only_cap(const CoverNode& n) { return n.region.caps.at(0); }

std::vector<std::string> syllables(const CodingSequence& c) {
  std::vector<std::string> out;
  for (const auto& s : c.steps) out.push_back(word_to_string(s.syllable));
  return out;
}

}  // namespace

TEST(Cover, DihedralTranslatesAreConcentricDisks) {
  const GroupConfig cfg = load("dihedral.json");
  const DiskCover cover = build_cover(cfg, 3);
  ASSERT_EQ(cover.depth(), 3);
  ASSERT_EQ(cover.levels[0].size(), 2u);
  ASSERT_EQ(cover.levels[1].size(), 2u);
  // u B1 = {|z| >= 2}, v B2 = {|z| <= 1/16}, v u B1 = {|z| <= 1/32}, u v B2 = {|z| >= 16}.
  const std::vector<std::pair<double, bool>> expect1{{2.0, false}, {1.0 / 16, true}};
  const std::vector<std::pair<double, bool>> expect2{{1.0 / 32, true}, {16.0, false}};
  for (int lv : {1, 2}) {
    const auto& expect = lv == 1 ? expect1 : expect2;
    std::vector<std::pair<double, bool>> got;
    for (const auto& node : cover.levels[static_cast<std::size_t>(lv)]) {
      const auto circle = only_cap(node).plane_circle();
      ASSERT_TRUE(circle.has_value());
      EXPECT_NEAR(std::abs(circle->center), 0.0, 1e-12);
      got.push_back({circle->radius, circle->inside});
    }
    std::sort(got.begin(), got.end());
    auto sorted = expect;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_NEAR(got[k].first, sorted[k].first, 1e-9);
      EXPECT_EQ(got[k].second, sorted[k].second);
    }
  }
  for (std::size_t lv = 1; lv < cover.levels.size(); ++lv) {
    for (const auto& node : cover.levels[lv]) {
      const auto& parent = cover.levels[lv - 1].at(node.parent);
      EXPECT_GT(region_subset_interior(node.region, parent.region).margin, 0.0);
    }
  }
  EXPECT_EQ(word_to_string(cover.form_word(cfg, 2, 0)).size() > 0, true);
}

TEST(Cover, HnnLevelCounts) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const DiskCover cover = build_cover(cfg, 3);
  EXPECT_EQ(cover.levels[0].size(), 4u);
  EXPECT_EQ(cover.levels[1].size(), 12u);
  EXPECT_EQ(cover.levels[2].size(), 36u);
  for (std::size_t lv = 1; lv < cover.levels.size(); ++lv) {
    for (const auto& node : cover.levels[lv]) {
      const auto& parent = cover.levels[lv - 1].at(node.parent);
      EXPECT_GE(region_subset_interior(node.region, parent.region).margin, -1e-9);
      // The node's map sends the labelled B-set to the node's region.
      EXPECT_TRUE(regions_equal(map_region(node.h, Region(cfg.hnn->cap(node.label))), node.region));
    }
  }
}

TEST(Cover, BudgetIsEnforced) {
  GroupConfig cfg = load("order_two_hnn.json");
  cfg.max_caps = 100;
  try {
    build_cover(cfg, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EnumerationBudget);
  }
}

TEST(Cover, ContractionIsMonotone) {
  for (const char* name : {"dihedral.json", "order_two_hnn.json"}) {
    const GroupConfig cfg = load(name);
    const ContractionStats st = contraction_stats(build_cover(cfg, 8));
    ASSERT_EQ(st.levels.size(), 8u);
    for (std::size_t k = 1; k < st.levels.size(); ++k) {
      EXPECT_LE(st.levels[k].max_diameter, st.levels[k - 1].max_diameter + 1e-15) << name;
    }
    EXPECT_LT(st.worst_ratio_from_2, 1.0) << name;
    EXPECT_LT(st.levels.back().max_diameter, 1e-2) << name;
  }
}

TEST(Coding, OriginAlternatesVU) {
  const GroupConfig cfg = load("dihedral.json");
  const CodingSequence c = code_point(cfg, SpherePoint(), 8);
  EXPECT_TRUE(c.depth_reached());
  EXPECT_EQ(c.base_label, 1);
  const auto s = syllables(c);
  ASSERT_EQ(s.size(), 8u);
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(s[k], k % 2 == 0 ? "v" : "u");
  double prev = 3.0;
  for (const auto& step : c.steps) {
    EXPECT_GT(step.margin, 0.0);
    EXPECT_LT(step.diameter, prev);
    prev = step.diameter;
  }
}

TEST(Coding, InfinityAlternatesUV) {
  const GroupConfig cfg = load("dihedral.json");
  const CodingSequence c = code_point(cfg, SpherePoint::infinity(), 5);
  EXPECT_EQ(c.base_label, 2);
  const auto s = syllables(c);
  ASSERT_EQ(s.size(), 5u);
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(s[k], k % 2 == 0 ? "u" : "v");
}

TEST(Coding, PointOffTheLimitSetEscapes) {
  const GroupConfig cfg = load("dihedral.json");
  const CodingSequence c = code_point(cfg, SpherePoint::from_complex({0.4, 0}), 5);
  EXPECT_TRUE(c.escaped);
  EXPECT_TRUE(c.steps.empty());
  try {
    code_point(cfg, SpherePoint::from_complex({0.7, 0}), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutsideT0);
  }
}

TEST(Coding, AttractorOfFRepeatsF) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const auto& alg = cfg.hnn->algebra;
  const SpherePoint x = fixed_points(alg.f()).attracting();
  const CodingSequence c = code_point(cfg, x, 8);
  EXPECT_TRUE(c.depth_reached());
  EXPECT_EQ(c.base_label, 1);
  for (const auto& s : syllables(c)) EXPECT_EQ(s, "f");
  // A conjugate's attractor codes through the conjugating coset first.
  const Moebius afa = alg.base().evaluate({{"a", 1}}) * alg.f() * alg.base().evaluate({{"a", -1}});
  const CodingSequence d = code_point(cfg, fixed_points(afa).attracting(), 6);
  EXPECT_EQ(word_to_string(d.base), "a");
  for (const auto& s : syllables(d)) EXPECT_EQ(s, "f");
}

TEST(Coding, ShallowCodingIsPrefixOfDeeper) {
  for (const char* name : {"dihedral.json", "order_two_hnn.json"}) {
    const GroupConfig cfg = load(name);
    const DiskCover cover = build_cover(cfg, 6);
    // Points of the cloud lie in the limit set; their codings must be stable.
    const auto cloud = limit_point_cloud(cfg, cover);
    std::size_t tested = 0;
    for (std::size_t k = 0; k < cloud.size() && tested < 40; k += std::max<std::size_t>(1, cloud.size() / 40)) {
      const CodingSequence deep = code_point(cfg, cloud[k], 6);
      const CodingSequence shallow = code_point(cfg, cloud[k], 3);
      ASSERT_LE(shallow.steps.size(), deep.steps.size());
      for (std::size_t s = 0; s < shallow.steps.size(); ++s) {
        EXPECT_EQ(shallow.steps[s].form, deep.steps[s].form) << name;
      }
      ++tested;
    }
    EXPECT_GT(tested, 0u);
  }
}

TEST(Conical, DihedralOriginHasWitness) {
  const GroupConfig cfg = load("dihedral.json");
  const CodingSequence c = code_point(cfg, SpherePoint(), 8);
  const ConicalWitness w = conical_witness(cfg, c, cfg.j_bound);
  EXPECT_GT(w.k_separation, 0.0);
  ASSERT_FALSE(w.steps.empty());
  for (const auto& s : w.steps) {
    EXPECT_GT(s.point_margin, 0.0);
    EXPECT_GT(s.set_margin, 0.0);
  }
}

TEST(Conical, HnnAttractorHasWitness) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const SpherePoint x = fixed_points(cfg.hnn->algebra.f()).attracting();
  const ConicalWitness w = conical_witness(cfg, code_point(cfg, x, 8), cfg.j_bound);
  ASSERT_FALSE(w.steps.empty());
  for (const auto& s : w.steps) {
    EXPECT_GE(s.point_margin, 0.0);
    EXPECT_GT(s.set_margin, 0.0);
  }
}

TEST(Conical, EscapedCodingIsRejected) {
  const GroupConfig cfg = load("dihedral.json");
  const CodingSequence c = code_point(cfg, SpherePoint::from_complex({0.4, 0}), 5);
  try {
    conical_witness(cfg, c, cfg.j_bound);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Precondition);
  }
}

TEST(Cloud, DihedralCloudIsTwoPoints) {
  const GroupConfig cfg = load("dihedral.json");
  for (const auto& p : limit_point_cloud(cfg, 10)) {
    const double d = std::min(chordal_distance(p, SpherePoint()), chordal_distance(p, SpherePoint::infinity()));
    EXPECT_LT(d, 1e-3);
  }
}

TEST(Cloud, HnnCloudStaysInLevelZero) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const DiskCover cover = build_cover(cfg, 5);
  const auto cloud = limit_point_cloud(cfg, cover);
  ASSERT_GT(cloud.size(), 100u);
  for (const auto& p : cloud) {
    double best = -10;
    for (const auto& node : cover.levels[0]) best = std::max(best, node.region.point_margin(p));
    EXPECT_GE(best, 0.0);
  }
}

TEST(Render, DeterministicP6) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const DiskCover cover = build_cover(cfg, 4);
  const auto cloud = limit_point_cloud(cfg, cover);
  ImageOptions opts;
  opts.width = 64;
  opts.height = 48;
  const std::string a = render_ppm(cover, cloud, opts);
  const std::string b = render_ppm(cover, cloud, opts);
  EXPECT_EQ(a, b);
  const std::string header = "P6\n64 48\n255\n";
  ASSERT_EQ(a.substr(0, header.size()), header);
  EXPECT_EQ(a.size(), header.size() + 64u * 48u * 3u);
  int black = 0, gray = 0;
  for (std::size_t k = header.size(); k < a.size(); k += 3) {
    const auto v = static_cast<unsigned char>(a[k]);
    black += v == 0;
    gray += v == 220;
  }
  EXPECT_GT(black, 0);
  EXPECT_GT(gray, 0);
}
