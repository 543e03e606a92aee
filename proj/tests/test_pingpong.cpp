// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "maskitlab/pingpong.hpp"
#include "test_support.hpp"

using namespace maskit;
using testing_support::load;

namespace {

const ConditionReport& cond(const VerificationReport& r, const std::string& id) {
  const ConditionReport* c = r.find(id);
  if (!c) throw std::runtime_error("missing condition " + id);
  return *c;
}

bool certified(Verdict v) { return v == Verdict::Certified || v == Verdict::CertifiedAllLengths; }

}  // namespace

TEST(Verify, DihedralCertifies) {
  const VerificationReport r = verify(load("dihedral.json"));
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_TRUE(r.min_margin().has_value());
  EXPECT_GT(*r.min_margin(), 0.0);
  // u B1 = {|z| >= 2} sits inside B2 = {|z| >= 1}; v B2 = {|z| <= 1/16} inside B1.
  const ConditionReport& c2 = cond(r, "2");
  EXPECT_EQ(c2.verdict, Verdict::CertifiedAllLengths);
  EXPECT_NEAR(*c2.margin, 0.6435011087932844, 1e-9);
  for (const char* id : {"3", "prop_i", "prop_ii", "prop_iii"}) EXPECT_TRUE(cond(r, id).empirical) << id;
  EXPECT_GE(r.discreteness_eta, 1e-3);
  EXPECT_STREQ(verdict_name(Verdict::Certified), "certified_to_depth");
}

TEST(Verify, HnnCertifies) {
  const VerificationReport r = verify(load("order_two_hnn.json"));
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_TRUE(r.min_margin().has_value());
  EXPECT_GT(*r.min_margin(), 0.0);
  for (const auto& c : r.conditions) EXPECT_TRUE(certified(c.verdict)) << c.id << ": " << c.note;
  EXPECT_GE(r.discreteness_eta, 1e-3);
  ASSERT_TRUE(cond(r, "1").margin.has_value());
  EXPECT_GT(*cond(r, "1").margin, 0.5);
}

TEST(Verify, InflatedB1FailsAtU) {
  const VerificationReport r = verify(load("mutated/dihedral_inflated_b1.json"));
  EXPECT_EQ(r.exit_code(), 2);
  const ConditionReport& c2 = cond(r, "2");
  EXPECT_EQ(c2.verdict, Verdict::Failed);
  ASSERT_TRUE(c2.witness.has_value());
  EXPECT_EQ(word_to_string(*c2.witness), "u");
}

TEST(Verify, SwappedSetsFail) {
  const VerificationReport r = verify(load("mutated/dihedral_swapped.json"));
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_LT(*cond(r, "2").margin, 0.0);
}

TEST(Verify, WrongStableLetterFailsAtF) {
  const VerificationReport r = verify(load("mutated/hnn_wrong_f.json"));
  EXPECT_EQ(r.exit_code(), 2);
  const ConditionReport& c2 = cond(r, "2");
  EXPECT_EQ(c2.verdict, Verdict::Failed);
  ASSERT_TRUE(c2.witness.has_value());
  EXPECT_EQ(word_to_string(*c2.witness), "f");
}

TEST(Verify, ExitCodesFromVerdicts) {
  VerificationReport r;
  r.conditions.push_back({});
  EXPECT_EQ(r.exit_code(), 0);
  r.conditions.back().verdict = Verdict::NotProved;
  EXPECT_EQ(r.exit_code(), 3);
  r.conditions.push_back({});
  r.conditions.back().verdict = Verdict::Failed;
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Track, EveryDihedralFormLandsInPredictedSet) {
  const GroupConfig cfg = load("dihedral.json");
  const auto& alg = cfg.afp->algebra;
  for (const AfpForm& w : enumerate_afp_forms(alg, 6)) {
    if (w.length() == 0) continue;
    const auto [first, last] = alg.form_type(w);
    const TrackResult t = apply_form_track(cfg, w, last);
    EXPECT_EQ(t.final_target, "Int(B" + std::to_string(3 - first) + ")");
    EXPECT_GT(region_subset_interior(t.final_region, cfg.afp->region(3 - first)).margin, 0.0);
  }
  const AfpForm u = alg.from_word(parse_word_text("u"));
  EXPECT_THROW(apply_form_track(cfg, u, 2), Error);
}

TEST(Track, EveryHnnFormLandsInPredictedSet) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const auto& H = *cfg.hnn;
  for (const HnnNode& node : enumerate_hnn_forms(H.algebra, 6)) {
    if (node.form.is_identity()) continue;
    const TrackResult t = apply_form_track(cfg, node.form, node.type);
    const int s = node.form.first_sign();
    if (s != 0) {
      EXPECT_EQ(t.final_target, s > 0 ? "Int(B1)" : "Int(B-1)");
      EXPECT_GT(region_subset_interior(t.final_region, Region(H.cap(s))).margin, 0.0);
    } else {
      EXPECT_EQ(t.final_target, "A");
      for (const Cap& c : t.final_region.caps) {
        EXPECT_GT(cap_separation(c, H.cap(1)), 0.0);
        EXPECT_GT(cap_separation(c, H.cap(-1)), 0.0);
      }
    }
  }
}

TEST(Track, WrongStableLetterStillNests) {
  const GroupConfig cfg = load("mutated/hnn_wrong_f.json");
  for (const HnnNode& n : enumerate_hnn_forms(cfg.hnn->algebra, 3)) {
    if (n.form.length() > 0) {
      EXPECT_NO_THROW(apply_form_track(cfg, n.form, n.type));
    }
  }
}

TEST(Track, SwappedSetsBreakNesting) {
  const GroupConfig cfg = load("mutated/dihedral_swapped.json");
  int violations = 0;
  for (const AfpForm& w : enumerate_afp_forms(cfg.afp->algebra, 3)) {
    if (w.length() == 0) continue;
    try {
      apply_form_track(cfg, w, w.syllables.back().factor);
    } catch (const NestingViolation&) {
      ++violations;
    }
  }
  EXPECT_GT(violations, 0);
}

TEST(Interactive, DihedralPairFromInteriors) {
  const GroupConfig cfg = load("dihedral.json");
  const VerificationReport r = check_interactive_pair(cfg, cfg.afp->region(1), cfg.afp->region(2));
  EXPECT_EQ(r.exit_code(), 0);
  const VerificationReport bad =
      check_interactive_pair(cfg, Region(Cap::from_circle(0, 0.5, true)), Region(Cap::from_circle(0, 3, false)));
  EXPECT_EQ(bad.exit_code(), 2);
  EXPECT_EQ(word_to_string(*cond(bad, "pair").witness), "u");
}

TEST(Interactive, HnnTripleFromBSets) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const auto& H = *cfg.hnn;
  const VerificationReport r = check_interactive_triple(cfg, H.cap(1), H.cap(-1), H.cap(1), H.cap(-1));
  for (const auto& c : r.conditions) EXPECT_TRUE(certified(c.verdict)) << c.id << ": " << c.note;
  const GroupConfig wrong = load("mutated/hnn_wrong_f.json");
  const auto& W = *wrong.hnn;
  const VerificationReport w = check_interactive_triple(wrong, W.cap(1), W.cap(-1), W.cap(1), W.cap(-1));
  EXPECT_EQ(cond(w, "3").verdict, Verdict::Failed);
}

TEST(Invariance, HnnDeskChecksPass) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const InvarianceReport p = check_precise_invariance(cfg, 6);
  EXPECT_TRUE(p.ok) << p.first_failure;
  EXPECT_GT(p.pairs_checked, 0u);
  const InvarianceReport b = check_boundary_invariance(cfg, 6);
  EXPECT_TRUE(b.ok) << b.first_failure;
  EXPECT_GT(b.boundary_checked, 0u);
}

TEST(Compact, DihedralAndHnnCompactsSeparateFromAnchor) {
  const GroupConfig d = load("dihedral.json");
  for (int side : {1, 2}) {
    const NestingCompact k = search_nesting_compact(d, side, d.depth, d.j_bound);
    EXPECT_FALSE(k.empty);
    EXPECT_GT(k.margin, 0.0);
    for (const auto& e : k.table) EXPECT_GE(cap_subset(e.cap, k.k), -1e-12);
  }
  const GroupConfig h = load("order_two_hnn.json");
  for (int side : {1, -1}) {
    const NestingCompact k = search_nesting_compact(h, side, h.depth, h.j_bound);
    EXPECT_GT(k.margin, 0.0);
    EXPECT_GT(cap_separation(k.k, h.hnn->cap(side)), 0.0);
    for (const auto& e : k.table) EXPECT_GE(cap_subset(e.cap, k.k), -1e-12);
  }
}

TEST(Compact, EnclosingCapContainsInputs) {
  const std::vector<Cap> caps{Cap::from_circle({1, 0}, 0.2, true), Cap::from_circle({-1, 0}, 0.2, true),
                              Cap::from_circle({0, 1}, 0.1, true)};
  const Cap k = enclosing_cap(caps, {Vec3{0, 0, -1}});
  for (const Cap& c : caps) EXPECT_GE(cap_subset(c, k), -1e-12);
}

TEST(LimitSets, FactorLimitSetsOfFiniteGroupsAreEmpty) {
  const GroupConfig d = load("dihedral.json");
  EXPECT_TRUE(approximate_limit_set(d.afp->algebra.factor(1)).empty());
  EXPECT_TRUE(approximate_limit_set(d.afp->algebra.j()).empty());
  FactorGroup par("P", {{"t", Moebius::translation({1, 0})}});
  par.build_catalog(4);
  const auto pts = approximate_limit_set(par);
  ASSERT_FALSE(pts.empty());
  double best = 2.0;
  for (const auto& p : pts) best = std::min(best, chordal_distance(p, SpherePoint::infinity()));
  EXPECT_LT(best, 1e-9);
}
