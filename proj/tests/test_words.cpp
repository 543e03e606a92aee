// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "maskitlab/config.hpp"
#include "maskitlab/error.hpp"
#include "maskitlab/words.hpp"
#include "rewriter.hpp"
#include "test_support.hpp"

using namespace maskit;
using testing_support::kAfpQuarterTurn;
using testing_support::kHnnQuarterTurn;
using testing_support::load;

namespace {

std::vector<std::string> alphabet(const GroupConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.is_afp()) {
    for (int i : {1, 2}) {
      for (const auto& [n, m] : cfg.afp->algebra.factor(i).generators()) out.push_back(n);
    }
  } else {
    for (const auto& [n, m] : cfg.hnn->algebra.base().generators()) out.push_back(n);
    out.push_back(cfg.hnn->algebra.stable_letter());
  }
  return out;
}

Moebius letters_product(const GroupConfig& cfg, const Word& w) {
  Moebius out;
  for (const auto& l : w) {
    Moebius g;
    if (cfg.is_afp()) {
      const auto& alg = cfg.afp->algebra;
      g = alg.factor(alg.factor_of(l.gen)).evaluate({{l.gen, 1}});
    } else if (l.gen == cfg.hnn->algebra.stable_letter()) {
      g = cfg.hnn->algebra.f();
    } else {
      g = cfg.hnn->algebra.base().evaluate({{l.gen, 1}});
    }
    for (int k = 0; k < std::abs(l.exp); ++k) out = out * (l.exp > 0 ? g : g.inverse());
  }
  return out;
}

// Returns the number of strings checked; every mismatch is a test failure.
std::size_t compare_with_oracle(const GroupConfig& cfg, int max_length) {
  const auto gens = alphabet(cfg);
  std::size_t checked = 0;
  const auto afp = cfg.is_afp() ? std::optional(oracle::afp_presentation(cfg)) : std::nullopt;
  const auto hnn = cfg.is_afp() ? std::nullopt : std::optional(oracle::hnn_presentation(cfg));
  for (int n = 0; n <= max_length; ++n) {
    for (const Word& w : oracle::all_strings(gens, n)) {
      const std::string diff = afp ? oracle::compare(cfg.afp->algebra, *afp, w)
                                   : oracle::compare(cfg.hnn->algebra, *hnn, w);
      EXPECT_EQ(diff, "");
      ++checked;
    }
  }
  return checked;
}

}  // namespace

TEST(WordText, PrintAndParseRoundTrip) {
  const Word w{{"u", 1}, {"v", -1}, {"f", 2}};
  EXPECT_EQ(word_to_string(w), "u v^-1 f^2");
  EXPECT_EQ(parse_word_text("u v^-1 f^2"), w);
  EXPECT_EQ(parse_word_text("u*v^-1*f^2"), w);
  EXPECT_EQ(word_to_string({}), "1");
  EXPECT_TRUE(parse_word_text("1").empty());
  EXPECT_TRUE(parse_word_text("").empty());
  EXPECT_THROW(parse_word_text("u^x"), Error);
}

TEST(WordText, FreeReduction) {
  EXPECT_EQ(free_reduce({{"u", 1}, {"u", 2}, {"v", 1}, {"v", -1}}), (Word{{"u", 3}}));
  EXPECT_TRUE(free_reduce({{"u", 1}, {"v", 1}, {"v", -1}, {"u", -1}}).empty());
  const Word w{{"a", 2}, {"f", -1}};
  EXPECT_TRUE(free_reduce(word_concat(w, word_inverse(w))).empty());
  EXPECT_EQ(word_length(word_power(w, 3)), 9);
}

TEST(FactorGroup, CatalogOfFiniteGroupCloses) {
  FactorGroup g("G", {{"r", Moebius({0, 1}, 0, 0, 1)}});
  g.build_catalog(6);
  EXPECT_EQ(g.catalog().size(), 4u);
  EXPECT_TRUE(g.catalog_closed());
  EXPECT_TRUE(is_identity(g.catalog().front().matrix));
  EXPECT_TRUE(g.find(Moebius({0, -1}, 0, 0, 1)).has_value());
  EXPECT_THROW(g.evaluate({{"q", 1}}), Error);
}

TEST(FactorGroup, InfiniteCatalogStaysOpen) {
  FactorGroup g("G", {{"t", Moebius::translation({1, 0})}});
  g.build_catalog(3);
  EXPECT_EQ(g.catalog().size(), 7u);
  EXPECT_FALSE(g.catalog_closed());
}

TEST(JOracle, KindsAndMembership) {
  const Moebius half = Moebius({0, 1}, 0, 0, {0, -1});  // z -> -z
  JOracle::Member m;
  m.words[0] = {{"r", 2}};
  m.matrix = half;
  const JOracle fin = JOracle::finite_list({m});
  EXPECT_EQ(fin.members().size(), 2u);
  EXPECT_TRUE(fin.contains(half));
  EXPECT_TRUE(fin.contains(Moebius::identity()));
  EXPECT_FALSE(fin.contains(Moebius::scaling({2, 0})));
  EXPECT_TRUE(JOracle::trivial().is_trivial());

  JOracle::Member t;
  t.words[0] = {{"t", 1}};
  t.matrix = Moebius::translation({1, 0});
  const JOracle cyc = JOracle::cyclic(t, 3);
  EXPECT_TRUE(cyc.contains(Moebius::translation({-3, 0})));
  EXPECT_FALSE(cyc.contains(Moebius::scaling({2, 0})));
  // r^2 has order two, so the listed powers are the whole subgroup.
  JOracle::Member r2;
  r2.words[0] = {{"r", 2}};
  r2.matrix = half;
  const JOracle order_two = JOracle::cyclic(r2, 4);
  EXPECT_EQ(order_two.members().size(), 2u);
  EXPECT_FALSE(order_two.contains(Moebius({0, 1}, 0, 0, 1)));
  try {
    cyc.contains(Moebius::translation({10, 0}));
    FAIL() << "overflow not reported";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OracleOverflow);
  }
}

TEST(AfpAlgebra, OracleAgreementShippedConfig) {
  EXPECT_GT(compare_with_oracle(load("dihedral.json"), 6), 5000u);
}

TEST(AfpAlgebra, OracleAgreementNontrivialJ) {
  EXPECT_GT(compare_with_oracle(load_config_string(kAfpQuarterTurn), 5), 9000u);
}

TEST(HnnAlgebra, OracleAgreementShippedConfig) {
  EXPECT_GT(compare_with_oracle(load("order_two_hnn.json"), 6), 5000u);
}

TEST(HnnAlgebra, OracleAgreementNontrivialJ) {
  EXPECT_GT(compare_with_oracle(load_config_string(kHnnQuarterTurn), 6), 5000u);
}

TEST(AfpAlgebra, ConcatIsAHomomorphism) {
  for (const char* text : {kAfpQuarterTurn}) {
    const GroupConfig cfg = load_config_string(text);
    const auto& alg = cfg.afp->algebra;
    std::mt19937_64 rng(11);
    const auto gens = alphabet(cfg);
    auto rand_word = [&] {
      Word w;
      const int n = static_cast<int>(rng() % 7);
      for (int k = 0; k < n; ++k) w.push_back({gens[rng() % gens.size()], rng() % 2 ? 1 : -1});
      return w;
    };
    for (int k = 0; k < 2000; ++k) {
      const Word a = rand_word(), b = rand_word();
      const AfpForm fa = alg.from_word(a), fb = alg.from_word(b);
      const AfpForm ab = alg.concat(fa, fb);
      EXPECT_LT(projective_distance(alg.evaluate(ab), letters_product(cfg, a) * letters_product(cfg, b)), 1e-9);
      EXPECT_EQ(alg.validate(ab), "");
      EXPECT_TRUE(alg.concat(fa, alg.invert(fa)).is_identity());
    }
  }
}

TEST(HnnAlgebra, ConcatIsAHomomorphism) {
  const GroupConfig cfg = load_config_string(kHnnQuarterTurn);
  const auto& alg = cfg.hnn->algebra;
  std::mt19937_64 rng(12);
  const auto gens = alphabet(cfg);
  auto rand_word = [&] {
    Word w;
    const int n = static_cast<int>(rng() % 7);
    for (int k = 0; k < n; ++k) w.push_back({gens[rng() % gens.size()], rng() % 2 ? 1 : -1});
    return w;
  };
  for (int k = 0; k < 2000; ++k) {
    const Word a = rand_word(), b = rand_word();
    const HnnForm ab = alg.concat(alg.from_word(a), alg.from_word(b));
    EXPECT_LT(projective_distance(alg.evaluate(ab), letters_product(cfg, a) * letters_product(cfg, b)), 1e-9);
    EXPECT_EQ(alg.validate(ab), "");
    const HnnForm fa = alg.from_word(a);
    EXPECT_TRUE(alg.concat(fa, alg.inverse(fa)).is_identity());
  }
}

TEST(AfpAlgebra, FormTypesAndCyclicReduction) {
  const GroupConfig cfg = load("dihedral.json");
  const auto& alg = cfg.afp->algebra;
  const AfpForm w = alg.from_word(parse_word_text("u v u"));
  EXPECT_EQ(alg.form_type(w), std::make_pair(1, 1));
  EXPECT_THROW(alg.form_type(AfpForm{}), Error);
  const AfpCyclicReduction cr = alg.cyclic_reduce(w);
  EXPECT_EQ(cr.core.length(), 1u);
  const Moebius rebuilt = alg.evaluate(cr.conjugator) * alg.evaluate(cr.core) * alg.evaluate(cr.conjugator).inverse();
  EXPECT_LT(projective_distance(rebuilt, alg.evaluate(w)), 1e-9);
  EXPECT_EQ(alg.cyclic_reduce(alg.from_word(parse_word_text("u v"))).core.length(), 2u);
  EXPECT_EQ(word_to_string(alg.to_word(w)), "u v u");
}

TEST(AfpAlgebra, EnumerationOfDihedralForms) {
  const GroupConfig cfg = load("dihedral.json");
  const auto forms = enumerate_afp_forms(cfg.afp->algebra, 6);
  ASSERT_EQ(forms.size(), 13u);
  EXPECT_TRUE(forms.front().is_identity());
  for (std::size_t k = 1; k < forms.size(); ++k) {
    EXPECT_EQ(forms[k].length(), (k + 1) / 2);
    EXPECT_EQ(cfg.afp->algebra.validate(forms[k]), "");
  }
}

TEST(AfpAlgebra, DerivedCosetRepsAvoidJ) {
  const GroupConfig cfg = load_config_string(kAfpQuarterTurn);
  const auto& alg = cfg.afp->algebra;
  EXPECT_EQ(alg.coset_reps(1).size(), 1u);
  EXPECT_EQ(alg.coset_reps(2).size(), 1u);
  for (int i : {1, 2}) {
    for (const auto& e : alg.coset_reps(i)) EXPECT_FALSE(alg.in_j(e.matrix));
    EXPECT_TRUE(alg.coset_collisions(i).empty());
  }
  // |G1| = 4, |G2| = 4, |J| = 2: forms of length n number 2 for every n >= 1.
  EXPECT_EQ(enumerate_afp_forms(alg, 4).size(), 9u);
}

TEST(HnnAlgebra, EnumerationCountsOrderTwo) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const auto& alg = cfg.hnn->algebra;
  std::vector<std::size_t> per_length(5, 0);
  for (const auto& node : enumerate_hnn_forms(alg, 4)) {
    ++per_length.at(static_cast<std::size_t>(node.form.length()));
    EXPECT_EQ(alg.validate(node.form), "");
    if (node.form.length() > 0) {
      EXPECT_TRUE(alg.has_type(node.form, node.type));
    }
  }
  for (int m = 1; m <= 4; ++m) {
    std::size_t expect = 4;
    for (int k = 0; k < m; ++k) expect *= 3;
    EXPECT_EQ(per_length[static_cast<std::size_t>(m)], expect) << "length " << m;
  }
}

TEST(HnnAlgebra, FormalInverseAndPrefix) {
  const GroupConfig cfg = load("order_two_hnn.json");
  const auto& alg = cfg.hnn->algebra;
  const HnnForm w = alg.from_word(parse_word_text("f a f^-1 a f"));
  EXPECT_EQ(w.length(), 3);
  EXPECT_EQ(w.first_sign(), 1);
  EXPECT_EQ(w.last_sign(), 1);
  const HnnInverse inv = alg.invert(w);
  const Moebius back = alg.evaluate(w) * inv.head.matrix * alg.evaluate(inv.tail);
  EXPECT_LT(projective_distance(back, Moebius::identity()), 1e-9);
  EXPECT_LT(projective_distance(alg.evaluate(inv.full) * alg.evaluate(w), Moebius::identity()), 1e-9);
  const HnnPrefix p = alg.prefix_decompose(w);
  const Moebius f_j = p.j > 0 ? alg.f() : alg.f().inverse();
  EXPECT_LT(projective_distance(alg.evaluate(p.prefix) * f_j * p.g0.matrix, alg.evaluate(w)), 1e-9);
  EXPECT_EQ(p.prefix.length(), 2);
  EXPECT_THROW(alg.prefix_decompose(HnnForm{}), Error);
}

TEST(HnnAlgebra, LeadingJElementSlidesThroughF) {
  const GroupConfig cfg = load_config_string(kHnnQuarterTurn);
  const auto& alg = cfg.hnn->algebra;
  // r^2 lies in J_1 so r^2 f = f r^2 and the form starts with f.
  const HnnForm w = alg.from_word(parse_word_text("r^2 f"));
  EXPECT_EQ(w.first_sign(), 1);
  const HnnForm v = alg.from_word(parse_word_text("r f"));
  EXPECT_EQ(v.first_sign(), 0);
  // f r^2 f^-1 collapses to a base element.
  EXPECT_EQ(alg.from_word(parse_word_text("f r^2 f^-1")).length(), 0);
  EXPECT_EQ(alg.from_word(parse_word_text("f r f^-1")).length(), 2);
}
