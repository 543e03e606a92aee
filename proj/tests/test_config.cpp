// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "maskitlab/config.hpp"
#include "maskitlab/error.hpp"
#include "test_support.hpp"

using namespace maskit;
using testing_support::load;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    load_config_string(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return ErrorCode::Precondition;
}

}  // namespace

TEST(Config, ShippedConfigsLoad) {
  const GroupConfig d = load("dihedral.json");
  EXPECT_TRUE(d.is_afp());
  EXPECT_EQ(d.name, "dihedral");
  EXPECT_EQ(d.depth, 6);
  EXPECT_DOUBLE_EQ(d.epsilon, 1e-6);
  EXPECT_TRUE(d.reps_supplied[0]);
  EXPECT_TRUE(d.warnings.empty());

  const GroupConfig h = load("order_two_hnn.json");
  EXPECT_FALSE(h.is_afp());
  ASSERT_TRUE(h.hnn.has_value());
  EXPECT_TRUE(h.hnn->witness.has_value());
  EXPECT_EQ(h.hnn->algebra.stable_letter(), "f");
  EXPECT_EQ(h.hnn->algebra.coset_reps(1).size(), 2u);
}

TEST(Config, SkeletonIsRejectedUntilFilledIn) {
  try {
    load("genus2_skeleton.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
  }
}

TEST(Config, EqualHnnSetsRejected) {
  try {
    load("mutated/hnn_equal_b.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Config);
  }
}

TEST(Config, MissingFileIsIo) {
  try {
    load("does_not_exist.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Config, MalformedInputsAreConfigErrors) {
  EXPECT_EQ(code_of("{"), ErrorCode::Config);
  EXPECT_EQ(code_of(R"({"mode": "sideways"})"), ErrorCode::Config);
  // Generator shared between factors.
  EXPECT_EQ(code_of(R"({"mode": "afp",
    "generators": {"G1": {"u": {"a": [0,0], "b": [1,0], "c": [1,0], "d": [0,0]}},
                   "G2": {"u": {"a": [0,0], "b": [1,0], "c": [16,0], "d": [0,0]}}},
    "B1": {"circle_center": [0,0], "radius": 0.5, "side": "inside"},
    "B2": {"circle_center": [0,0], "radius": 1, "side": "outside"}})"),
            ErrorCode::Config);
  // Overlapping B-sets.
  EXPECT_EQ(code_of(R"({"mode": "afp",
    "generators": {"G1": {"u": {"a": [0,0], "b": [1,0], "c": [1,0], "d": [0,0]}},
                   "G2": {"v": {"a": [0,0], "b": [1,0], "c": [16,0], "d": [0,0]}}},
    "B1": {"circle_center": [0,0], "radius": 2, "side": "inside"},
    "B2": {"circle_center": [0,0], "radius": 1, "side": "outside"}})"),
            ErrorCode::Config);
  // J words that disagree across the factors.
  EXPECT_EQ(code_of(R"({"mode": "afp",
    "generators": {"G1": {"u": {"a": [0,0], "b": [1,0], "c": [1,0], "d": [0,0]}},
                   "G2": {"v": {"a": [0,0], "b": [1,0], "c": [16,0], "d": [0,0]}}},
    "j": {"kind": "finite", "elements": [{"G1": [["u", 1]], "G2": [["v", 1]]}]},
    "B1": {"circle_center": [0,0], "radius": 0.5, "side": "inside"},
    "B2": {"circle_center": [0,0], "radius": 1, "side": "outside"}})"),
            ErrorCode::Config);
  // f does not conjugate J_-1 onto J_1.
  EXPECT_EQ(code_of(R"({"mode": "hnn",
    "generators": {"G0": {"r": {"a": [0,1], "b": [0,0], "c": [0,0], "d": [1,0]}}},
    "stable_letter": {"name": "f", "matrix": {"a": [4,0], "b": [1,0], "c": [0,0], "d": [1,0]}},
    "j1": {"kind": "cyclic", "generator": [["r", 2]]},
    "j_minus1": {"kind": "cyclic", "generator": [["r", 2]]},
    "B1": {"circle_center": [0,0], "radius": 2, "side": "outside"},
    "B_minus1": {"circle_center": [0,0], "radius": 0.5, "side": "inside"}})"),
            ErrorCode::Config);
  // Degenerate generator matrix.
  try {
    load_config_string(R"({"mode": "afp",
      "generators": {"G1": {"u": {"a": [1,0], "b": [2,0], "c": [2,0], "d": [4,0]}},
                     "G2": {"v": {"a": [0,0], "b": [1,0], "c": [16,0], "d": [0,0]}}},
      "B1": {"circle_center": [0,0], "radius": 0.5, "side": "inside"},
      "B2": {"circle_center": [0,0], "radius": 1, "side": "outside"}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::DegenerateMatrix || e.code() == ErrorCode::Config);
  }
}

TEST(Config, OverridesWarnWhenWeakening) {
  GroupConfig cfg = load("dihedral.json");
  EXPECT_TRUE(apply_overrides(cfg, 8, std::nullopt).empty());
  EXPECT_EQ(cfg.depth, 8);
  const auto w = apply_overrides(cfg, 3, 1e-9);
  EXPECT_EQ(w.size(), 2u);
  EXPECT_EQ(cfg.depth, 3);
  EXPECT_DOUBLE_EQ(cfg.epsilon, 1e-9);
  EXPECT_EQ(cfg.warnings.size(), 2u);
}

TEST(Config, QuarterTurnConfigsDeriveReps) {
  const GroupConfig a = load_config_string(testing_support::kAfpQuarterTurn);
  EXPECT_FALSE(a.reps_supplied[0]);
  EXPECT_EQ(a.afp->algebra.j().members().size(), 2u);
  const GroupConfig h = load_config_string(testing_support::kHnnQuarterTurn);
  EXPECT_EQ(h.hnn->algebra.coset_reps(1).size(), 2u);
  EXPECT_EQ(h.hnn->algebra.coset_reps(-1).size(), 2u);
}
