// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maskitlab/sphere.hpp"
#include "maskitlab/words.hpp"

namespace maskit {

struct AfpConfig {
  AfpAlgebra algebra;
  std::array<Region, 2> b;
  const Region& region(int i) const { return b.at(i - 1); }
};

struct HnnConfig {
  HnnAlgebra algebra;
  Cap b_plus;
  Cap b_minus;
  std::optional<SpherePoint> witness;
  const Cap& cap(int i) const { return i > 0 ? b_plus : b_minus; }
};

enum class Mode { Afp, Hnn };

struct GroupConfig {
  Mode mode = Mode::Afp;
  std::string name;
  double epsilon = tol::kDefaultEpsilon;
  double delta = tol::kDefaultDelta;
  int depth = 6;
  int j_bound = 4;
  std::size_t max_caps = 2'000'000;
  std::optional<AfpConfig> afp;
  std::optional<HnnConfig> hnn;
  /// Coset representatives given explicitly (per factor / per J_i); derived
  /// from the catalog otherwise.
  std::array<bool, 2> reps_supplied{false, false};
  std::vector<std::string> warnings;

  bool is_afp() const { return mode == Mode::Afp; }
};

/// Parses and validates; throws Config (or Io for unreadable files).
GroupConfig load_config_file(const std::string& path);
GroupConfig load_config_string(const std::string& text);

/// Rebuilds catalogs to `depth` and re-derives coset representatives that
/// were not supplied. Called by the loaders and after depth overrides.
void prepare_config(GroupConfig& cfg, int depth);

/// Applies CLI-style overrides. Returns human-readable warnings for overrides
/// that weaken the file's settings (smaller epsilon or depth).
std::vector<std::string> apply_overrides(GroupConfig& cfg, std::optional<int> depth,
                                         std::optional<double> epsilon);

}  // namespace maskit
