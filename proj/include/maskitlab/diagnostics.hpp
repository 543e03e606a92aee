// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// Element classification against the combinatorial prediction, and an
// empirical probe for convergence sequences.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskitlab/config.hpp"

namespace maskit {

enum class CombinatorialClass { FactorConjugate, EvenCoreLoxodromic, PositiveCoreLoxodromic };
const char* combinatorial_class_name(CombinatorialClass c);

struct ElementVerdict {
  Word word;
  /// word = conjugator * core * conjugator^-1.
  Word core;
  Word conjugator;
  int core_length = 0;
  CombinatorialClass combinatorial = CombinatorialClass::FactorConjugate;
  /// Class of the full word's matrix.
  Classification numeric;
  /// Fixed points of the core when a loxodromic is predicted.
  std::optional<SpherePoint> attractor;
  std::optional<SpherePoint> repeller;
  /// Where the prediction puts them, e.g. "Int(B2)" or "outside B1".
  std::string attractor_expected;
  std::string repeller_expected;
  std::optional<double> attractor_margin;
  std::optional<double> repeller_margin;
  bool agreement = false;
  std::string note;
};

ElementVerdict classify_afp_element(const GroupConfig& cfg, const Word& w);
ElementVerdict classify_hnn_element(const GroupConfig& cfg, const Word& w);
ElementVerdict classify_element(const GroupConfig& cfg, const Word& w);

/// Freely reduced random words over the generators (and stable letter), of
/// length 1..max_length, reproducible for a fixed seed.
std::vector<Word> random_words(const GroupConfig& cfg, int count, int max_length,
                               std::uint64_t seed);

struct ProbeResult {
  SpherePoint z_plus;
  SpherePoint z_minus;
  /// Chordal neighbourhood radius around z_- used for spread and coverage.
  double radius = 0.1;
  /// Per map: largest chordal distance from z_+ of images of grid points
  /// outside the neighbourhood of z_-.
  std::vector<double> spread;
  /// Per map: fraction of grid points inside g_k(closed neighbourhood of z_-).
  std::vector<double> coverage;
};

/// Needs at least 8 pairwise distinct maps. Throws NoConvergenceDetected
/// when the final spread stays above 0.25 or does not improve on the first.
ProbeResult convergence_sequence_probe(const std::vector<Moebius>& maps, int grid = 64);

}  // namespace maskit
