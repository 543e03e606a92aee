// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// Nested translate covers of the limit set, coding of points by nested caps,
// conical-limit witnesses and raster output.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maskitlab/config.hpp"
#include "maskitlab/pingpong.hpp"

namespace maskit {

/// One translate h B_label. AFP labels are factors 1/2, HNN labels types +-1.
struct CoverNode {
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  std::size_t parent = kNoParent;
  int label = 1;
  /// HNN: exponent sign of the f-letter added at this level, 0 at level 0.
  int step_sign = 0;
  /// Index into the coset representative list used at this level; -1 for
  /// the bare B-sets.
  int rep = -1;
  Moebius h;
  Region region;
  /// Margin of this region inside its parent (AFP: interior margin).
  double parent_margin = 0.0;
};

struct DiskCover {
  Mode mode = Mode::Afp;
  std::vector<std::vector<CoverNode>> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  std::size_t size() const;
  /// The word of the translate, rebuilt from parent links.
  Word form_word(const GroupConfig& cfg, int level, std::size_t index) const;
};

/// Level k holds the translates by length-k forms, one per left coset.
/// Throws EnumerationBudget beyond cfg.max_caps, NestingViolation if a
/// translate is not inside its parent.
DiskCover build_afp_cover(const GroupConfig& cfg, int depth);
DiskCover build_hnn_cover(const GroupConfig& cfg, int depth);
DiskCover build_cover(const GroupConfig& cfg, int depth);

/// Chordal diameter of a union of caps (exact for one cap).
double region_diameter(const Region& r);

struct LevelStats {
  int level = 0;
  std::size_t count = 0;
  double max_diameter = 0.0;
  double mean_diameter = 0.0;
  /// Largest child/parent diameter ratio at this level.
  double worst_ratio = 0.0;
};

struct ContractionStats {
  /// Levels 1..depth; empty for a depth-0 cover.
  std::vector<LevelStats> levels;
  /// Worst child/parent ratio over levels >= 2; 0 when there are none.
  double worst_ratio_from_2 = 0.0;
};

ContractionStats contraction_stats(const DiskCover& cover);

struct CodingStep {
  Word syllable;
  Word form;
  Moebius h;
  int label = 1;
  /// HNN: sign of the f-letter in the syllable.
  int step_sign = 0;
  Region cap;
  double diameter = 0.0;
  /// Angular margin of x inside `cap`.
  double margin = 0.0;
};

struct CodingSequence {
  SpherePoint x;
  /// Level-0 translate containing x: AFP the B-set index, HNN the type.
  int base_label = 1;
  Word base;
  Moebius base_h;
  std::vector<CodingStep> steps;
  /// No listed translate at the next level contains x.
  bool escaped = false;
  int requested_depth = 0;

  bool depth_reached() const { return !escaped; }
};

/// Greedy coding by nested translates; OutsideT0 when x lies in no level-0
/// translate.
CodingSequence code_point_afp(const GroupConfig& cfg, const SpherePoint& x, int depth);
CodingSequence code_point_hnn(const GroupConfig& cfg, const SpherePoint& x, int depth);
CodingSequence code_point(const GroupConfig& cfg, const SpherePoint& x, int depth);

struct ConicalStep {
  int k = 0;
  Word g;
  /// Margin of g x inside the anchor set.
  double point_margin = 0.0;
  /// Margin of g Y inside the compact K.
  double set_margin = 0.0;
};

struct ConicalWitness {
  int side = 1;
  Cap k;
  /// Separation of K from the anchor set.
  double k_separation = 0.0;
  std::vector<ConicalStep> steps;
};

/// Builds g_k = j_k h_k^-1 from a coding and checks g_k x stays in the anchor
/// B-set while g_k Y lands in the nesting compact K. Throws Precondition for
/// escaped or too short codings and WitnessFailed when a step misses.
ConicalWitness conical_witness(const GroupConfig& cfg, const CodingSequence& coding, int j_bound);

/// Deepest-level cap centers (depth >= 1) plus translates of approximate
/// factor limit points by forms of length <= min(depth, 2).
std::vector<SpherePoint> limit_point_cloud(const GroupConfig& cfg, int depth);
std::vector<SpherePoint> limit_point_cloud(const GroupConfig& cfg, const DiskCover& cover);

struct ImageOptions {
  int width = 512;
  int height = 512;
  /// x0, y0, x1, y1 in the complex plane.
  std::array<double, 4> window{-8.0, -8.0, 8.0, 8.0};
};

/// Binary P6 image: white background, level-0 translates in gray, cloud
/// points in black.
std::string render_ppm(const DiskCover& cover, const std::vector<SpherePoint>& cloud,
                       const ImageOptions& opts);

}  // namespace maskit
