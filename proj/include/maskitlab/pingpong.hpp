// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// Bounded-depth verification of ping-pong position for amalgams and HNN
// extensions, plus the nesting machinery the limit-set code builds on.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maskitlab/config.hpp"
#include "maskitlab/error.hpp"

namespace maskit {

enum class Verdict { Certified, CertifiedAllLengths, Failed, NotProved };
const char* verdict_name(Verdict v);

struct ConditionReport {
  std::string id;
  std::string title;
  Verdict verdict = Verdict::Certified;
  /// Checked against finite proxies of limit sets rather than exactly.
  bool empirical = false;
  /// Worst margin seen; absent when the condition was vacuous.
  std::optional<double> margin;
  std::optional<Word> witness;
  std::optional<SpherePoint> witness_point;
  std::size_t checked = 0;
  std::string note;
};

struct VerificationReport {
  std::string mode;
  std::string name;
  int depth = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::vector<ConditionReport> conditions;
  /// Smallest projective distance from the identity over the enumerated
  /// nontrivial forms.
  double discreteness_eta = 0.0;
  std::optional<Word> eta_witness;
  std::size_t forms_checked = 0;
  std::vector<std::string> warnings;

  /// Minimum margin over non-empirical conditions that reported one.
  std::optional<double> min_margin() const;
  /// 0 all certified, 2 any failure, 3 otherwise if anything is not proved.
  int exit_code() const;
  const ConditionReport* find(const std::string& id) const;
};

VerificationReport verify_afp(const GroupConfig& cfg);
VerificationReport verify_hnn(const GroupConfig& cfg);
VerificationReport verify(const GroupConfig& cfg);

/// Open-set pair check: U_1, U_2 disjoint, J-invariant, gU_i inside U_{3-i}
/// for g in G_i \ J; properness asks one side to be strict for every g.
VerificationReport check_interactive_pair(const GroupConfig& cfg, const Region& u1,
                                          const Region& u2);

/// Open-set triple check with A = M \ (K_1 u K_-1) for closed caps
/// K_i containing U_i.
VerificationReport check_interactive_triple(const GroupConfig& cfg, const Cap& k_plus,
                                            const Cap& k_minus, const Cap& u_plus,
                                            const Cap& u_minus);

class NestingViolation : public Error {
 public:
  NestingViolation(std::size_t step, double margin, const std::string& what)
      : Error(ErrorCode::NestingViolation, what), step_(step), margin_(margin) {}
  std::size_t step() const { return step_; }
  double margin() const { return margin_; }

 private:
  std::size_t step_;
  double margin_;
};

struct TrackStep {
  Word applied;
  /// "B1", "B2", "Int(B1)", "Int(B-1)", "A", ...
  std::string target;
  double margin = 0.0;
  bool strict = true;
};

struct TrackResult {
  Region final_region;
  std::string final_target;
  std::vector<TrackStep> trace;
};

/// Applies w to B_start syllable by syllable (right to left). start must be
/// the factor of w's last syllable; WrongShape otherwise.
TrackResult apply_form_track(const GroupConfig& cfg, const AfpForm& w, int start);
/// Applies w to B_start letter by letter; w must have type start.
TrackResult apply_form_track(const GroupConfig& cfg, const HnnForm& w, int start);

struct NestingCompact {
  /// No element needed covering.
  bool empty = false;
  Cap k;
  /// Margin of K into its target (AFP: into Int(B_{3-i}); HNN: separation
  /// from B_i).
  double margin = 0.0;
  struct Entry {
    Word g;
    Word j;
    Cap cap;
  };
  std::vector<Entry> table;
};

/// Empirical compact K for side i (AFP: 1/2, HNN: +1/-1) covering j g B
/// translates for catalog elements up to `depth`. Throws NoCompactFound.
NestingCompact search_nesting_compact(const GroupConfig& cfg, int side, int depth, int j_bound);

/// J element (as word and matrix) with |word| <= j_bound minimizing the size
/// of j * region; AFP uses slot 0 words, HNN words over G_0.
struct JChoice {
  Word word;
  Moebius matrix;
};
JChoice best_j(const JOracle& j, const Moebius& g, const Region& r, int j_bound, int slot);

/// Approximate limit set of a factor: fixed points of non-elliptic catalog
/// elements, plus seed orbits when the catalog is not closed.
std::vector<SpherePoint> approximate_limit_set(const FactorGroup& g);
std::vector<SpherePoint> approximate_limit_set(const JOracle& j);

/// Improved precise invariance and boundary invariance at desk scale.
struct InvarianceReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  double min_separation = 0.0;
  std::size_t boundary_checked = 0;
  std::string first_failure;
};
InvarianceReport check_precise_invariance(const GroupConfig& cfg, int max_length);
InvarianceReport check_boundary_invariance(const GroupConfig& cfg, int max_length);

/// Smallest enclosing cap heuristics: returns a cap containing every cap in
/// `caps`, starting from `hint` directions.
Cap enclosing_cap(const std::vector<Cap>& caps, const std::vector<Vec3>& hints);

}  // namespace maskit
