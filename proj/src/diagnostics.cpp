// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/diagnostics.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "maskitlab/error.hpp"

namespace maskit {

namespace {

std::string b_name(int i) { return "B" + std::to_string(i); }

void factor_conjugate(ElementVerdict& v, const Moebius& core) {
  v.combinatorial = CombinatorialClass::FactorConjugate;
  const Classification c = classify(core);
  v.agreement = c.kind == v.numeric.kind;
  if (!v.agreement) {
    v.note = std::string("core classifies as ") + map_class_name(c.kind) + " but the word as " +
             map_class_name(v.numeric.kind);
  }
}

// Both margins must come out positive for agreement.
template <typename AttMargin, typename RepMargin>
void predicted_loxodromic(ElementVerdict& v, const Moebius& core, AttMargin att_margin,
                          RepMargin rep_margin) {
  const Classification c = classify(core);
  if (v.numeric.kind != MapClass::Loxodromic || c.kind != MapClass::Loxodromic) {
    v.agreement = false;
    v.note = std::string("predicted loxodromic, numerically ") + map_class_name(v.numeric.kind);
    return;
  }
  const FixedPoints fp = fixed_points(core);
  v.attractor = fp.attracting();
  v.repeller = fp.repelling();
  v.attractor_margin = att_margin(*v.attractor);
  v.repeller_margin = rep_margin(*v.repeller);
  v.agreement = *v.attractor_margin > 0.0 && *v.repeller_margin > 0.0;
  if (!v.agreement) v.note = "fixed points are not where the ping-pong argument puts them";
}

std::size_t hnn_len(const HnnAlgebra& alg, const Word& w) {
  return static_cast<std::size_t>(alg.from_word(w).length());
}

Word conjugate(const Word& c, const Word& w) {
  return free_reduce(word_concat(word_concat(c, w), word_inverse(c)));
}

}  // namespace

const char* combinatorial_class_name(CombinatorialClass c) {
  switch (c) {
    case CombinatorialClass::FactorConjugate: return "factor_conjugate";
    case CombinatorialClass::EvenCoreLoxodromic: return "even_core_loxodromic";
    case CombinatorialClass::PositiveCoreLoxodromic: return "positive_core_loxodromic";
  }
  return "?";
}

ElementVerdict classify_afp_element(const GroupConfig& cfg, const Word& w) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "amalgam classification needs an amalgam config");
  const AfpConfig& A = *cfg.afp;
  const AfpAlgebra& alg = A.algebra;
  ElementVerdict v;
  v.word = free_reduce(w);
  const AfpForm form = alg.from_word(v.word);
  v.numeric = classify(alg.evaluate(form));
  const AfpCyclicReduction cr = alg.cyclic_reduce(form);
  v.core = alg.to_word(cr.core);
  v.conjugator = alg.to_word(cr.conjugator);
  v.core_length = static_cast<int>(cr.core.length());
  const Moebius core = alg.evaluate(cr.core);
  if (cr.core.length() <= 1) {
    factor_conjugate(v, core);
    return v;
  }
  const auto [first, last] = alg.form_type(cr.core);
  if (first == last) {
    v.combinatorial = CombinatorialClass::FactorConjugate;
    v.agreement = false;
    v.note = "cyclic reduction left an odd core";
    return v;
  }
  v.combinatorial = CombinatorialClass::EvenCoreLoxodromic;
  v.attractor_expected = "Int(" + b_name(last) + ")";
  v.repeller_expected = "Int(" + b_name(first) + ")";
  const Region& att = A.region(last);
  const Region& rep = A.region(first);
  predicted_loxodromic(
      v, core, [&att](const SpherePoint& p) { return att.point_margin(p); },
      [&rep](const SpherePoint& p) { return rep.point_margin(p); });
  return v;
}

ElementVerdict classify_hnn_element(const GroupConfig& cfg, const Word& w) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "HNN classification needs an HNN config");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  ElementVerdict v;
  v.word = free_reduce(w);
  const HnnForm form = alg.from_word(v.word);
  v.numeric = classify(alg.evaluate(form));

  Word cur = alg.to_word(form);
  Word conj;
  const std::string& f = alg.stable_letter();
  auto move_leading_g0 = [&]() {
    const HnnForm cf = alg.from_word(cur);
    if (cf.length() == 0 || cf.first_sign() != 0) return;
    const Word g = cf.syllables.front().g.word;
    cur = alg.to_word(alg.from_word(conjugate(word_inverse(g), cur)));
    conj = free_reduce(word_concat(conj, g));
  };
  for (;;) {
    move_leading_g0();
    const std::size_t len = hnn_len(alg, cur);
    if (len == 0) break;
    const int s = alg.from_word(cur).first_sign();
    bool improved = false;
    for (int e : {-s, s}) {
      const Word c{{f, e}};
      const Word cand = alg.to_word(alg.from_word(conjugate(c, cur)));
      if (hnn_len(alg, cand) < len) {
        cur = cand;
        conj = free_reduce(word_concat(conj, word_inverse(c)));
        improved = true;
        break;
      }
    }
    for (std::size_t p = 1; !improved && p < cur.size(); ++p) {
      const Word prefix(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(p));
      Word rot(cur.begin() + static_cast<std::ptrdiff_t>(p), cur.end());
      rot.insert(rot.end(), prefix.begin(), prefix.end());
      const Word cand = alg.to_word(alg.from_word(rot));
      if (hnn_len(alg, cand) < len) {
        cur = cand;
        conj = free_reduce(word_concat(conj, prefix));
        improved = true;
      }
    }
    if (!improved) break;
  }
  const HnnForm core_form = alg.from_word(cur);
  v.core = cur;
  v.conjugator = conj;
  v.core_length = core_form.length();
  const Moebius core = alg.evaluate(core_form);
  if (core_form.length() == 0) {
    factor_conjugate(v, core);
    return v;
  }
  const int s = core_form.first_sign();
  v.combinatorial = CombinatorialClass::PositiveCoreLoxodromic;
  v.attractor_expected = "Int(" + b_name(s) + ")";
  v.repeller_expected = "outside " + b_name(s);
  const Cap& bs = H.cap(s);
  predicted_loxodromic(
      v, core, [&bs](const SpherePoint& p) { return bs.point_margin(p); },
      [&bs](const SpherePoint& p) { return -bs.point_margin(p); });
  return v;
}

ElementVerdict classify_element(const GroupConfig& cfg, const Word& w) {
  return cfg.is_afp() ? classify_afp_element(cfg, w) : classify_hnn_element(cfg, w);
}

std::vector<Word> random_words(const GroupConfig& cfg, int count, int max_length,
                               std::uint64_t seed) {
  std::vector<std::string> gens;
  if (cfg.afp) {
    for (int i : {1, 2}) {
      for (const auto& g : cfg.afp->algebra.factor(i).generators()) gens.push_back(g.first);
    }
  } else {
    for (const auto& g : cfg.hnn->algebra.base().generators()) gens.push_back(g.first);
    gens.push_back(cfg.hnn->algebra.stable_letter());
  }
  if (gens.empty() || max_length < 1) throw Error(ErrorCode::Usage, "nothing to draw random words from");
  std::mt19937_64 rng(seed);
  const std::uint64_t n_letters = 2 * gens.size();
  std::vector<Word> out;
  for (int c = 0; c < count; ++c) {
    const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_length));
    Word w;
    while (static_cast<int>(w.size()) < len) {
      const std::uint64_t pick = rng() % n_letters;
      const Letter l{gens[pick / 2], pick % 2 == 0 ? 1 : -1};
      if (!w.empty() && w.back().gen == l.gen && w.back().exp == -l.exp) continue;
      w.push_back(l);
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

SpherePoint trimmed_centroid(const std::vector<Vec3>& pts) {
  auto centroid = [](const std::vector<Vec3>& v, std::size_t n) {
    Vec3 m;
    for (std::size_t k = 0; k < n; ++k) m = m + v[k];
    return m.norm() > 1e-12 ? m.normalized() : v.front();
  };
  Vec3 c = centroid(pts, pts.size());
  std::vector<Vec3> work = pts;
  const std::size_t keep = (pts.size() + 1) / 2;
  for (int it = 0; it < 5; ++it) {
    std::stable_sort(work.begin(), work.end(), [&c](const Vec3& a, const Vec3& b) {
      return (a - c).norm() < (b - c).norm();
    });
    c = centroid(work, keep);
  }
  return SpherePoint::from_vector(c);
}

}  // namespace

ProbeResult convergence_sequence_probe(const std::vector<Moebius>& maps, int grid) {
  if (maps.size() < 8) throw Error(ErrorCode::Precondition, "probe needs at least 8 maps");
  for (std::size_t a = 0; a < maps.size(); ++a) {
    for (std::size_t b = a + 1; b < maps.size(); ++b) {
      if (projectively_equal(maps[a], maps[b])) {
        throw Error(ErrorCode::Precondition, "probe maps must be pairwise distinct");
      }
    }
  }
  const std::vector<SpherePoint> pts = equal_area_grid(grid);
  const Moebius& last = maps.back();
  const Moebius last_inv = last.inverse();
  std::vector<Vec3> fwd, bwd;
  for (const auto& p : pts) {
    fwd.push_back(last(p).to_vector());
    bwd.push_back(last_inv(p).to_vector());
  }
  ProbeResult out;
  out.z_plus = trimmed_centroid(fwd);
  out.z_minus = trimmed_centroid(bwd);
  for (const Moebius& g : maps) {
    const Moebius g_inv = g.inverse();
    double spread = 0.0;
    std::size_t covered = 0;
    for (const auto& p : pts) {
      if (chordal_distance(p, out.z_minus) > out.radius) {
        spread = std::max(spread, chordal_distance(g(p), out.z_plus));
      }
      if (chordal_distance(g_inv(p), out.z_minus) <= out.radius) ++covered;
    }
    out.spread.push_back(spread);
    out.coverage.push_back(static_cast<double>(covered) / static_cast<double>(pts.size()));
  }
  if (out.spread.back() > 0.25 || !(out.spread.back() < out.spread.front())) {
    throw Error(ErrorCode::NoConvergenceDetected,
                "final spread " + std::to_string(out.spread.back()) + " (first " +
                    std::to_string(out.spread.front()) + ")");
  }
  return out;
}

}  // namespace maskit
