// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace maskit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTouch = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double chord_of_angle(double a) { return 2.0 * std::sin(0.5 * std::min(std::abs(a), kPi)); }

// Chordal distance from p to the boundary of a region.
double boundary_distance(const Region& r, const SpherePoint& p) {
  double best = kInf;
  for (const Cap& c : r.caps) best = std::min(best, chord_of_angle(c.point_margin(p)));
  return best;
}

double nearest(const std::vector<SpherePoint>& set, const SpherePoint& p) {
  double best = kInf;
  for (const auto& q : set) best = std::min(best, chordal_distance(p, q));
  return best;
}

void add_point(std::vector<SpherePoint>& pts, const SpherePoint& p) {
  for (const auto& q : pts) {
    if (chordal_distance(p, q) <= 1e-9) return;
  }
  pts.push_back(p);
}

void add_fixed_points(std::vector<SpherePoint>& pts, const Moebius& m) {
  if (is_identity(m)) return;
  const Classification c = classify(m);
  if (c.kind == MapClass::Elliptic || c.kind == MapClass::Identity) return;
  for (const auto& fp : fixed_points(m).points) add_point(pts, fp.point);
}

Word stable_word(const HnnAlgebra& alg, int e) { return {{alg.stable_letter(), e}}; }

struct MarginTracker {
  ConditionReport& rep;
  void see(double m) {
    ++rep.checked;
    if (!rep.margin || m < *rep.margin) rep.margin = m;
  }
  void fail(const Word& w, const std::string& note) {
    if (rep.verdict != Verdict::Failed) {
      rep.verdict = Verdict::Failed;
      rep.witness = w;
      rep.note = note;
    }
  }
  void fail_point(const SpherePoint& p, const std::string& note) {
    if (rep.verdict != Verdict::Failed) {
      rep.verdict = Verdict::Failed;
      rep.witness_point = p;
      rep.note = note;
    }
  }
  void not_proved(const Word& w, const std::string& note) {
    if (rep.verdict == Verdict::Certified || rep.verdict == Verdict::CertifiedAllLengths) {
      rep.verdict = Verdict::NotProved;
      rep.witness = w;
      rep.note = note;
    }
  }
};

ConditionReport make_condition(std::string id, std::string title, bool empirical = false) {
  ConditionReport c;
  c.id = std::move(id);
  c.title = std::move(title);
  c.empirical = empirical;
  return c;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Worst deviation between a mapped region and the original, as cap-set
// distance.
double region_deviation(const Region& a, const Region& b) {
  double worst = 0.0;
  auto one_way = [&worst](const Region& x, const Region& y) {
    for (const Cap& c : x.caps) {
      double best = kInf;
      for (const Cap& d : y.caps) {
        best = std::min(best, std::abs(c.radius - d.radius) + angle_between(c.center, d.center));
      }
      worst = std::max(worst, best);
    }
  };
  one_way(a, b);
  one_way(b, a);
  return worst;
}

std::vector<SpherePoint> witness_candidates(const std::optional<SpherePoint>& w) {
  std::vector<SpherePoint> out;
  if (w) out.push_back(*w);
  const auto grid = equal_area_grid(64);
  out.insert(out.end(), grid.begin(), grid.end());
  return out;
}

double discreteness(const std::vector<std::pair<Word, Moebius>>& forms, std::optional<Word>& who) {
  double eta = kInf;
  for (const auto& [w, m] : forms) {
    const double d = projective_distance(m, Moebius::identity());
    if (d < eta) {
      eta = d;
      who = w;
    }
  }
  return eta;
}

void finish_discreteness(VerificationReport& rep,
                         const std::vector<std::pair<Word, Moebius>>& forms) {
  ConditionReport c = make_condition("discreteness", "nontrivial forms stay away from the identity");
  rep.discreteness_eta = discreteness(forms, rep.eta_witness);
  rep.forms_checked = forms.size();
  c.checked = forms.size();
  if (forms.empty()) {
    rep.discreteness_eta = 0.0;
    c.note = "no nontrivial forms enumerated";
  } else if (!(rep.discreteness_eta > tol::kOracle)) {
    c.verdict = Verdict::Failed;
    c.witness = rep.eta_witness;
    c.note = "a nontrivial form evaluates to the identity";
  } else {
    c.note = "eta = " + fmt(rep.discreteness_eta);
  }
  rep.conditions.push_back(std::move(c));
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified_to_depth";
    case Verdict::CertifiedAllLengths: return "certified_all_lengths";
    case Verdict::Failed: return "failed";
    case Verdict::NotProved: return "not_proved";
  }
  return "?";
}

std::optional<double> VerificationReport::min_margin() const {
  std::optional<double> out;
  for (const auto& c : conditions) {
    if (c.empirical || !c.margin) continue;
    if (!out || *c.margin < *out) out = c.margin;
  }
  return out;
}

int VerificationReport::exit_code() const {
  bool not_proved = false;
  for (const auto& c : conditions) {
    if (c.verdict == Verdict::Failed) return 2;
    if (c.verdict == Verdict::NotProved) not_proved = true;
  }
  return not_proved ? 3 : 0;
}

const ConditionReport* VerificationReport::find(const std::string& id) const {
  for (const auto& c : conditions) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<SpherePoint> approximate_limit_set(const FactorGroup& g) {
  std::vector<SpherePoint> pts;
  for (const Element& e : g.catalog()) add_fixed_points(pts, e.matrix);
  if (!g.catalog_closed() && g.catalog().size() > 1) {
    const SpherePoint seed = SpherePoint::from_complex({0.3127, 0.1913});
    const int top = g.catalog_depth();
    for (const Element& e : g.catalog()) {
      if (word_length(e.word) == top) add_point(pts, e.matrix(seed));
    }
  }
  return pts;
}

std::vector<SpherePoint> approximate_limit_set(const JOracle& j) {
  std::vector<SpherePoint> pts;
  for (const auto& m : j.members()) add_fixed_points(pts, m.matrix);
  return pts;
}

JChoice best_j(const JOracle& j, const Moebius& g, const Region& r, int j_bound, int slot) {
  JChoice best{{}, Moebius::identity()};
  double best_size = kInf;
  for (const auto& m : j.members()) {
    if (word_length(m.words[slot]) > j_bound) continue;
    const Region img = map_region(m.matrix * g, r);
    double size = 0.0;
    for (const Cap& c : img.caps) size = std::max(size, c.radius);
    if (size < best_size - 1e-15) {
      best_size = size;
      best = {m.words[slot], m.matrix};
    }
  }
  return best;
}

namespace {

double cover_radius(const std::vector<Cap>& caps, const Vec3& c) {
  double r = 0.0;
  for (const Cap& k : caps) r = std::max(r, angle_between(c, k.center) + k.radius);
  return r;
}

// Pattern search over cap centers for the covering cap maximizing `score`.
template <typename Score>
Cap fit_cover_cap(const std::vector<Cap>& caps, const std::vector<Vec3>& hints, Score score) {
  std::vector<Vec3> starts = hints;
  Vec3 mean;
  for (const Cap& k : caps) mean = mean + k.center;
  if (mean.norm() > 1e-12) starts.push_back(mean.normalized());
  for (const Cap& k : caps) starts.push_back(k.center);
  Vec3 best = starts.front().normalized();
  double best_s = score(best, cover_radius(caps, best));
  for (const Vec3& s : starts) {
    const Vec3 u = s.normalized();
    const double v = score(u, cover_radius(caps, u));
    if (v > best_s) {
      best = u;
      best_s = v;
    }
  }
  for (double step = 0.5; step > 1e-10; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      const Vec3 t1 = best.cross(std::abs(best.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}).normalized();
      const Vec3 t2 = best.cross(t1);
      for (const Vec3& d : {t1, t1 * -1.0, t2, t2 * -1.0}) {
        const Vec3 cand = (best + d * step).normalized();
        const double v = score(cand, cover_radius(caps, cand));
        if (v > best_s + 1e-15) {
          best = cand;
          best_s = v;
          moved = true;
          break;
        }
      }
    }
  }
  return {best, std::min(cover_radius(caps, best), kPi - 1e-12), true};
}

}  // namespace

Cap enclosing_cap(const std::vector<Cap>& caps, const std::vector<Vec3>& hints) {
  return fit_cover_cap(caps, hints, [](const Vec3&, double r) { return -r; });
}

// ---------------------------------------------------------------------------
// AFP verification

VerificationReport verify_afp(const GroupConfig& cfg) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "verify_afp needs an amalgam config");
  const AfpConfig& A = *cfg.afp;
  const AfpAlgebra& alg = A.algebra;
  VerificationReport rep;
  rep.mode = "afp";
  rep.name = cfg.name;
  rep.depth = cfg.depth;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  rep.warnings = cfg.warnings;

  // (1) J-invariance of both B-sets.
  {
    ConditionReport c = make_condition("1", "B_i is J-invariant");
    double worst = 0.0;
    for (const auto& g : alg.j().generators()) {
      for (int i : {1, 2}) {
        ++c.checked;
        const double dev = region_deviation(map_region(g.matrix, A.region(i)), A.region(i));
        worst = std::max(worst, dev);
        if (dev > tol::kCapEqual && c.verdict != Verdict::Failed) {
          c.verdict = Verdict::Failed;
          c.witness = g.words[i - 1];
          c.note = "J generator moves B" + std::to_string(i) + " by " + fmt(dev);
        }
      }
    }
    if (c.verdict != Verdict::Failed) {
      c.verdict = Verdict::CertifiedAllLengths;
      c.note = c.checked ? "max deviation " + fmt(worst) : "J is trivial";
    }
    rep.conditions.push_back(std::move(c));
  }

  // (2) gB_i inside Int(B_{3-i}) for catalog g in G_i \ J.
  {
    ConditionReport c = make_condition("2", "g B_i lies in Int(B_{3-i}) for g in G_i \\ J");
    MarginTracker t{c};
    bool all_closed = true;
    for (int i : {1, 2}) {
      const FactorGroup& G = alg.factor(i);
      all_closed = all_closed && G.catalog_closed();
      for (const Element& g : G.catalog()) {
        if (word_length(g.word) > cfg.depth || alg.in_j(g.matrix)) continue;
        const SubsetResult r =
            region_subset_interior(map_region(g.matrix, A.region(i)), A.region(3 - i), cfg.epsilon);
        t.see(r.margin);
        const std::string where = word_to_string(g.word) + " B" + std::to_string(i) + " vs B" +
                                  std::to_string(3 - i) + ": margin " + fmt(r.margin);
        if (r.status == Containment::Failed || r.status == Containment::NonStrict) {
          t.fail(g.word, where);
        } else if (r.status == Containment::NotProved) {
          t.not_proved(g.word, where + " (no single target cap contains the image)");
        }
      }
    }
    if (c.verdict == Verdict::Certified && all_closed) {
      c.verdict = Verdict::CertifiedAllLengths;
      c.note = "both factors are finite and fully enumerated";
    }
    rep.conditions.push_back(std::move(c));
  }

  std::array<std::vector<SpherePoint>, 2> lam{approximate_limit_set(alg.factor(1)),
                                              approximate_limit_set(alg.factor(2))};
  const std::vector<SpherePoint> lam_j = approximate_limit_set(alg.j());

  // (3) Lambda(G_i) \ Lambda(J) inside Int(B_{3-i}), on finite proxies.
  {
    ConditionReport c = make_condition("3", "Lambda(G_i) \\ Lambda(J) lies in Int(B_{3-i})", true);
    MarginTracker t{c};
    for (int i : {1, 2}) {
      for (const auto& p : lam[i - 1]) {
        if (nearest(lam_j, p) <= cfg.delta) continue;
        const double m = A.region(3 - i).point_margin(p);
        t.see(m);
        if (!(m > 0.0)) t.fail_point(p, "approximate limit point of G" + std::to_string(i) + " outside Int(B" + std::to_string(3 - i) + ")");
      }
    }
    if (c.checked == 0) c.note = "vacuous: no non-elliptic factor elements";
    rep.conditions.push_back(std::move(c));
  }

  // Consequences that the certified conditions force.
  {
    ConditionReport c = make_condition("prop_i", "Lambda(J) lies on both boundaries", true);
    MarginTracker t{c};
    for (const auto& p : lam_j) {
      const double d = std::max(boundary_distance(A.region(1), p), boundary_distance(A.region(2), p));
      t.see(cfg.delta - d);
      if (d > cfg.delta) t.fail_point(p, "J limit point " + fmt(d) + " away from a boundary");
    }
    if (c.checked == 0) c.note = "vacuous: J has no limit points";
    rep.conditions.push_back(std::move(c));
  }
  {
    ConditionReport c = make_condition("prop_ii", "Lambda(G_i) lies in B_{3-i}", true);
    MarginTracker t{c};
    for (int i : {1, 2}) {
      for (const auto& p : lam[i - 1]) {
        const double m = A.region(3 - i).point_margin(p);
        t.see(m + cfg.delta);
        if (m < -cfg.delta) t.fail_point(p, "factor limit point outside B" + std::to_string(3 - i));
      }
    }
    if (c.checked == 0) c.note = "vacuous: no non-elliptic factor elements";
    rep.conditions.push_back(std::move(c));
  }

  const std::vector<AfpForm> forms = enumerate_afp_forms(alg, cfg.depth);
  {
    ConditionReport c = make_condition("prop_iii", "g Lambda(G_i) misses Lambda(G_i) for g outside G_i", true);
    MarginTracker t{c};
    const int len_cap = std::min(cfg.depth, 4);
    for (int i : {1, 2}) {
      if (lam[i - 1].empty()) continue;
      for (const AfpForm& w : forms) {
        if (w.length() == 0 || static_cast<int>(w.length()) > len_cap) continue;
        if (w.length() == 1 && w.syllables[0].factor == i) continue;
        const Moebius m = alg.evaluate(w);
        for (const auto& p : lam[i - 1]) {
          const double d = nearest(lam[i - 1], m(p));
          t.see(d - cfg.delta);
          if (d < cfg.delta) t.fail(alg.to_word(w), "translate of a factor limit point lands on the factor limit set");
        }
      }
    }
    if (c.checked == 0) c.note = "vacuous: factor limit sets are empty";
    rep.conditions.push_back(std::move(c));
  }

  std::vector<std::pair<Word, Moebius>> nontrivial;
  for (const AfpForm& w : forms) {
    if (!w.is_identity()) nontrivial.emplace_back(alg.to_word(w), alg.evaluate(w));
  }
  finish_discreteness(rep, nontrivial);
  return rep;
}

// ---------------------------------------------------------------------------
// HNN verification

InvarianceReport check_precise_invariance(const GroupConfig& cfg, int max_length) {
  InvarianceReport out;
  out.min_separation = kPi;
  if (!cfg.hnn) return out;
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  const auto nodes = enumerate_hnn_forms(alg, max_length);
  std::size_t begin = 0;
  while (begin < nodes.size()) {
    const int len = nodes[begin].form.length();
    std::size_t end = begin;
    while (end < nodes.size() && nodes[end].form.length() == len) ++end;
    std::vector<Cap> caps;
    std::vector<Moebius> mats;
    for (std::size_t k = begin; k < end; ++k) {
      mats.push_back(alg.evaluate(nodes[k].form));
      caps.push_back(map_cap(mats.back(), H.cap(nodes[k].type)));
    }
    for (std::size_t a = 0; a < caps.size(); ++a) {
      for (std::size_t b = a + 1; b < caps.size(); ++b) {
        ++out.pairs_checked;
        const double sep = cap_separation(caps[a], caps[b]);
        if (sep > 0.0) {
          out.min_separation = std::min(out.min_separation, sep);
          continue;
        }
        const int ta = nodes[begin + a].type, tb = nodes[begin + b].type;
        if (ta == tb && alg.in_j(ta, mats[a].inverse() * mats[b]) && caps_equal(caps[a], caps[b])) {
          continue;
        }
        if (out.ok) {
          out.ok = false;
          out.first_failure = word_to_string(alg.to_word(nodes[begin + a].form)) + " B" +
                              std::to_string(ta) + " meets " +
                              word_to_string(alg.to_word(nodes[begin + b].form)) + " B" +
                              std::to_string(tb);
        }
      }
    }
    begin = end;
  }
  return out;
}

InvarianceReport check_boundary_invariance(const GroupConfig& cfg, int max_length) {
  InvarianceReport out;
  if (!cfg.hnn) return out;
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  const Moebius f = alg.f();
  std::vector<std::pair<Word, Moebius>> elements;
  for (const auto& n : enumerate_hnn_forms(alg, max_length)) {
    const Moebius m = alg.evaluate(n.form);
    const Word w = alg.to_word(n.form);
    for (const auto& j : alg.j(n.type).members()) {
      elements.emplace_back(word_concat(w, j.words[0]), m * j.matrix);
    }
  }
  for (const auto& [w, g] : elements) {
    for (int i : {1, -1}) {
      const Cap img = map_cap(g, H.cap(i));
      for (int j : {1, -1}) {
        ++out.boundary_checked;
        const bool meet = boundaries_meet(img, H.cap(j), kTouch);
        bool predicted = false;
        if (i == j) {
          predicted = alg.in_j(i, g);
        } else {
          const Moebius fj = j > 0 ? f.inverse() : f;
          predicted = alg.in_j(i, fj * g);
        }
        if (meet != predicted && out.ok) {
          out.ok = false;
          out.first_failure = word_to_string(w) + ": boundary of B" + std::to_string(i) +
                              (meet ? " meets" : " misses") + " boundary of B" + std::to_string(j);
        }
      }
    }
  }
  return out;
}

VerificationReport verify_hnn(const GroupConfig& cfg) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "verify_hnn needs an HNN config");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  const FactorGroup& G0 = alg.base();
  VerificationReport rep;
  rep.mode = "hnn";
  rep.name = cfg.name;
  rep.depth = cfg.depth;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  rep.warnings = cfg.warnings;

  auto in_depth = [&](const Element& g) { return word_length(g.word) <= cfg.depth; };

  // (1) Precise invariance of (B_1, B_-1) under (J_1, J_-1) in G_0.
  {
    ConditionReport c = make_condition("1", "(B_1, B_-1) is precisely invariant under (J_1, J_-1)");
    MarginTracker t{c};
    for (const Element& g : G0.catalog()) {
      if (!in_depth(g)) continue;
      for (int i : {1, -1}) {
        const Cap img = map_cap(g.matrix, H.cap(i));
        const std::string tag = word_to_string(g.word) + " B" + std::to_string(i);
        if (alg.in_j(i, g.matrix)) {
          ++c.checked;
          const double dev = std::abs(img.radius - H.cap(i).radius) + angle_between(img.center, H.cap(i).center);
          if (dev > tol::kCapEqual) t.fail(g.word, tag + " should equal B" + std::to_string(i));
        } else {
          const double sep = cap_separation(img, H.cap(i));
          t.see(sep);
          if (!(sep > cfg.epsilon)) t.fail(g.word, tag + " meets B" + std::to_string(i) + ": margin " + fmt(sep));
        }
        const double cross = cap_separation(img, H.cap(-i));
        t.see(cross);
        if (!(cross > cfg.epsilon)) {
          t.fail(g.word, tag + " meets B" + std::to_string(-i) + ": margin " + fmt(cross));
        }
      }
    }
    if (c.verdict == Verdict::Certified && G0.catalog_closed()) {
      c.verdict = Verdict::CertifiedAllLengths;
      c.note = "G0 is finite and fully enumerated";
    }
    rep.conditions.push_back(std::move(c));
  }

  // (2) f(A u B_1) = Int(B_1), i.e. f maps the complement of B_-1 onto Int(B_1).
  {
    ConditionReport c = make_condition("2", "f(A u B_1) = Int(B_1)");
    c.checked = 1;
    const Cap img = map_cap(alg.f(), H.cap(-1).complement());
    const double dev = std::abs(img.radius - H.cap(1).radius) + angle_between(img.center, H.cap(1).center);
    if (dev > tol::kCapEqual || img.closed) {
      c.verdict = Verdict::Failed;
      c.witness = stable_word(alg, 1);
      c.note = "image of M \\ B_-1 differs from Int(B_1) by " + fmt(dev);
    } else {
      c.verdict = Verdict::CertifiedAllLengths;
      c.note = "exact cap equality, deviation " + fmt(dev);
    }
    rep.conditions.push_back(std::move(c));
  }

  const std::vector<SpherePoint> lam0 = approximate_limit_set(G0);
  const std::array<std::vector<SpherePoint>, 2> lam_j{approximate_limit_set(alg.j(1)),
                                                      approximate_limit_set(alg.j(-1))};

  // (3) Lambda(G_0) n B_i = Lambda(J_i), on finite proxies.
  {
    ConditionReport c = make_condition("3", "Lambda(G_0) n B_i = Lambda(J_i)", true);
    MarginTracker t{c};
    for (int i : {1, -1}) {
      const auto& lj = lam_j[i > 0 ? 0 : 1];
      for (const auto& p : lam0) {
        const double m = H.cap(i).point_margin(p);
        if (m < -cfg.delta) continue;
        const double d = nearest(lj, p);
        t.see(cfg.delta - d);
        if (d > cfg.delta) t.fail_point(p, "limit point of G0 in B" + std::to_string(i) + " not near Lambda(J)");
      }
      for (const auto& q : lj) {
        const double m = H.cap(i).point_margin(q);
        t.see(m + cfg.delta);
        if (m < -cfg.delta) t.fail_point(q, "limit point of J" + std::to_string(i) + " outside B" + std::to_string(i));
      }
    }
    if (c.checked == 0) c.note = "vacuous: G0 has no non-elliptic elements";
    rep.conditions.push_back(std::move(c));
  }

  // (4) A_0 = M \ G_0(B_1 u B_-1) is nonempty.
  {
    ConditionReport c = make_condition("4", "A_0 = M \\ G_0(B_1 u B_-1) is nonempty");
    std::optional<Word> capture;
    bool found = false;
    bool used_witness = true;
    for (const SpherePoint& p : witness_candidates(H.witness)) {
      double worst = kInf;
      for (const Element& g : G0.catalog()) {
        if (!in_depth(g)) continue;
        for (int i : {1, -1}) {
          const double m = -map_cap(g.matrix, H.cap(i)).point_margin(p);
          if (m < worst) {
            worst = m;
            if (!(m > cfg.epsilon) && !capture) capture = g.word;
          }
        }
      }
      ++c.checked;
      if (worst > cfg.epsilon) {
        found = true;
        c.margin = worst;
        c.witness_point = p;
        if (!used_witness || !H.witness) c.note = "found on the fallback grid";
        break;
      }
      used_witness = false;
    }
    if (!found) {
      c.verdict = Verdict::Failed;
      c.witness = capture;
      c.note = "every sample point lies in some translate g B_i";
    }
    rep.conditions.push_back(std::move(c));
  }

  // f is loxodromic, attracting into B_1 and repelling from B_-1.
  {
    ConditionReport c = make_condition("prop_i", "f is loxodromic with attractor in Int(B_1), repeller in Int(B_-1)");
    c.checked = 1;
    const Classification cl = classify(alg.f());
    if (cl.kind != MapClass::Loxodromic) {
      c.verdict = Verdict::Failed;
      c.witness = stable_word(alg, 1);
      c.note = std::string("f is ") + map_class_name(cl.kind);
    } else {
      const FixedPoints fp = fixed_points(alg.f());
      const double ma = H.cap(1).point_margin(fp.attracting());
      const double mr = H.cap(-1).point_margin(fp.repelling());
      c.margin = std::min(ma, mr);
      if (!(ma > cfg.epsilon && mr > cfg.epsilon)) {
        c.verdict = Verdict::Failed;
        c.witness = stable_word(alg, 1);
        c.note = "fixed points of f are not interior to B_1 / B_-1";
      }
    }
    rep.conditions.push_back(std::move(c));
  }
  {
    ConditionReport c = make_condition("prop_ii", "Lambda(J_i) lies on the boundary of B_i", true);
    MarginTracker t{c};
    for (int i : {1, -1}) {
      for (const auto& q : lam_j[i > 0 ? 0 : 1]) {
        const double d = chord_of_angle(H.cap(i).point_margin(q));
        t.see(cfg.delta - d);
        if (d > cfg.delta) t.fail_point(q, "J limit point off the boundary of B" + std::to_string(i));
      }
    }
    if (c.checked == 0) c.note = "vacuous: J_1 and J_-1 have no limit points";
    rep.conditions.push_back(std::move(c));
  }

  {
    const InvarianceReport pi = check_precise_invariance(cfg, cfg.depth);
    ConditionReport c = make_condition("improved_precise_invariance",
                                       "equal-length translates are disjoint or J-equivalent");
    c.checked = pi.pairs_checked;
    if (pi.pairs_checked) c.note = "min separation " + fmt(pi.min_separation);
    if (!pi.ok) {
      c.verdict = Verdict::Failed;
      c.note = pi.first_failure;
    }
    rep.conditions.push_back(std::move(c));
  }
  {
    const InvarianceReport bi = check_boundary_invariance(cfg, cfg.depth);
    ConditionReport c = make_condition("boundary_invariance",
                                       "g dB_i meets dB_j only for the two listed shapes");
    c.checked = bi.boundary_checked;
    if (!bi.ok) {
      c.verdict = Verdict::Failed;
      c.note = bi.first_failure;
    }
    rep.conditions.push_back(std::move(c));
  }

  std::vector<std::pair<Word, Moebius>> nontrivial;
  for (const auto& n : enumerate_hnn_forms(alg, cfg.depth)) {
    if (n.form.is_identity()) continue;
    nontrivial.emplace_back(alg.to_word(n.form), alg.evaluate(n.form));
  }
  finish_discreteness(rep, nontrivial);
  return rep;
}

VerificationReport verify(const GroupConfig& cfg) {
  return cfg.is_afp() ? verify_afp(cfg) : verify_hnn(cfg);
}

// ---------------------------------------------------------------------------
// Interactive pairs and triples

VerificationReport check_interactive_pair(const GroupConfig& cfg, const Region& u1_in,
                                          const Region& u2_in) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "interactive pairs need an amalgam config");
  const AfpAlgebra& alg = cfg.afp->algebra;
  auto open = [](const Region& r) {
    Region o;
    for (const Cap& c : r.caps) o.caps.push_back(c.interior());
    return o;
  };
  const std::array<Region, 2> u{open(u1_in), open(u2_in)};
  for (const Cap& a : u[0].caps) {
    for (const Cap& b : u[1].caps) {
      if (cap_separation(a, b) < -kTouch) throw Error(ErrorCode::Config, "U_1 and U_2 intersect");
    }
  }
  VerificationReport rep;
  rep.mode = "afp_pair";
  rep.name = cfg.name;
  rep.depth = cfg.depth;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  {
    ConditionReport c = make_condition("j_invariant", "U_i is J-invariant");
    for (const auto& g : alg.j().generators()) {
      for (int i : {1, 2}) {
        ++c.checked;
        if (region_deviation(map_region(g.matrix, u[i - 1]), u[i - 1]) > tol::kCapEqual &&
            c.verdict != Verdict::Failed) {
          c.verdict = Verdict::Failed;
          c.witness = g.words[i - 1];
        }
      }
    }
    rep.conditions.push_back(std::move(c));
  }
  std::array<bool, 2> strict{true, true};
  {
    ConditionReport c = make_condition("pair", "g U_i lies in U_{3-i} for g in G_i \\ J");
    MarginTracker t{c};
    for (int i : {1, 2}) {
      for (const Element& g : alg.factor(i).catalog()) {
        if (word_length(g.word) > cfg.depth || alg.in_j(g.matrix)) continue;
        const Region img = map_region(g.matrix, u[i - 1]);
        const SubsetResult r = region_subset_interior(img, u[2 - i], 0.0);
        t.see(r.margin);
        if (r.margin < -kTouch) {
          if (r.status == Containment::NotProved) {
            t.not_proved(g.word, "image is not inside a single cap of the target");
          } else {
            t.fail(g.word, word_to_string(g.word) + " U" + std::to_string(i) + " escapes U" + std::to_string(3 - i));
          }
        }
        if (region_deviation(img, u[2 - i]) <= tol::kCapEqual) strict[i - 1] = false;
      }
    }
    rep.conditions.push_back(std::move(c));
  }
  {
    ConditionReport c = make_condition("proper", "one side has only strict inclusions");
    c.checked = 2;
    if (!strict[0] && !strict[1]) {
      c.verdict = Verdict::Failed;
      c.note = "both sides have an element with g U_i = U_{3-i}";
    } else {
      c.note = strict[0] ? "strict on side 1" : "strict on side 2";
    }
    rep.conditions.push_back(std::move(c));
  }
  return rep;
}

VerificationReport check_interactive_triple(const GroupConfig& cfg, const Cap& k_plus,
                                            const Cap& k_minus, const Cap& u_plus_in,
                                            const Cap& u_minus_in) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "interactive triples need an HNN config");
  const HnnAlgebra& alg = cfg.hnn->algebra;
  const Cap up = u_plus_in.interior(), um = u_minus_in.interior();
  const Cap kp = k_plus.closure(), km = k_minus.closure();
  auto U = [&](int i) -> const Cap& { return i > 0 ? up : um; };
  auto K = [&](int i) -> const Cap& { return i > 0 ? kp : km; };
  if (cap_separation(up, um) < -kTouch) throw Error(ErrorCode::Config, "U_1 and U_-1 intersect");
  if (!(cap_separation(kp, km) > 0.0)) throw Error(ErrorCode::Config, "K_1 and K_-1 must be disjoint");
  for (int i : {1, -1}) {
    if (cap_subset(U(i), K(i)) < -kTouch) throw Error(ErrorCode::Config, "U_i must lie in K_i");
  }
  VerificationReport rep;
  rep.mode = "hnn_triple";
  rep.name = cfg.name;
  rep.depth = cfg.depth;
  rep.epsilon = cfg.epsilon;
  rep.delta = cfg.delta;
  {
    ConditionReport c = make_condition("1", "(U_1, U_-1) is precisely invariant under (J_1, J_-1)");
    ConditionReport c2 = make_condition("2", "g U_i lies in A u U_i");
    MarginTracker t{c}, t2{c2};
    for (const Element& g : alg.base().catalog()) {
      if (word_length(g.word) > cfg.depth) continue;
      for (int i : {1, -1}) {
        const Cap img = map_cap(g.matrix, U(i));
        if (alg.in_j(i, g.matrix)) {
          ++c.checked;
          if (!caps_equal(img, U(i))) t.fail(g.word, "J element moves U_i");
          continue;
        }
        const double s1 = cap_separation(img, U(i));
        t.see(s1);
        if (s1 < -kTouch) t.fail(g.word, "g U_i meets U_i");
        const double s2 = std::min(cap_separation(img, K(1)), cap_separation(img, K(-1)));
        t2.see(s2);
        if (s2 < -kTouch) t2.fail(g.word, "g U_i leaves A");
      }
      const double cross = cap_separation(map_cap(g.matrix, U(1)), U(-1));
      t.see(cross);
      if (cross < -kTouch) t.fail(g.word, "g U_1 meets U_-1");
    }
    rep.conditions.push_back(std::move(c));
    rep.conditions.push_back(std::move(c2));
  }
  {
    ConditionReport c = make_condition("3", "f(A u U_1) in U_1 and f^-1(A u U_-1) in U_-1");
    MarginTracker t{c};
    const double m1 = cap_subset(map_cap(alg.f(), K(-1).complement()), U(1));
    const double m2 = cap_subset(map_cap(alg.f().inverse(), K(1).complement()), U(-1));
    t.see(m1);
    t.see(m2);
    if (m1 < -kTouch) t.fail(stable_word(alg, 1), "f(M \\ K_-1) escapes U_1");
    if (m2 < -kTouch) t.fail(stable_word(alg, -1), "f^-1(M \\ K_1) escapes U_-1");
    rep.conditions.push_back(std::move(c));
  }
  {
    ConditionReport c = make_condition("proper", "A \\ G_0(U_1 u U_-1) is nonempty");
    bool found = false;
    for (const SpherePoint& p : witness_candidates(cfg.hnn->witness)) {
      ++c.checked;
      if (kp.contains(p) || km.contains(p)) continue;
      bool covered = false;
      for (const Element& g : alg.base().catalog()) {
        if (word_length(g.word) > cfg.depth) continue;
        for (int i : {1, -1}) covered = covered || map_cap(g.matrix, U(i)).contains(p);
        if (covered) break;
      }
      if (!covered) {
        c.witness_point = p;
        found = true;
        break;
      }
    }
    if (!found) {
      c.verdict = Verdict::Failed;
      c.note = "no sample point of A avoids the translates";
    }
    rep.conditions.push_back(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Nesting traces

TrackResult apply_form_track(const GroupConfig& cfg, const AfpForm& w, int start) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "amalgam form given for a non-amalgam config");
  const AfpConfig& A = *cfg.afp;
  if (start != 1 && start != 2) throw Error(ErrorCode::WrongShape, "start must be B1 or B2");
  TrackResult out;
  out.final_region = A.region(start);
  out.final_target = "B" + std::to_string(start);
  if (w.syllables.empty()) {
    if (w.j) {
      out.final_region = map_region(w.j->matrix, out.final_region);
      const double dev = region_deviation(out.final_region, A.region(start));
      if (dev > tol::kCapEqual) throw NestingViolation(1, -dev, "J element moves the start set");
      out.trace.push_back({w.j->word, out.final_target, 0.0, false});
    }
    return out;
  }
  if (w.syllables.back().factor != start) {
    throw Error(ErrorCode::WrongShape, "start set must be B_j for an (i,j)-form");
  }
  const std::size_t n = w.syllables.size();
  for (std::size_t k = n; k-- > 0;) {
    const AfpSyllable& s = w.syllables[k];
    out.final_region = map_region(s.g.matrix, out.final_region);
    const int target = 3 - s.factor;
    const SubsetResult r = region_subset_interior(out.final_region, A.region(target), 0.0);
    out.final_target = "Int(B" + std::to_string(target) + ")";
    out.trace.push_back({s.g.word, out.final_target, r.margin, true});
    if (r.status != Containment::Proved) {
      throw NestingViolation(n - k, r.margin,
                             "syllable " + word_to_string(s.g.word) + " does not nest into " + out.final_target);
    }
  }
  return out;
}

TrackResult apply_form_track(const GroupConfig& cfg, const HnnForm& w, int start) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "HNN form given for a non-HNN config");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  if (start != 1 && start != -1) throw Error(ErrorCode::WrongShape, "start must be B1 or B-1");
  if (w.length() > 0 && !alg.has_type(w, start)) {
    throw Error(ErrorCode::WrongShape, "form does not have the type of the start set");
  }
  auto name = [](int s) { return s > 0 ? std::string("1") : std::string("-1"); };
  TrackResult out;
  out.final_region = Region(H.cap(start));
  out.final_target = "B" + name(start);
  enum class State { Closed, Interior, Outside };
  State state = State::Closed;
  int side = start;
  std::size_t step = 0;

  auto check_inside = [&](bool strict, const Word& applied) {
    const SubsetResult r = region_subset_interior(out.final_region, Region(H.cap(side)), 0.0);
    out.trace.push_back({applied, out.final_target, r.margin, strict});
    const bool ok = strict ? r.margin > 0.0 : r.margin >= -kTouch;
    if (!ok) throw NestingViolation(step, r.margin, word_to_string(applied) + " breaks nesting into " + out.final_target);
  };
  auto check_outside = [&](const Word& applied) {
    double sep = kInf;
    for (const Cap& c : out.final_region.caps) {
      sep = std::min({sep, cap_separation(c, H.cap(1)), cap_separation(c, H.cap(-1))});
    }
    out.trace.push_back({applied, "A", sep, true});
    if (!(sep > 0.0)) throw NestingViolation(step, sep, word_to_string(applied) + " does not land in A");
  };
  auto apply_g = [&](const Element& g) {
    if (is_identity(g.matrix)) return;
    ++step;
    out.final_region = map_region(g.matrix, out.final_region);
    if (state == State::Outside) {
      throw NestingViolation(step, 0.0, "G0 element applied to a set in A");
    }
    if (alg.in_j(side, g.matrix)) {
      out.final_target = (state == State::Interior ? "Int(B" : "B") + name(side) +
                         (state == State::Interior ? ")" : "");
      check_inside(state == State::Interior, g.word);
    } else {
      state = State::Outside;
      out.final_target = "A";
      check_outside(g.word);
    }
  };
  auto apply_f = [&](int s) {
    ++step;
    if (state != State::Outside && side != s) {
      throw NestingViolation(step, 0.0, "f-power of the wrong sign applied to B" + name(side));
    }
    out.final_region = map_region(s > 0 ? alg.f() : alg.f().inverse(), out.final_region);
    state = State::Interior;
    side = s;
    out.final_target = "Int(B" + name(s) + ")";
    check_inside(true, stable_word(alg, s));
  };
  for (std::size_t k = w.syllables.size(); k-- > 0;) {
    const HnnSyllable& s = w.syllables[k];
    apply_g(s.g);
    for (int i = 0; i < std::abs(s.alpha); ++i) apply_f(s.alpha > 0 ? 1 : -1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nesting compacts

NestingCompact search_nesting_compact(const GroupConfig& cfg, int side, int depth, int j_bound) {
  NestingCompact out;
  std::vector<Cap> caps;
  std::vector<Word> owners;
  std::vector<Vec3> hints;
  auto add = [&](const Word& g, const JChoice& j, const Region& img) {
    for (const Cap& c : img.caps) {
      out.table.push_back({g, j.word, c});
      caps.push_back(c);
      owners.push_back(g);
    }
  };
  if (cfg.afp) {
    if (side != 1 && side != 2) throw Error(ErrorCode::Usage, "side must be 1 or 2");
    const AfpConfig& A = *cfg.afp;
    const AfpAlgebra& alg = A.algebra;
    for (const Element& g : alg.factor(side).catalog()) {
      if (word_length(g.word) > depth || alg.in_j(g.matrix)) continue;
      const JChoice j = best_j(alg.j(), g.matrix, A.region(side), j_bound, side - 1);
      add(g.word, j, map_region(j.matrix * g.matrix, A.region(side)));
    }
    if (caps.empty()) {
      out.empty = true;
      return out;
    }
    double best = -kInf;
    for (const Cap& t : A.region(3 - side).caps) {
      const Cap k = fit_cover_cap(caps, {t.center}, [&t](const Vec3& c, double r) {
        return t.radius - r - angle_between(c, t.center);
      });
      const double m = cap_subset(k, t);
      if (m > best) {
        best = m;
        out.k = k;
      }
    }
    out.margin = best;
    if (!(best > 0.0)) {
      std::size_t worst = 0;
      double wm = kInf;
      for (std::size_t i = 0; i < caps.size(); ++i) {
        double m = -kInf;
        for (const Cap& t : A.region(3 - side).caps) m = std::max(m, cap_subset(caps[i], t));
        if (m < wm) {
          wm = m;
          worst = i;
        }
      }
      throw Error(ErrorCode::NoCompactFound,
                  "no compact inside Int(B" + std::to_string(3 - side) + ") covers the translates; escaping witness " +
                      word_to_string(owners[worst]));
    }
    return out;
  }
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "config has no mode");
  if (side != 1 && side != -1) throw Error(ErrorCode::Usage, "side must be 1 or -1");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  for (const Element& g : alg.base().catalog()) {
    if (word_length(g.word) > depth) continue;
    if (!alg.in_j(side, g.matrix)) {
      const JChoice j = best_j(alg.j(side), g.matrix, Region(H.cap(side)), j_bound, 0);
      add(g.word, j, Region(map_cap(j.matrix * g.matrix, H.cap(side))));
    }
    const JChoice j = best_j(alg.j(side), g.matrix, Region(H.cap(-side)), j_bound, 0);
    add(g.word, j, Region(map_cap(j.matrix * g.matrix, H.cap(-side))));
  }
  const Cap& avoid = H.cap(side);
  hints.push_back(-avoid.center);
  out.k = fit_cover_cap(caps, hints, [&avoid](const Vec3& c, double r) {
    return angle_between(c, avoid.center) - r - avoid.radius;
  });
  out.margin = cap_separation(out.k, H.cap(side));
  if (!(out.margin > 0.0)) {
    std::size_t worst = 0;
    double wm = kInf;
    for (std::size_t i = 0; i < caps.size(); ++i) {
      const double m = cap_separation(caps[i], H.cap(side));
      if (m < wm) {
        wm = m;
        worst = i;
      }
    }
    throw Error(ErrorCode::NoCompactFound,
                "no compact avoiding B" + std::string(side > 0 ? "1" : "-1") +
                    " covers the translates; escaping witness " + word_to_string(owners[worst]));
  }
  return out;
}

}  // namespace maskit
