// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace maskit {

namespace {

constexpr double kTouch = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double chord(double angle) {
  return 2.0 * std::sin(0.5 * std::clamp(angle, 0.0, std::numbers::pi));
}

std::string level_tag(int level) { return "level " + std::to_string(level); }

void check_budget(const GroupConfig& cfg, std::size_t total) {
  if (total > cfg.max_caps) {
    throw Error(ErrorCode::EnumerationBudget,
                "cover needs " + std::to_string(total) + " caps, budget is " +
                    std::to_string(cfg.max_caps));
  }
}

double region_in_parent(const Region& child, const Region& parent) {
  return region_subset_interior(child, parent, 0.0).margin;
}

void add_point(std::vector<SpherePoint>& pts, const SpherePoint& p) {
  for (const auto& q : pts) {
    if (chordal_distance(p, q) <= 1e-9) return;
  }
  pts.push_back(p);
}

Word stable_power(const std::string& name, int e) {
  if (e == 0) return {};
  return {{name, e}};
}

}  // namespace

std::size_t DiskCover::size() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.size();
  return n;
}

Word DiskCover::form_word(const GroupConfig& cfg, int level, std::size_t index) const {
  std::vector<const CoverNode*> chain;
  for (int l = level; l >= 0; --l) {
    const CoverNode& n = levels.at(l).at(index);
    chain.push_back(&n);
    index = n.parent;
  }
  std::reverse(chain.begin(), chain.end());
  Word w;
  if (mode == Mode::Afp) {
    const AfpAlgebra& alg = cfg.afp->algebra;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      w = word_concat(w, alg.coset_reps(chain[k]->label).at(chain[k]->rep).word);
    }
    return free_reduce(w);
  }
  const HnnAlgebra& alg = cfg.hnn->algebra;
  for (const CoverNode* n : chain) {
    w = word_concat(w, stable_power(alg.stable_letter(), n->step_sign));
    w = word_concat(w, alg.coset_reps(n->label).at(n->rep).word);
  }
  return free_reduce(w);
}

DiskCover build_afp_cover(const GroupConfig& cfg, int depth) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "amalgam cover needs an amalgam config");
  const AfpConfig& A = *cfg.afp;
  const AfpAlgebra& alg = A.algebra;
  DiskCover cover;
  cover.mode = Mode::Afp;
  cover.levels.emplace_back();
  for (int j : {1, 2}) {
    CoverNode n;
    n.label = j;
    n.region = A.region(j);
    cover.levels[0].push_back(std::move(n));
  }
  std::size_t total = 2;
  for (int level = 1; level <= depth; ++level) {
    const auto& prev = cover.levels[level - 1];
    std::size_t next_count = 0;
    for (const CoverNode& p : prev) next_count += alg.coset_reps(3 - p.label).size();
    total += next_count;
    check_budget(cfg, total);
    std::vector<CoverNode> cur;
    cur.reserve(next_count);
    for (std::size_t pi = 0; pi < prev.size(); ++pi) {
      const CoverNode& p = prev[pi];
      const int next = 3 - p.label;
      const auto& reps = alg.coset_reps(next);
      for (std::size_t r = 0; r < reps.size(); ++r) {
        CoverNode n;
        n.parent = pi;
        n.label = next;
        n.rep = static_cast<int>(r);
        n.h = p.h * reps[r].matrix;
        n.region = map_region(n.h, A.region(next));
        n.parent_margin = region_in_parent(n.region, p.region);
        if (n.parent_margin < -kTouch) {
          throw NestingViolation(level, n.parent_margin,
                                 level_tag(level) + " translate escapes its parent");
        }
        cur.push_back(std::move(n));
      }
    }
    cover.levels.push_back(std::move(cur));
  }
  return cover;
}

DiskCover build_hnn_cover(const GroupConfig& cfg, int depth) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "HNN cover needs an HNN config");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  DiskCover cover;
  cover.mode = Mode::Hnn;
  cover.levels.emplace_back();
  for (int i : {1, -1}) {
    const auto& reps = alg.coset_reps(i);
    if (reps.empty()) throw Error(ErrorCode::Config, "no G0 coset representatives listed");
    for (std::size_t r = 0; r < reps.size(); ++r) {
      CoverNode n;
      n.label = i;
      n.rep = static_cast<int>(r);
      n.h = reps[r].matrix;
      n.region = Region(map_cap(n.h, H.cap(i)));
      cover.levels[0].push_back(std::move(n));
    }
  }
  std::size_t total = cover.levels[0].size();
  check_budget(cfg, total);
  const Moebius f = alg.f();
  const Moebius f_inv = f.inverse();
  for (int level = 1; level <= depth; ++level) {
    const auto& prev = cover.levels[level - 1];
    std::size_t next_count = 0;
    for (const CoverNode& p : prev) {
      for (int i : {1, -1}) {
        for (const Element& g : alg.coset_reps(i)) {
          if (!(i == -p.label && alg.in_j(-p.label, g.matrix))) ++next_count;
        }
      }
    }
    total += next_count;
    check_budget(cfg, total);
    std::vector<CoverNode> cur;
    cur.reserve(next_count);
    for (std::size_t pi = 0; pi < prev.size(); ++pi) {
      const CoverNode& p = prev[pi];
      const int j = p.label;
      const Moebius hf = p.h * (j > 0 ? f : f_inv);
      for (int i : {1, -1}) {
        const auto& reps = alg.coset_reps(i);
        for (std::size_t r = 0; r < reps.size(); ++r) {
          if (i == -j && alg.in_j(-j, reps[r].matrix)) continue;
          CoverNode n;
          n.parent = pi;
          n.label = i;
          n.step_sign = j;
          n.rep = static_cast<int>(r);
          n.h = hf * reps[r].matrix;
          const Cap c = map_cap(n.h, H.cap(i));
          n.parent_margin = cap_subset(c, p.region.caps.front());
          if (n.parent_margin < -kTouch) {
            throw NestingViolation(level, n.parent_margin,
                                   level_tag(level) + " translate escapes its parent");
          }
          n.region = Region(c);
          cur.push_back(std::move(n));
        }
      }
    }
    cover.levels.push_back(std::move(cur));
  }
  return cover;
}

DiskCover build_cover(const GroupConfig& cfg, int depth) {
  if (depth < 0) throw Error(ErrorCode::Usage, "depth must be nonnegative");
  return cfg.is_afp() ? build_afp_cover(cfg, depth) : build_hnn_cover(cfg, depth);
}

double region_diameter(const Region& r) {
  double d = 0.0;
  for (std::size_t a = 0; a < r.caps.size(); ++a) {
    for (std::size_t b = a; b < r.caps.size(); ++b) {
      const double span = angle_between(r.caps[a].center, r.caps[b].center) + r.caps[a].radius +
                          r.caps[b].radius;
      d = std::max(d, chord(span));
    }
  }
  return d;
}

ContractionStats contraction_stats(const DiskCover& cover) {
  ContractionStats out;
  if (cover.levels.empty()) return out;
  std::vector<double> prev;
  for (const CoverNode& n : cover.levels[0]) prev.push_back(region_diameter(n.region));
  for (std::size_t l = 1; l < cover.levels.size(); ++l) {
    LevelStats s;
    s.level = static_cast<int>(l);
    s.count = cover.levels[l].size();
    std::vector<double> cur;
    cur.reserve(s.count);
    double sum = 0.0;
    for (const CoverNode& n : cover.levels[l]) {
      if (n.parent_margin < -kTouch) {
        throw NestingViolation(l, n.parent_margin, level_tag(static_cast<int>(l)) + " is not nested");
      }
      const double d = region_diameter(n.region);
      cur.push_back(d);
      sum += d;
      s.max_diameter = std::max(s.max_diameter, d);
      const double pd = prev.at(n.parent);
      if (pd > 0.0) s.worst_ratio = std::max(s.worst_ratio, d / pd);
    }
    s.mean_diameter = s.count ? sum / static_cast<double>(s.count) : 0.0;
    if (l >= 2) out.worst_ratio_from_2 = std::max(out.worst_ratio_from_2, s.worst_ratio);
    out.levels.push_back(s);
    prev = std::move(cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coding

CodingSequence code_point_afp(const GroupConfig& cfg, const SpherePoint& x, int depth) {
  if (!cfg.afp) throw Error(ErrorCode::Usage, "amalgam coding needs an amalgam config");
  const AfpConfig& A = *cfg.afp;
  const AfpAlgebra& alg = A.algebra;
  CodingSequence out;
  out.x = x;
  out.requested_depth = depth;
  const double m1 = A.region(1).point_margin(x);
  const double m2 = A.region(2).point_margin(x);
  if (m1 < 0.0 && m2 < 0.0) throw Error(ErrorCode::OutsideT0, "point lies outside B1 and B2");
  int label = m1 >= m2 ? 1 : 2;
  out.base_label = label;
  Moebius h;
  Word form;
  for (int k = 0; k < depth; ++k) {
    const int next = 3 - label;
    const SpherePoint y = h.inverse()(x);
    const auto& reps = alg.coset_reps(next);
    std::optional<std::size_t> pick;
    double best = -kInf;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const double m = map_region(reps[r].matrix, A.region(next)).point_margin(y);
      if (m >= 0.0 && m > best) {
        best = m;
        pick = r;
      }
    }
    if (!pick) {
      out.escaped = true;
      break;
    }
    CodingStep s;
    s.syllable = reps[*pick].word;
    form = free_reduce(word_concat(form, s.syllable));
    s.form = form;
    h = h * reps[*pick].matrix;
    s.h = h;
    s.label = next;
    s.cap = map_region(h, A.region(next));
    s.diameter = region_diameter(s.cap);
    s.margin = s.cap.point_margin(x);
    out.steps.push_back(std::move(s));
    label = next;
  }
  return out;
}

CodingSequence code_point_hnn(const GroupConfig& cfg, const SpherePoint& x, int depth) {
  if (!cfg.hnn) throw Error(ErrorCode::Usage, "HNN coding needs an HNN config");
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  CodingSequence out;
  out.x = x;
  out.requested_depth = depth;
  double best = -kInf;
  const Element* base = nullptr;
  for (int i : {1, -1}) {
    for (const Element& g : alg.coset_reps(i)) {
      const double m = map_cap(g.matrix, H.cap(i)).point_margin(x);
      if (m > best) {
        best = m;
        base = &g;
        out.base_label = i;
      }
    }
  }
  if (!base || best < 0.0) throw Error(ErrorCode::OutsideT0, "point lies in no level-0 translate");
  out.base = base->word;
  out.base_h = base->matrix;
  Moebius h = base->matrix;
  Word form = base->word;
  int label = out.base_label;
  for (int k = 0; k < depth; ++k) {
    const int j = label;
    const Moebius hf = h * (j > 0 ? alg.f() : alg.f().inverse());
    const SpherePoint y = hf.inverse()(x);
    const Element* pick = nullptr;
    int pick_type = 0;
    double top = -kInf;
    for (int i : {1, -1}) {
      for (const Element& g : alg.coset_reps(i)) {
        if (i == -j && alg.in_j(-j, g.matrix)) continue;
        const double m = map_cap(g.matrix, H.cap(i)).point_margin(y);
        if (m >= 0.0 && m > top) {
          top = m;
          pick = &g;
          pick_type = i;
        }
      }
    }
    if (!pick) {
      out.escaped = true;
      break;
    }
    CodingStep s;
    s.syllable = word_concat(stable_power(alg.stable_letter(), j), pick->word);
    form = free_reduce(word_concat(form, s.syllable));
    s.form = form;
    h = hf * pick->matrix;
    s.h = h;
    s.label = pick_type;
    s.step_sign = j;
    s.cap = Region(map_cap(h, H.cap(pick_type)));
    s.diameter = region_diameter(s.cap);
    s.margin = s.cap.point_margin(x);
    out.steps.push_back(std::move(s));
    label = pick_type;
  }
  return out;
}

CodingSequence code_point(const GroupConfig& cfg, const SpherePoint& x, int depth) {
  if (depth < 0) throw Error(ErrorCode::Usage, "depth must be nonnegative");
  return cfg.is_afp() ? code_point_afp(cfg, x, depth) : code_point_hnn(cfg, x, depth);
}

// ---------------------------------------------------------------------------
// Conical witnesses

namespace {

void require_distinct(const std::vector<Moebius>& gs) {
  for (std::size_t a = 0; a < gs.size(); ++a) {
    for (std::size_t b = a + 1; b < gs.size(); ++b) {
      if (projective_distance(gs[a], gs[b]) <= tol::kOracle) {
        throw Error(ErrorCode::Precondition, "witness elements repeat");
      }
    }
  }
}

[[noreturn]] void witness_failed(int k, double margin, const std::string& what) {
  throw Error(ErrorCode::WitnessFailed,
              "step " + std::to_string(k) + ": " + what + " (margin " + std::to_string(margin) + ")");
}

}  // namespace

ConicalWitness conical_witness(const GroupConfig& cfg, const CodingSequence& coding, int j_bound) {
  if (coding.escaped) throw Error(ErrorCode::Precondition, "coding escaped before full depth");
  if (coding.steps.size() < 2) throw Error(ErrorCode::Precondition, "coding needs at least two steps");
  ConicalWitness out;
  std::vector<Moebius> gs;
  if (cfg.afp) {
    const AfpConfig& A = *cfg.afp;
    const AfpAlgebra& alg = A.algebra;
    const int s = coding.base_label;
    out.side = s;
    const NestingCompact nc = search_nesting_compact(cfg, s, cfg.depth, j_bound);
    out.k = nc.k;
    out.k_separation = kInf;
    for (const Cap& b : A.region(s).caps) {
      out.k_separation = std::min(out.k_separation, cap_separation(nc.k, b));
    }
    if (nc.empty || !(out.k_separation > 0.0)) witness_failed(0, out.k_separation, "K meets the anchor set");
    for (std::size_t idx = 1; idx < coding.steps.size(); idx += 2) {
      const CodingStep& st = coding.steps[idx];
      const int k = static_cast<int>(idx + 1) / 2;
      const Moebius hinv = st.h.inverse();
      const JChoice j = best_j(alg.j(), hinv, A.region(3 - s), j_bound, s - 1);
      const Moebius g = j.matrix * hinv;
      ConicalStep cs;
      cs.k = k;
      cs.g = free_reduce(word_concat(j.word, word_inverse(st.form)));
      cs.point_margin = A.region(s).point_margin(g(coding.x));
      cs.set_margin = kInf;
      for (const Cap& c : map_region(g, A.region(3 - s)).caps) {
        cs.set_margin = std::min(cs.set_margin, cap_subset(c, nc.k));
      }
      if (cs.point_margin < -kTouch) witness_failed(k, cs.point_margin, "g_k x leaves the anchor set");
      if (!(cs.set_margin > 0.0)) witness_failed(k, cs.set_margin, "g_k Y is not inside K");
      gs.push_back(g);
      out.steps.push_back(std::move(cs));
    }
    require_distinct(gs);
    return out;
  }
  const HnnConfig& H = *cfg.hnn;
  const HnnAlgebra& alg = H.algebra;
  const int i = coding.steps.front().step_sign;
  out.side = i;
  const NestingCompact nc = search_nesting_compact(cfg, i, cfg.depth, j_bound);
  out.k = nc.k;
  out.k_separation = cap_separation(nc.k, H.cap(i));
  if (!(out.k_separation > 0.0)) witness_failed(0, out.k_separation, "K meets the anchor set");
  const Moebius base_inv = coding.base_h.inverse();
  const SpherePoint xp = base_inv(coding.x);
  for (std::size_t idx = 0; idx < coding.steps.size(); ++idx) {
    const CodingStep& st = coding.steps[idx];
    if (st.label != i) continue;
    const int k = static_cast<int>(idx) + 1;
    const Moebius hinv = (base_inv * st.h).inverse();
    const JChoice j = best_j(alg.j(i), hinv, Region(H.cap(-i)), j_bound, 0);
    const Moebius g = j.matrix * hinv;
    ConicalStep cs;
    cs.k = k;
    cs.g = free_reduce(word_concat(j.word, word_concat(word_inverse(st.form), coding.base)));
    cs.point_margin = H.cap(i).point_margin(g(xp));
    cs.set_margin = cap_subset(map_cap(g, H.cap(-i)), nc.k);
    if (cs.point_margin < -kTouch) witness_failed(k, cs.point_margin, "g_k x leaves the anchor set");
    if (!(cs.set_margin > 0.0)) witness_failed(k, cs.set_margin, "g_k Y is not inside K");
    gs.push_back(g);
    out.steps.push_back(std::move(cs));
  }
  if (out.steps.empty()) throw Error(ErrorCode::Precondition, "no coding step returns to the anchor type");
  require_distinct(gs);
  return out;
}

// ---------------------------------------------------------------------------
// Clouds and images

std::vector<SpherePoint> limit_point_cloud(const GroupConfig& cfg, const DiskCover& cover) {
  std::vector<SpherePoint> out;
  const int depth = cover.depth();
  if (depth >= 1) {
    for (const CoverNode& n : cover.levels.back()) {
      for (const Cap& c : n.region.caps) out.push_back(SpherePoint::from_vector(c.center));
    }
  }
  std::vector<SpherePoint> seeds;
  if (cfg.afp) {
    for (int i : {1, 2}) {
      for (const auto& p : approximate_limit_set(cfg.afp->algebra.factor(i))) add_point(seeds, p);
    }
  } else {
    for (const auto& p : approximate_limit_set(cfg.hnn->algebra.base())) add_point(seeds, p);
  }
  std::vector<SpherePoint> translates;
  const int top = std::min(depth, 2);
  for (int l = 0; l <= top && l < static_cast<int>(cover.levels.size()); ++l) {
    for (const CoverNode& n : cover.levels[l]) {
      for (const auto& p : seeds) add_point(translates, n.h(p));
    }
  }
  if (cover.levels.empty()) translates = seeds;
  out.insert(out.end(), translates.begin(), translates.end());
  return out;
}

std::vector<SpherePoint> limit_point_cloud(const GroupConfig& cfg, int depth) {
  return limit_point_cloud(cfg, build_cover(cfg, depth));
}

std::string render_ppm(const DiskCover& cover, const std::vector<SpherePoint>& cloud,
                       const ImageOptions& opts) {
  if (opts.width <= 0 || opts.height <= 0) throw Error(ErrorCode::Usage, "image size must be positive");
  const auto [x0, y0, x1, y1] = opts.window;
  if (!(x1 > x0) || !(y1 > y0)) throw Error(ErrorCode::Usage, "window must have x1 > x0 and y1 > y0");
  const std::string header =
      "P6\n" + std::to_string(opts.width) + " " + std::to_string(opts.height) + "\n255\n";
  const std::size_t w = static_cast<std::size_t>(opts.width);
  const std::size_t hgt = static_cast<std::size_t>(opts.height);
  std::string img(header.size() + 3 * w * hgt, static_cast<char>(255));
  std::copy(header.begin(), header.end(), img.begin());
  char* px = img.data() + header.size();
  const double sx = (x1 - x0) / opts.width;
  const double sy = (y1 - y0) / opts.height;
  if (!cover.levels.empty()) {
    for (std::size_t r = 0; r < hgt; ++r) {
      for (std::size_t c = 0; c < w; ++c) {
        const cplx z{x0 + (static_cast<double>(c) + 0.5) * sx, y1 - (static_cast<double>(r) + 0.5) * sy};
        const SpherePoint p = SpherePoint::from_complex(z);
        for (const CoverNode& n : cover.levels[0]) {
          if (n.region.contains(p)) {
            char* q = px + 3 * (r * w + c);
            q[0] = q[1] = q[2] = static_cast<char>(220);
            break;
          }
        }
      }
    }
  }
  for (const SpherePoint& p : cloud) {
    if (p.is_infinity(1e-12)) continue;
    const cplx z = p.affine();
    const double fc = (z.real() - x0) / sx;
    const double fr = (y1 - z.imag()) / sy;
    if (!(fc >= 0.0 && fc < opts.width && fr >= 0.0 && fr < opts.height)) continue;
    char* q = px + 3 * (static_cast<std::size_t>(fr) * w + static_cast<std::size_t>(fc));
    q[0] = q[1] = q[2] = 0;
  }
  return img;
}

}  // namespace maskit
