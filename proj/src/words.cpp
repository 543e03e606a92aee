// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "maskitlab/error.hpp"

namespace maskit {

namespace {

int sign(int x) { return (x > 0) - (x < 0); }

}  // namespace

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Letter& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(std::move(out));
}

Word word_power(const Word& w, int k) {
  const Word base = k >= 0 ? w : word_inverse(w);
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(std::move(out));
}

int word_length(const Word& w) {
  int n = 0;
  for (const Letter& l : w) n += std::abs(l.exp);
  return n;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i].gen;
    if (w[i].exp != 1) os << '^' << w[i].exp;
  }
  return os.str();
}

Word parse_word_text(const std::string& text) {
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), '*', ' ');
  std::istringstream is(norm);
  Word w;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    const auto caret = tok.find('^');
    Letter l{tok.substr(0, caret), 1};
    if (caret != std::string::npos) {
      const std::string e = tok.substr(caret + 1);
      char* end = nullptr;
      const long v = std::strtol(e.c_str(), &end, 10);
      if (e.empty() || *end != '\0' || v == 0) {
        throw Error(ErrorCode::Usage, "bad exponent in letter '" + tok + "'");
      }
      l.exp = static_cast<int>(v);
    }
    if (l.gen.empty()) throw Error(ErrorCode::Usage, "empty generator name in '" + tok + "'");
    w.push_back(l);
  }
  return w;
}

bool is_identity(const Moebius& m) {
  return projective_distance(m, Moebius::identity()) <= tol::kOracle;
}

// ---------------------------------------------------------------------------
// FactorGroup

FactorGroup::FactorGroup(std::string label, std::vector<std::pair<std::string, Moebius>> gens)
    : label_(std::move(label)), gens_(std::move(gens)) {
  build_catalog(0);
}

bool FactorGroup::has_generator(const std::string& name) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const auto& g) { return g.first == name; });
}

Moebius FactorGroup::evaluate(const Word& w) const {
  Moebius m;
  for (const Letter& l : w) {
    auto it = std::find_if(gens_.begin(), gens_.end(),
                           [&](const auto& g) { return g.first == l.gen; });
    if (it == gens_.end()) {
      throw Error(ErrorCode::Config, "unknown generator '" + l.gen + "' in group " + label_);
    }
    const Moebius step = l.exp >= 0 ? it->second : it->second.inverse();
    for (int i = 0; i < std::abs(l.exp); ++i) m = m * step;
  }
  return m;
}

void FactorGroup::build_catalog(int depth) {
  catalog_.clear();
  catalog_.push_back({{}, Moebius::identity()});
  closed_ = false;
  std::size_t layer_begin = 0;
  std::size_t layer_end = 1;
  for (int len = 1; len <= depth; ++len) {
    for (std::size_t idx = layer_begin; idx < layer_end; ++idx) {
      for (const auto& [name, gen] : gens_) {
        for (int e : {1, -1}) {
          const Word& base = catalog_[idx].word;
          if (!base.empty() && base.back().gen == name && sign(base.back().exp) != e) continue;
          Word w = base;
          w.push_back({name, e});
          w = free_reduce(std::move(w));
          const Moebius m = catalog_[idx].matrix * (e > 0 ? gen : gen.inverse());
          if (!find(m)) catalog_.push_back({std::move(w), m});
        }
      }
    }
    layer_begin = layer_end;
    layer_end = catalog_.size();
    if (layer_begin == layer_end) {
      closed_ = true;
      break;
    }
  }
  if (gens_.empty()) closed_ = true;
  catalog_depth_ = depth;
}

std::optional<std::size_t> FactorGroup::find(const Moebius& m) const {
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    if (projective_distance(catalog_[i].matrix, m) <= tol::kOracle) return i;
  }
  return std::nullopt;
}

Element FactorGroup::canonical(const Moebius& m, Word fallback) const {
  if (auto i = find(m)) return catalog_[*i];
  return {free_reduce(std::move(fallback)), m};
}

Element FactorGroup::element(const Word& w) const { return canonical(evaluate(w), w); }

Element FactorGroup::multiply(const Element& x, const Element& y) const {
  return canonical(x.matrix * y.matrix, word_concat(x.word, y.word));
}

Element FactorGroup::inverse(const Element& x) const {
  return canonical(x.matrix.inverse(), word_inverse(x.word));
}

// ---------------------------------------------------------------------------
// JOracle

namespace {

void add_member(std::vector<JOracle::Member>& out, JOracle::Member m) {
  for (const auto& e : out) {
    if (projective_distance(e.matrix, m.matrix) <= tol::kOracle) return;
  }
  out.push_back(std::move(m));
}

JOracle::Member member_inverse(const JOracle::Member& m) {
  return {{word_inverse(m.words[0]), word_inverse(m.words[1])}, m.matrix.inverse()};
}

JOracle::Member member_product(const JOracle::Member& a, const JOracle::Member& b) {
  return {{word_concat(a.words[0], b.words[0]), word_concat(a.words[1], b.words[1])},
          a.matrix * b.matrix};
}

}  // namespace

JOracle::JOracle() { members_.push_back({{}, Moebius::identity()}); }

JOracle JOracle::trivial() { return {}; }

JOracle JOracle::finite_list(std::vector<Member> elements) {
  JOracle o;
  o.kind_ = Kind::FiniteList;
  o.gens_ = elements;
  for (auto& e : elements) {
    add_member(o.members_, e);
    add_member(o.members_, member_inverse(e));
  }
  return o;
}

JOracle JOracle::cyclic(Member generator, int power_bound) {
  JOracle o;
  o.kind_ = Kind::Cyclic;
  o.bound_ = power_bound;
  o.gens_ = {generator};
  Member pos = generator;
  Member neg = member_inverse(generator);
  Member p = pos, n = neg;
  for (int k = 1; k <= power_bound; ++k) {
    if (is_identity(p.matrix)) {
      o.finite_order_ = true;
      break;
    }
    add_member(o.members_, p);
    add_member(o.members_, n);
    p = member_product(p, pos);
    n = member_product(n, neg);
  }
  return o;
}

JOracle JOracle::word_list(std::vector<Member> generators, int length_bound) {
  JOracle o;
  o.kind_ = Kind::WordList;
  o.bound_ = length_bound;
  o.gens_ = generators;
  std::vector<Member> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    letters.push_back(member_inverse(g));
  }
  std::size_t begin = 0, end = 1;
  for (int len = 1; len <= length_bound && begin < end; ++len) {
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& l : letters) add_member(o.members_, member_product(o.members_[i], l));
    }
    begin = end;
    end = o.members_.size();
  }
  return o;
}

std::optional<std::size_t> JOracle::find(const Moebius& m) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (projective_distance(members_[i].matrix, m) <= tol::kOracle) return i;
  }
  if (kind_ == Kind::Cyclic && !finite_order_ && !gens_.empty()) {
    const Moebius& g = gens_.front().matrix;
    if (projective_distance(g * m, m * g) <= tol::kOracle) {
      throw Error(ErrorCode::OracleOverflow,
                  "element commutes with the cyclic J generator but is not a power within the bound " +
                      std::to_string(bound_));
    }
  }
  return std::nullopt;
}

const char* oracle_kind_name(JOracle::Kind k) {
  switch (k) {
    case JOracle::Kind::Trivial: return "trivial";
    case JOracle::Kind::FiniteList: return "finite";
    case JOracle::Kind::Cyclic: return "cyclic";
    case JOracle::Kind::WordList: return "word_list";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// AFP

AfpAlgebra::AfpAlgebra(FactorGroup g1, FactorGroup g2, JOracle j)
    : g_{std::move(g1), std::move(g2)}, j_(std::move(j)) {}

int AfpAlgebra::factor_of(const std::string& gen) const {
  if (g_[0].has_generator(gen)) return 1;
  if (g_[1].has_generator(gen)) return 2;
  return 0;
}

Element AfpAlgebra::j_in_factor(int i, const Moebius& m) const {
  const auto idx = j_.find(m);
  if (!idx) throw Error(ErrorCode::Precondition, "element is not in J");
  return factor(i).canonical(m, j_.members()[*idx].words[i - 1]);
}

namespace {

// Stack state of a product under construction.
struct AfpStack {
  std::vector<AfpSyllable> syl;
  std::optional<Element> head_j;  // only when syl is empty
};

void afp_push(const AfpAlgebra& alg, AfpStack& st, int f, const Element& x) {
  if (is_identity(x.matrix)) return;
  if (st.syl.empty()) {
    Element y = x;
    if (st.head_j) y = alg.factor(f).multiply(alg.j_in_factor(f, st.head_j->matrix), x);
    st.head_j.reset();
    if (is_identity(y.matrix)) return;
    if (alg.in_j(y.matrix)) {
      st.head_j = alg.j_in_factor(1, y.matrix);
    } else {
      st.syl.push_back({f, std::move(y)});
    }
    return;
  }
  AfpSyllable& top = st.syl.back();
  if (top.factor != f) {
    if (alg.in_j(x.matrix)) {
      top.g = alg.factor(top.factor).multiply(top.g, alg.j_in_factor(top.factor, x.matrix));
    } else {
      st.syl.push_back({f, x});
    }
    return;
  }
  const Element z = alg.factor(f).multiply(top.g, x);
  st.syl.pop_back();
  if (is_identity(z.matrix)) return;
  if (alg.in_j(z.matrix)) {
    if (st.syl.empty()) {
      st.head_j = alg.j_in_factor(1, z.matrix);
    } else {
      AfpSyllable& prev = st.syl.back();
      prev.g = alg.factor(prev.factor).multiply(prev.g, alg.j_in_factor(prev.factor, z.matrix));
    }
    return;
  }
  st.syl.push_back({f, z});
}

AfpForm afp_finish(AfpStack st) {
  AfpForm out;
  out.syllables = std::move(st.syl);
  if (out.syllables.empty()) out.j = std::move(st.head_j);
  return out;
}

void afp_push_form(const AfpAlgebra& alg, AfpStack& st, const AfpForm& v) {
  if (v.j) afp_push(alg, st, 1, *v.j);
  for (const auto& s : v.syllables) afp_push(alg, st, s.factor, s.g);
}

}  // namespace

AfpForm AfpAlgebra::from_word(const Word& w) const {
  AfpStack st;
  for (const Letter& l : w) {
    const int f = factor_of(l.gen);
    if (f == 0) throw Error(ErrorCode::Config, "unknown generator '" + l.gen + "'");
    afp_push(*this, st, f, factor(f).element({l}));
  }
  return afp_finish(std::move(st));
}

AfpForm AfpAlgebra::concat(const AfpForm& u, const AfpForm& v) const {
  AfpStack st;
  afp_push_form(*this, st, u);
  afp_push_form(*this, st, v);
  return afp_finish(std::move(st));
}

AfpForm AfpAlgebra::invert(const AfpForm& w) const {
  AfpForm out;
  if (w.j) out.j = factor(1).inverse(*w.j);
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    out.syllables.push_back({it->factor, factor(it->factor).inverse(it->g)});
  }
  return out;
}

std::pair<int, int> AfpAlgebra::form_type(const AfpForm& w) const {
  if (w.syllables.empty()) throw Error(ErrorCode::WrongShape, "form type needs length >= 1");
  return {w.syllables.front().factor, w.syllables.back().factor};
}

AfpCyclicReduction AfpAlgebra::cyclic_reduce(const AfpForm& w) const {
  AfpCyclicReduction out;
  out.core = w;
  while (out.core.length() >= 2 &&
         out.core.syllables.front().factor == out.core.syllables.back().factor) {
    AfpForm s;
    s.syllables.push_back(out.core.syllables.front());
    out.conjugator = concat(out.conjugator, s);
    out.core = concat(concat(invert(s), out.core), s);
  }
  return out;
}

Moebius AfpAlgebra::evaluate(const AfpForm& w) const {
  Moebius m;
  if (w.j) m = w.j->matrix;
  for (const auto& s : w.syllables) m = m * s.g.matrix;
  return m;
}

Word AfpAlgebra::to_word(const AfpForm& w) const {
  Word out;
  if (w.j) out = w.j->word;
  for (const auto& s : w.syllables) out.insert(out.end(), s.g.word.begin(), s.g.word.end());
  return free_reduce(std::move(out));
}

std::string AfpAlgebra::validate(const AfpForm& w) const {
  if (w.j && !w.syllables.empty()) return "J flag on a form of positive length";
  if (w.j && (!in_j(w.j->matrix) || is_identity(w.j->matrix))) return "J flag on a non-J element";
  for (std::size_t k = 0; k < w.syllables.size(); ++k) {
    const auto& s = w.syllables[k];
    if (s.factor != 1 && s.factor != 2) return "bad factor index";
    if (in_j(s.g.matrix)) return "syllable " + std::to_string(k + 1) + " lies in J";
    if (k > 0 && w.syllables[k - 1].factor == s.factor) {
      return "syllables " + std::to_string(k) + " and " + std::to_string(k + 1) + " share a factor";
    }
    if (projective_distance(factor(s.factor).evaluate(s.g.word), s.g.matrix) > 1e-8) {
      return "syllable " + std::to_string(k + 1) + " word and matrix disagree";
    }
  }
  return {};
}

std::vector<Element> AfpAlgebra::derive_coset_reps(int i) const {
  std::vector<Element> reps;
  for (const Element& e : factor(i).catalog()) {
    if (in_j(e.matrix)) continue;
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](const Element& r) {
      return in_j(r.matrix.inverse() * e.matrix);
    });
    if (!seen) reps.push_back(e);
  }
  return reps;
}

std::vector<std::pair<std::size_t, std::size_t>> AfpAlgebra::coset_collisions(int i) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& reps = coset_reps(i);
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      if (in_j(reps[a].matrix.inverse() * reps[b].matrix)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<AfpForm> enumerate_afp_forms(const AfpAlgebra& alg, int max_length) {
  std::vector<AfpForm> out;
  out.emplace_back();
  if (max_length <= 0) return out;
  std::size_t begin = out.size();
  for (int i : {1, 2}) {
    for (const Element& c : alg.coset_reps(i)) {
      AfpForm f;
      f.syllables.push_back({i, c});
      out.push_back(std::move(f));
    }
  }
  for (int len = 2; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      const int next = 3 - out[k].syllables.back().factor;
      for (const Element& c : alg.coset_reps(next)) {
        AfpForm f = out[k];
        f.syllables.push_back({next, c});
        out.push_back(std::move(f));
      }
    }
    begin = end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// HNN

int HnnForm::length() const {
  int n = 0;
  for (const auto& s : syllables) n += std::abs(s.alpha);
  return n;
}

int HnnForm::first_sign() const { return syllables.empty() ? 0 : sign(syllables.front().alpha); }

int HnnForm::last_sign() const { return syllables.empty() ? 0 : sign(syllables.back().alpha); }

HnnAlgebra::HnnAlgebra(FactorGroup g0, std::string stable, Moebius f, JOracle j_plus,
                       JOracle j_minus)
    : g0_(std::move(g0)), stable_(std::move(stable)), f_(f), jp_(std::move(j_plus)),
      jm_(std::move(j_minus)) {}

Element HnnAlgebra::f_star(const Element& x, int s) const {
  const Moebius m = s > 0 ? f_ * x.matrix * f_.inverse() : f_.inverse() * x.matrix * f_;
  const JOracle& target = j(s);
  const auto idx = target.find(m);
  if (!idx) {
    throw Error(ErrorCode::Precondition, "conjugate by the stable letter left the edge group");
  }
  return g0_.canonical(m, target.members()[*idx].words[0]);
}

class HnnReducer {
 public:
  explicit HnnReducer(const HnnAlgebra& alg) : alg_(alg) {}

  void push_g0(const Element& x) {
    if (is_identity(x.matrix)) return;
    if (st_.empty()) {
      st_.push_back({0, x});
      return;
    }
    HnnSyllable& top = st_.back();
    top.g = alg_.g0_.multiply(top.g, x);
    if (top.alpha == 0 && is_identity(top.g.matrix)) st_.pop_back();
  }

  void push_f(int e) {
    if (st_.empty()) {
      st_.push_back({e, identity_});
      return;
    }
    HnnSyllable& top = st_.back();
    if (top.alpha == 0) {
      // Leading G_0 element: move a J_e element across the stable letter.
      if (!is_identity(top.g.matrix) && alg_.in_j(e, top.g.matrix)) {
        Element moved = alg_.f_star(top.g, -e);
        st_.back() = {e, std::move(moved)};
        return;
      }
      st_.push_back({e, identity_});
      return;
    }
    const int s = sign(top.alpha);
    if (s == -e && alg_.in_j(e, top.g.matrix)) {
      Element pinched = is_identity(top.g.matrix) ? identity_ : alg_.f_star(top.g, s);
      top.alpha += e;
      if (top.alpha != 0) {
        top.g = std::move(pinched);
        return;
      }
      st_.pop_back();
      push_g0(pinched);
      return;
    }
    if (s == e && is_identity(top.g.matrix)) {
      top.alpha += e;
      return;
    }
    st_.push_back({e, identity_});
  }

  void push_word(const Word& w) {
    for (const Letter& l : w) {
      if (l.gen == alg_.stable_) {
        for (int i = 0; i < std::abs(l.exp); ++i) push_f(sign(l.exp));
      } else {
        push_g0(alg_.g0_.element({l}));
      }
    }
  }

  void push_form(const HnnForm& w) {
    for (const auto& s : w.syllables) {
      for (int i = 0; i < std::abs(s.alpha); ++i) push_f(sign(s.alpha));
      push_g0(s.g);
    }
  }

  HnnForm finish() { return {std::move(st_)}; }

 private:
  const HnnAlgebra& alg_;
  std::vector<HnnSyllable> st_;
  Element identity_{{}, Moebius::identity()};
};

HnnForm HnnAlgebra::from_word(const Word& w) const {
  for (const Letter& l : w) {
    if (l.gen != stable_ && !g0_.has_generator(l.gen)) {
      throw Error(ErrorCode::Config, "unknown generator '" + l.gen + "'");
    }
  }
  HnnReducer r(*this);
  r.push_word(w);
  return r.finish();
}

Word HnnAlgebra::to_word(const HnnForm& w) const {
  Word out;
  for (const auto& s : w.syllables) {
    if (s.alpha != 0) out.push_back({stable_, s.alpha});
    out.insert(out.end(), s.g.word.begin(), s.g.word.end());
  }
  return free_reduce(std::move(out));
}

Moebius HnnAlgebra::evaluate(const HnnForm& w) const {
  Moebius m;
  const Moebius fi = f_.inverse();
  for (const auto& s : w.syllables) {
    for (int i = 0; i < std::abs(s.alpha); ++i) m = m * (s.alpha > 0 ? f_ : fi);
    m = m * s.g.matrix;
  }
  return m;
}

HnnForm HnnAlgebra::concat(const HnnForm& u, const HnnForm& v) const {
  HnnReducer r(*this);
  r.push_form(u);
  r.push_form(v);
  return r.finish();
}

int HnnAlgebra::type_mask(const HnnForm& w) const {
  if (w.syllables.empty()) return 0;
  const HnnSyllable& last = w.syllables.back();
  int mask = 0;
  if (last.alpha > 0 || !in_j(1, last.g.matrix)) mask |= 1;
  if (last.alpha < 0 || !in_j(-1, last.g.matrix)) mask |= 2;
  return mask;
}

bool HnnAlgebra::has_type(const HnnForm& w, int i) const {
  return (type_mask(w) & (i > 0 ? 1 : 2)) != 0;
}

HnnInverse HnnAlgebra::invert(const HnnForm& w) const {
  if (w.length() == 0 || w.first_sign() == 0) {
    throw Error(ErrorCode::WrongShape, "formal inverse needs an (i,j)-form with i = +1 or -1");
  }
  HnnInverse out;
  const auto& s = w.syllables;
  out.head = g0_.inverse(s.back().g);
  for (std::size_t k = s.size(); k-- > 0;) {
    Element g = k > 0 ? g0_.inverse(s[k - 1].g) : Element{{}, Moebius::identity()};
    out.tail.syllables.push_back({-s[k].alpha, std::move(g)});
  }
  HnnReducer r(*this);
  r.push_g0(out.head);
  r.push_form(out.tail);
  out.full = r.finish();
  return out;
}

HnnForm HnnAlgebra::inverse(const HnnForm& w) const {
  HnnReducer r(*this);
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    r.push_g0(g0_.inverse(it->g));
    for (int i = 0; i < std::abs(it->alpha); ++i) r.push_f(-sign(it->alpha));
  }
  return r.finish();
}

HnnPrefix HnnAlgebra::prefix_decompose(const HnnForm& w) const {
  if (w.length() == 0) throw Error(ErrorCode::WrongShape, "prefix decomposition needs length >= 1");
  HnnPrefix out;
  const HnnSyllable& last = w.syllables.back();
  out.j = sign(last.alpha);
  out.g0 = last.g;
  out.prefix.syllables.assign(w.syllables.begin(), w.syllables.end() - 1);
  if (last.alpha != out.j) out.prefix.syllables.push_back({last.alpha - out.j, {{}, Moebius::identity()}});
  return out;
}

std::string HnnAlgebra::validate(const HnnForm& w) const {
  const auto& s = w.syllables;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::string at = std::to_string(k + 1);
    if (k + 1 < s.size() && is_identity(s[k].g.matrix)) return "g_" + at + " is trivial";
    if (k > 0 && s[k].alpha == 0) return "alpha_" + at + " is zero";
    if (s.size() == 1 && s[0].alpha == 0 && is_identity(s[0].g.matrix)) {
      return "explicit identity syllable";
    }
    if (k > 0) {
      const HnnSyllable& p = s[k - 1];
      if (s[k].alpha < 0 && !is_identity(p.g.matrix) && in_j(-1, p.g.matrix) && p.alpha >= 0) {
        return "condition (3) fails at " + at;
      }
      if (s[k].alpha > 0 && !is_identity(p.g.matrix) && in_j(1, p.g.matrix) && p.alpha <= 0) {
        return "condition (4) fails at " + at;
      }
      if (sign(p.alpha) == -sign(s[k].alpha) && is_identity(p.g.matrix)) {
        return "free cancellation at " + at;
      }
    }
    if (projective_distance(g0_.evaluate(s[k].g.word), s[k].g.matrix) > 1e-8) {
      return "g_" + at + " word and matrix disagree";
    }
  }
  return {};
}

std::vector<Element> HnnAlgebra::derive_coset_reps(int i) const {
  std::vector<Element> reps;
  for (const Element& e : g0_.catalog()) {
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](const Element& r) {
      return in_j(i, r.matrix.inverse() * e.matrix);
    });
    if (!seen) reps.push_back(e);
  }
  return reps;
}

std::vector<std::pair<std::size_t, std::size_t>> HnnAlgebra::coset_collisions(int i) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& reps = coset_reps(i);
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = a + 1; b < reps.size(); ++b) {
      if (in_j(i, reps[a].matrix.inverse() * reps[b].matrix)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<HnnNode> enumerate_hnn_forms(const HnnAlgebra& alg, int max_length, int type_filter) {
  std::vector<HnnNode> all;
  for (int i : {1, -1}) {
    for (const Element& g : alg.coset_reps(i)) {
      HnnNode n;
      n.type = i;
      if (!is_identity(g.matrix)) n.form.syllables.push_back({0, g});
      all.push_back(std::move(n));
    }
  }
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = all.size();
    for (std::size_t k = begin; k < end; ++k) {
      const int j = all[k].type;
      for (int i : {1, -1}) {
        for (const Element& g : alg.coset_reps(i)) {
          if (i == -j && alg.in_j(-j, g.matrix)) continue;
          HnnNode child;
          child.type = i;
          child.form = all[k].form;
          auto& syl = child.form.syllables;
          if (!syl.empty() && sign(syl.back().alpha) == j && is_identity(syl.back().g.matrix)) {
            syl.back().alpha += j;
            syl.back().g = g;
          } else {
            syl.push_back({j, g});
          }
          all.push_back(std::move(child));
        }
      }
    }
    begin = end;
  }
  if (type_filter == 0) return all;
  std::vector<HnnNode> out;
  for (auto& n : all) {
    if (n.type == type_filter) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace maskit
