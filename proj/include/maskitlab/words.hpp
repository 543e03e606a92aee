// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// Words, finite factor catalogs, J-membership oracles and the normal forms of
// amalgamated free products and HNN extensions.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maskitlab/sphere.hpp"

namespace maskit {

struct Letter {
  std::string gen;
  int exp = 1;
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Merges adjacent powers of the same generator and drops zero exponents.
Word free_reduce(Word w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_power(const Word& w, int k);
/// Sum of |exponent|.
int word_length(const Word& w);
/// "u v^-1 f^2"; the empty word prints as "1".
std::string word_to_string(const Word& w);
/// Inverse of word_to_string: "u v^-1 f^2", "1" or "" for the identity.
/// Letters may also be separated by '*'. Throws Usage on malformed input.
Word parse_word_text(const std::string& text);

struct Element {
  Word word;
  Moebius matrix;
};

bool is_identity(const Moebius& m);

/// A finitely generated group of Moebius maps with a shortlex catalog of its
/// elements up to some word length, used to give products canonical words.
class FactorGroup {
 public:
  FactorGroup() = default;
  FactorGroup(std::string label, std::vector<std::pair<std::string, Moebius>> gens);

  const std::string& label() const { return label_; }
  const std::vector<std::pair<std::string, Moebius>>& generators() const { return gens_; }
  bool has_generator(const std::string& name) const;
  /// Throws Config on an unknown generator.
  Moebius evaluate(const Word& w) const;

  /// Catalog of distinct elements with word length <= depth, identity first.
  void build_catalog(int depth);
  const std::vector<Element>& catalog() const { return catalog_; }
  int catalog_depth() const { return catalog_depth_; }
  /// True when the last BFS layer produced nothing new, so the catalog is the
  /// whole (finite) group.
  bool catalog_closed() const { return closed_; }
  std::optional<std::size_t> find(const Moebius& m) const;

  /// Word taken from the catalog when the element is listed, else `fallback`.
  Element canonical(const Moebius& m, Word fallback) const;
  Element element(const Word& w) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;

 private:
  std::string label_;
  std::vector<std::pair<std::string, Moebius>> gens_;
  std::vector<Element> catalog_;
  int catalog_depth_ = -1;
  bool closed_ = false;
};

/// Membership oracle for an edge subgroup. Members are materialized with one
/// word per alphabet: AFP uses slots 0 and 1 for the two factors, HNN only
/// slot 0.
class JOracle {
 public:
  enum class Kind { Trivial, FiniteList, Cyclic, WordList };

  struct Member {
    std::array<Word, 2> words;
    Moebius matrix;
  };

  JOracle();
  static JOracle trivial();
  /// `elements` need not include the identity or be closed under inverses;
  /// both are added.
  static JOracle finite_list(std::vector<Member> elements);
  static JOracle cyclic(Member generator, int power_bound);
  static JOracle word_list(std::vector<Member> generators, int length_bound);

  Kind kind() const { return kind_; }
  const std::vector<Member>& generators() const { return gens_; }
  const std::vector<Member>& members() const { return members_; }
  int bound() const { return bound_; }

  /// Index into members(). Throws OracleOverflow when a cyclic oracle of
  /// infinite order sees an element commuting with its generator that no
  /// listed power matches.
  std::optional<std::size_t> find(const Moebius& m) const;
  bool contains(const Moebius& m) const { return find(m).has_value(); }
  bool is_trivial() const { return members_.size() == 1; }

 private:
  Kind kind_ = Kind::Trivial;
  std::vector<Member> gens_;
  std::vector<Member> members_;
  int bound_ = 0;
  /// A power of the cyclic generator returned to the identity.
  bool finite_order_ = false;
};

const char* oracle_kind_name(JOracle::Kind k);

// ---------------------------------------------------------------------------
// Amalgamated free products

struct AfpSyllable {
  int factor = 1;  // 1 or 2
  Element g;
};

struct AfpForm {
  std::vector<AfpSyllable> syllables;
  /// Nontrivial element of J when the form has length 0.
  std::optional<Element> j;

  std::size_t length() const { return syllables.size(); }
  bool is_identity() const { return syllables.empty() && !j; }
};

struct AfpCyclicReduction {
  AfpForm conjugator;  // w = conjugator * core * conjugator^-1
  AfpForm core;
};

class AfpAlgebra {
 public:
  AfpAlgebra() = default;
  AfpAlgebra(FactorGroup g1, FactorGroup g2, JOracle j);

  const FactorGroup& factor(int i) const { return g_.at(i - 1); }
  FactorGroup& factor(int i) { return g_.at(i - 1); }
  const JOracle& j() const { return j_; }
  /// 1 or 2 for a generator name, 0 if unknown.
  int factor_of(const std::string& gen) const;

  bool in_j(const Moebius& m) const { return j_.contains(m); }
  /// The J element m written in factor i's alphabet; m must lie in J.
  Element j_in_factor(int i, const Moebius& m) const;

  AfpForm from_word(const Word& w) const;
  AfpForm concat(const AfpForm& u, const AfpForm& v) const;
  AfpForm invert(const AfpForm& w) const;
  /// (first factor, last factor); WrongShape for length 0.
  std::pair<int, int> form_type(const AfpForm& w) const;
  AfpCyclicReduction cyclic_reduce(const AfpForm& w) const;
  Moebius evaluate(const AfpForm& w) const;
  Word to_word(const AfpForm& w) const;
  /// Empty string when every normal-form invariant holds.
  std::string validate(const AfpForm& w) const;

  /// Left J-coset representatives of G_i \ J, never containing J itself.
  void set_coset_reps(int i, std::vector<Element> reps) { reps_.at(i - 1) = std::move(reps); }
  const std::vector<Element>& coset_reps(int i) const { return reps_.at(i - 1); }
  /// Derives representatives from the factor catalog; returns them.
  std::vector<Element> derive_coset_reps(int i) const;
  /// Pairs of listed representatives lying in the same left J-coset.
  std::vector<std::pair<std::size_t, std::size_t>> coset_collisions(int i) const;

 private:
  std::array<FactorGroup, 2> g_;
  JOracle j_;
  std::array<std::vector<Element>, 2> reps_;
};

/// All reduced forms c_1...c_n with c_k listed coset representatives of
/// alternating factors, n <= max_length, ordered by length then generation.
/// Includes the identity form first.
std::vector<AfpForm> enumerate_afp_forms(const AfpAlgebra& alg, int max_length);

// ---------------------------------------------------------------------------
// HNN extensions

struct HnnSyllable {
  int alpha = 0;
  Element g;
};

struct HnnForm {
  std::vector<HnnSyllable> syllables;

  int length() const;
  bool is_identity() const { return syllables.empty(); }
  /// Sign of the first f-exponent, 0 when the form starts with a G_0 element.
  int first_sign() const;
  /// Sign of the last f-exponent; 0 for length 0.
  int last_sign() const;
};

struct HnnInverse {
  Element head;   // g_n^-1
  HnnForm tail;   // f^{-a_n} g_{n-1}^-1 ... g_1^-1 f^{-a_1}
  HnnForm full;   // reduced product head * tail
};

struct HnnPrefix {
  HnnForm prefix;
  int j = 1;
  Element g0;
};

class HnnAlgebra {
 public:
  HnnAlgebra() = default;
  HnnAlgebra(FactorGroup g0, std::string stable, Moebius f, JOracle j_plus, JOracle j_minus);

  const FactorGroup& base() const { return g0_; }
  FactorGroup& base() { return g0_; }
  const std::string& stable_letter() const { return stable_; }
  const Moebius& f() const { return f_; }
  /// J_1 for i = 1, J_-1 for i = -1.
  const JOracle& j(int i) const { return i > 0 ? jp_ : jm_; }
  bool in_j(int i, const Moebius& m) const { return j(i).contains(m); }

  /// f j f^-1 for j in J_-1 (as an element of J_1 written over G_0) and its
  /// inverse direction for s = -1.
  Element f_star(const Element& x, int s) const;

  HnnForm from_word(const Word& w) const;
  Word to_word(const HnnForm& w) const;
  Moebius evaluate(const HnnForm& w) const;
  HnnForm concat(const HnnForm& u, const HnnForm& v) const;
  /// Subset of {+1, -1} (bit 1 for +1, bit 2 for -1).
  int type_mask(const HnnForm& w) const;
  bool has_type(const HnnForm& w, int i) const;
  /// WrongShape unless w is an (i, j)-form with i != 0.
  HnnInverse invert(const HnnForm& w) const;
  /// Plain group inverse, reduced.
  HnnForm inverse(const HnnForm& w) const;
  /// WrongShape for length 0.
  HnnPrefix prefix_decompose(const HnnForm& w) const;
  std::string validate(const HnnForm& w) const;

  void set_coset_reps(int i, std::vector<Element> reps) { reps_[i > 0 ? 0 : 1] = std::move(reps); }
  /// Left J_i-coset representatives of G_0, identity first.
  const std::vector<Element>& coset_reps(int i) const { return reps_[i > 0 ? 0 : 1]; }
  std::vector<Element> derive_coset_reps(int i) const;
  std::vector<std::pair<std::size_t, std::size_t>> coset_collisions(int i) const;

 private:
  friend class HnnReducer;
  FactorGroup g0_;
  std::string stable_ = "f";
  Moebius f_;
  JOracle jp_, jm_;
  std::array<std::vector<Element>, 2> reps_;
};

struct HnnNode {
  HnnForm form;
  int type = 1;  // the B-set index the form is paired with
};

/// One node per (left J-coset, type): level 0 is g_0 with B_i, level m+1 is
/// h f^j g_0 with B_i for each level-m node (h, j). Ordered by length, then
/// generation order. type_filter 0 keeps both types.
std::vector<HnnNode> enumerate_hnn_forms(const HnnAlgebra& alg, int max_length,
                                         int type_filter = 0);

}  // namespace maskit
