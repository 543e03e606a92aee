// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "maskitlab/error.hpp"

namespace maskit {

using json::ojson;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

std::vector<std::pair<std::string, Moebius>> parse_generators(const ojson& j,
                                                              const std::string& what) {
  if (!j.is_object() || j.empty()) config_error(what + ": needs at least one generator");
  std::vector<std::pair<std::string, Moebius>> out;
  for (const auto& [name, m] : j.items()) {
    if (name.empty()) config_error(what + ": empty generator name");
    out.emplace_back(name, json::parse_matrix(m, what + "." + name));
  }
  return out;
}

using MemberParser = std::function<JOracle::Member(const ojson&, const std::string&)>;

JOracle parse_oracle(const ojson& j, const std::string& what, const MemberParser& member) {
  if (j.is_null()) return JOracle::trivial();
  if (!j.is_object()) config_error(what + ": oracle must be an object");
  const std::string kind = j.value("kind", "trivial");
  if (kind == "trivial") return JOracle::trivial();
  if (kind == "finite") {
    std::vector<JOracle::Member> els;
    const auto& list = j.at("elements");
    for (std::size_t i = 0; i < list.size(); ++i) {
      els.push_back(member(list[i], what + ".elements[" + std::to_string(i) + "]"));
    }
    return JOracle::finite_list(std::move(els));
  }
  if (kind == "cyclic") {
    const int bound = j.value("power_bound", 16);
    if (bound < 1) config_error(what + ": power_bound must be positive");
    return JOracle::cyclic(member(j.at("generator"), what + ".generator"), bound);
  }
  if (kind == "word_list") {
    std::vector<JOracle::Member> gens;
    const auto& list = j.at("generators");
    for (std::size_t i = 0; i < list.size(); ++i) {
      gens.push_back(member(list[i], what + ".generators[" + std::to_string(i) + "]"));
    }
    const int bound = j.value("length_bound", 4);
    if (bound < 1) config_error(what + ": length_bound must be positive");
    return JOracle::word_list(std::move(gens), bound);
  }
  config_error(what + ": unknown oracle kind '" + kind + "'");
}

std::vector<Element> parse_reps(const ojson& j, const FactorGroup& g, const std::string& what) {
  if (!j.is_array()) config_error(what + ": expected a list of words");
  std::vector<Element> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(g.element(json::parse_word(j[i], what + "[" + std::to_string(i) + "]")));
  }
  return out;
}

void read_common(GroupConfig& cfg, const ojson& j) {
  cfg.name = j.value("name", "");
  if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
  if (j.contains("j_bound")) cfg.j_bound = j["j_bound"].get<int>();
  if (j.contains("max_caps")) cfg.max_caps = j["max_caps"].get<std::size_t>();
  if (!(cfg.epsilon >= 0.0)) config_error("epsilon must be nonnegative");
  if (!(cfg.delta > 0.0)) config_error("delta must be positive");
  if (cfg.depth < 0 || cfg.depth > 64) config_error("depth must lie in [0, 64]");
  if (cfg.j_bound < 0) config_error("j_bound must be nonnegative");
}

void load_afp(GroupConfig& cfg, const ojson& j) {
  const auto& gens = j.at("generators");
  FactorGroup g1("G1", parse_generators(gens.at("G1"), "generators.G1"));
  FactorGroup g2("G2", parse_generators(gens.at("G2"), "generators.G2"));
  for (const auto& [name, m] : g1.generators()) {
    if (g2.has_generator(name)) config_error("generator '" + name + "' appears in both factors");
  }
  auto member = [&](const ojson& m, const std::string& what) {
    if (!m.is_object() || !m.contains("G1") || !m.contains("G2")) {
      config_error(what + ": a J element needs words in both factors {\"G1\": .., \"G2\": ..}");
    }
    JOracle::Member out;
    out.words[0] = free_reduce(json::parse_word(m["G1"], what + ".G1"));
    out.words[1] = free_reduce(json::parse_word(m["G2"], what + ".G2"));
    out.matrix = g1.evaluate(out.words[0]);
    if (!projectively_equal(out.matrix, g2.evaluate(out.words[1]), tol::kOracle)) {
      config_error(what + ": J words disagree across the two factors");
    }
    return out;
  };
  JOracle jo = parse_oracle(j.value("j", ojson()), "j", member);

  AfpConfig afp;
  afp.b[0] = json::parse_region(j.at("B1"), "B1");
  afp.b[1] = json::parse_region(j.at("B2"), "B2");
  for (const Cap& a : afp.b[0].caps) {
    for (const Cap& b : afp.b[1].caps) {
      if (cap_separation(a, b) < -1e-9) config_error("Int(B1) and Int(B2) intersect");
    }
  }
  afp.algebra = AfpAlgebra(std::move(g1), std::move(g2), std::move(jo));
  if (j.contains("coset_reps")) {
    const auto& reps = j["coset_reps"];
    for (int i : {1, 2}) {
      const std::string key = "G" + std::to_string(i);
      if (!reps.contains(key)) continue;
      auto list = parse_reps(reps[key], afp.algebra.factor(i), "coset_reps." + key);
      for (const Element& e : list) {
        if (afp.algebra.in_j(e.matrix)) {
          config_error("coset_reps." + key + ": representative " + word_to_string(e.word) + " lies in J");
        }
      }
      afp.algebra.set_coset_reps(i, std::move(list));
      cfg.reps_supplied[i - 1] = true;
    }
  }
  cfg.afp = std::move(afp);
}

void load_hnn(GroupConfig& cfg, const ojson& j) {
  const auto& gens = j.at("generators");
  FactorGroup g0("G0", parse_generators(gens.at("G0"), "generators.G0"));
  const auto& st = j.at("stable_letter");
  const std::string sname = st.value("name", "f");
  if (g0.has_generator(sname)) config_error("stable letter name clashes with a G0 generator");
  const Moebius f = json::parse_matrix(st.at("matrix"), "stable_letter.matrix");

  auto member = [&](const ojson& m, const std::string& what) {
    JOracle::Member out;
    out.words[0] = free_reduce(json::parse_word(m, what));
    out.matrix = g0.evaluate(out.words[0]);
    return out;
  };
  JOracle jp = parse_oracle(j.value("j1", ojson()), "j1", member);
  JOracle jm = parse_oracle(j.value("j_minus1", ojson()), "j_minus1", member);

  for (const auto& g : jm.generators()) {
    if (!jp.contains(f * g.matrix * f.inverse())) {
      config_error("f J_-1 f^-1 != J_1: conjugate of " + word_to_string(g.words[0]) + " is not in J_1");
    }
  }
  for (const auto& g : jp.generators()) {
    if (!jm.contains(f.inverse() * g.matrix * f)) {
      config_error("f J_-1 f^-1 != J_1: " + word_to_string(g.words[0]) + " has no preimage in J_-1");
    }
  }

  HnnConfig h;
  const Region r1 = json::parse_region(j.at("B1"), "B1");
  const Region r2 = json::parse_region(j.at("B_minus1"), "B_minus1");
  if (r1.caps.size() != 1 || r2.caps.size() != 1) {
    config_error("HNN B-sets must be single caps");
  }
  h.b_plus = r1.caps[0].closure();
  h.b_minus = r2.caps[0].closure();
  if (!(cap_separation(h.b_plus, h.b_minus) > 1e-12)) {
    config_error("B1 and B_minus1 must be disjoint");
  }
  if (j.contains("witness") && !j["witness"].is_null()) {
    h.witness = json::parse_point(j["witness"], "witness");
  }
  h.algebra = HnnAlgebra(std::move(g0), sname, f, std::move(jp), std::move(jm));
  if (j.contains("coset_reps")) {
    const auto& reps = j["coset_reps"];
    const std::pair<int, const char*> keys[] = {{1, "J1"}, {-1, "J_minus1"}};
    for (const auto& [i, key] : keys) {
      if (!reps.contains(key)) continue;
      auto list = parse_reps(reps[key], h.algebra.base(), std::string("coset_reps.") + key);
      const bool has_id = std::any_of(list.begin(), list.end(),
                                      [](const Element& e) { return is_identity(e.matrix); });
      if (!has_id) list.insert(list.begin(), Element{{}, Moebius::identity()});
      std::stable_partition(list.begin(), list.end(),
                            [](const Element& e) { return is_identity(e.matrix); });
      h.algebra.set_coset_reps(i, std::move(list));
      cfg.reps_supplied[i > 0 ? 0 : 1] = true;
    }
  }
  cfg.hnn = std::move(h);
}

}  // namespace

void prepare_config(GroupConfig& cfg, int depth) {
  cfg.depth = depth;
  const int cat = std::max(depth, 1);
  auto check = [&cfg](const auto& alg, int i, const std::string& label) {
    if (!alg.coset_collisions(i).empty()) {
      cfg.warnings.push_back("CosetListIncomplete: two listed representatives of " + label +
                             " share a coset");
    }
  };
  if (cfg.afp) {
    AfpAlgebra& alg = cfg.afp->algebra;
    for (int i : {1, 2}) {
      alg.factor(i).build_catalog(cat);
      if (!cfg.reps_supplied[i - 1]) {
        alg.set_coset_reps(i, alg.derive_coset_reps(i));
      } else {
        check(alg, i, "G" + std::to_string(i));
      }
      if (alg.coset_reps(i).empty()) {
        config_error("G" + std::to_string(i) + " has no elements outside J");
      }
    }
  } else if (cfg.hnn) {
    HnnAlgebra& alg = cfg.hnn->algebra;
    alg.base().build_catalog(cat);
    for (int i : {1, -1}) {
      const int slot = i > 0 ? 0 : 1;
      if (!cfg.reps_supplied[slot]) {
        alg.set_coset_reps(i, alg.derive_coset_reps(i));
      } else {
        check(alg, i, i > 0 ? "G0/J1" : "G0/J_minus1");
      }
    }
  }
}

GroupConfig load_config_string(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  GroupConfig cfg;
  try {
    read_common(cfg, j);
    const std::string mode = j.value("mode", "");
    if (mode == "afp") {
      cfg.mode = Mode::Afp;
      load_afp(cfg, j);
    } else if (mode == "hnn") {
      cfg.mode = Mode::Hnn;
      load_hnn(cfg, j);
    } else {
      config_error("mode must be \"afp\" or \"hnn\"");
    }
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config field error: ") + e.what());
  }
  prepare_config(cfg, cfg.depth);
  return cfg;
}

GroupConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config_string(ss.str());
}

std::vector<std::string> apply_overrides(GroupConfig& cfg, std::optional<int> depth,
                                         std::optional<double> epsilon) {
  std::vector<std::string> warnings;
  if (epsilon) {
    if (!(*epsilon >= 0.0)) throw Error(ErrorCode::Usage, "epsilon must be nonnegative");
    if (*epsilon < cfg.epsilon) {
      std::ostringstream os;
      os << "epsilon override " << *epsilon << " is weaker than the config value " << cfg.epsilon;
      warnings.push_back(os.str());
    }
    cfg.epsilon = *epsilon;
  }
  if (depth) {
    if (*depth < 0 || *depth > 64) throw Error(ErrorCode::Usage, "depth must lie in [0, 64]");
    if (*depth < cfg.depth) {
      warnings.push_back("depth override " + std::to_string(*depth) +
                         " is below the config depth " + std::to_string(cfg.depth));
    }
    prepare_config(cfg, *depth);
  }
  cfg.warnings.insert(cfg.warnings.end(), warnings.begin(), warnings.end());
  return warnings;
}

}  // namespace maskit
