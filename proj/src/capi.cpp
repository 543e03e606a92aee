// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/maskitlab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "json_util.hpp"
#include "maskitlab/config.hpp"
#include "maskitlab/diagnostics.hpp"
#include "maskitlab/limitset.hpp"
#include "maskitlab/pingpong.hpp"

struct mk_config {
  maskit::GroupConfig cfg;
};

namespace {

using maskit::json::ojson;
namespace mj = maskit::json;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ojson num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return mj::round_sig(x);
}

ojson opt_num(const std::optional<double>& x) { return x ? num(*x) : ojson(nullptr); }

std::string dump(const ojson& j) { return j.dump(); }

template <typename Fn>
mk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MK_OK;
  } catch (const maskit::Error& e) {
    g_last_error = e.what();
    return static_cast<mk_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MK_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw maskit::Error(maskit::ErrorCode::Usage, what);
}

maskit::SpherePoint parse_point_text(const std::string& text) {
  if (text == "inf" || text == "infinity") return maskit::SpherePoint::infinity();
  std::string t = text;
  for (char& c : t) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(t);
  double re = 0.0, im = 0.0;
  if (!(is >> re)) throw maskit::Error(maskit::ErrorCode::Usage, "point must be re,im or inf");
  if (!(is >> im)) im = 0.0;
  std::string rest;
  if (is >> rest) throw maskit::Error(maskit::ErrorCode::Usage, "point must be re,im or inf");
  return maskit::SpherePoint::from_complex({re, im});
}

maskit::Moebius evaluate_word(const maskit::GroupConfig& cfg, const maskit::Word& w) {
  if (cfg.afp) {
    const auto& alg = cfg.afp->algebra;
    return alg.evaluate(alg.from_word(w));
  }
  const auto& alg = cfg.hnn->algebra;
  return alg.evaluate(alg.from_word(w));
}

ojson condition_json(const maskit::ConditionReport& c) {
  ojson o = ojson::object();
  o["id"] = c.id;
  o["title"] = c.title;
  o["verdict"] = maskit::verdict_name(c.verdict);
  o["empirical"] = c.empirical;
  o["margin"] = opt_num(c.margin);
  o["checked"] = c.checked;
  o["witness"] = c.witness ? ojson(maskit::word_to_string(*c.witness)) : ojson(nullptr);
  o["witness_point"] = c.witness_point ? mj::point_json(*c.witness_point) : ojson(nullptr);
  o["note"] = c.note;
  return o;
}

ojson report_json(const maskit::VerificationReport& r) {
  ojson o = ojson::object();
  o["mode"] = r.mode;
  o["name"] = r.name;
  o["depth"] = r.depth;
  o["epsilon"] = num(r.epsilon);
  o["delta"] = num(r.delta);
  const int code = r.exit_code();
  o["verdict"] = code == 0 ? "certified" : code == 2 ? "failed" : "not_proved";
  o["exit_code"] = code;
  o["min_margin"] = opt_num(r.min_margin());
  o["discreteness_eta"] = num(r.discreteness_eta);
  o["eta_witness"] = r.eta_witness ? ojson(maskit::word_to_string(*r.eta_witness)) : ojson(nullptr);
  o["forms_checked"] = r.forms_checked;
  o["conditions"] = ojson::array();
  for (const auto& c : r.conditions) o["conditions"].push_back(condition_json(c));
  o["warnings"] = r.warnings;
  return o;
}

ojson coding_json(const maskit::CodingSequence& c) {
  ojson o = ojson::object();
  o["point"] = mj::point_json(c.x);
  o["depth"] = c.requested_depth;
  o["base"] = maskit::word_to_string(c.base);
  o["base_label"] = c.base_label;
  o["status"] = c.escaped ? "escaped_to_factor" : "depth_reached";
  o["syllables"] = ojson::array();
  for (const auto& s : c.steps) o["syllables"].push_back(maskit::word_to_string(s.syllable));
  o["steps"] = ojson::array();
  for (const auto& s : c.steps) {
    ojson st = ojson::object();
    st["syllable"] = maskit::word_to_string(s.syllable);
    st["form"] = maskit::word_to_string(s.form);
    st["label"] = s.label;
    st["cap"] = mj::region_json(s.cap);
    st["diameter"] = num(s.diameter);
    st["margin"] = num(s.margin);
    o["steps"].push_back(std::move(st));
  }
  return o;
}

ojson verdict_json(const maskit::ElementVerdict& v) {
  ojson o = ojson::object();
  o["word"] = maskit::word_to_string(v.word);
  o["core"] = maskit::word_to_string(v.core);
  o["conjugator"] = maskit::word_to_string(v.conjugator);
  o["core_length"] = v.core_length;
  o["combinatorial"] = maskit::combinatorial_class_name(v.combinatorial);
  o["numeric"] = maskit::map_class_name(v.numeric.kind);
  o["near_parabolic"] = v.numeric.near_parabolic;
  o["trace_squared"] = mj::complex_json(v.numeric.trace_squared);
  o["attractor"] = v.attractor ? mj::point_json(*v.attractor) : ojson(nullptr);
  o["attractor_expected"] = v.attractor_expected;
  o["attractor_margin"] = opt_num(v.attractor_margin);
  o["repeller"] = v.repeller ? mj::point_json(*v.repeller) : ojson(nullptr);
  o["repeller_expected"] = v.repeller_expected;
  o["repeller_margin"] = opt_num(v.repeller_margin);
  o["agreement"] = v.agreement;
  o["note"] = v.note;
  return o;
}

}  // namespace

extern "C" {

const char* mk_version(void) { return "0.1.0"; }

const char* mk_status_name(mk_status status) {
  if (status == MK_OK) return "ok";
  if (status == MK_ERR_INTERNAL) return "InternalError";
  if (status < MK_ERR_CONFIG || status > MK_ERR_PRECONDITION) return "UnknownError";
  return maskit::error_code_name(static_cast<maskit::ErrorCode>(static_cast<int>(status)));
}

const char* mk_last_error(void) { return g_last_error.c_str(); }

void mk_free(void* p) { std::free(p); }

mk_status mk_config_load_file(const char* path, mk_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = nullptr;
    auto* c = new mk_config{maskit::load_config_file(path)};
    *out = c;
  });
}

mk_status mk_config_load_string(const char* json, mk_config** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = nullptr;
    auto* c = new mk_config{maskit::load_config_string(json)};
    *out = c;
  });
}

void mk_config_free(mk_config* cfg) { delete cfg; }

mk_status mk_config_override(mk_config* cfg, int depth, double epsilon) {
  return guarded([&] {
    require(cfg, "null config");
    std::optional<int> d;
    std::optional<double> e;
    if (depth >= 0) d = depth;
    if (epsilon >= 0.0) e = epsilon;
    maskit::apply_overrides(cfg->cfg, d, e);
  });
}

int mk_config_depth(const mk_config* cfg) { return cfg ? cfg->cfg.depth : -1; }

int mk_config_is_amalgam(const mk_config* cfg) { return cfg && cfg->cfg.is_afp() ? 1 : 0; }

mk_status mk_config_warnings(const mk_config* cfg, char** json) {
  return guarded([&] {
    require(cfg && json, "null argument");
    *json = dup(dump(ojson(cfg->cfg.warnings)));
  });
}

mk_status mk_verify(const mk_config* cfg, char** json, int* exit_code) {
  return guarded([&] {
    require(cfg && json && exit_code, "null argument");
    const maskit::VerificationReport r = maskit::verify(cfg->cfg);
    *exit_code = r.exit_code();
    *json = dup(dump(report_json(r)));
  });
}

mk_status mk_enumerate(const mk_config* cfg, int max_length, char** jsonl) {
  return guarded([&] {
    require(cfg && jsonl, "null argument");
    require(max_length >= 0, "length must be nonnegative");
    std::string out;
    const auto& c = cfg->cfg;
    if (c.afp) {
      const auto& alg = c.afp->algebra;
      for (const auto& f : maskit::enumerate_afp_forms(alg, max_length)) {
        ojson o = ojson::object();
        o["length"] = f.length();
        o["form"] = maskit::word_to_string(alg.to_word(f));
        if (f.length() > 0) {
          const auto [a, b] = alg.form_type(f);
          o["type"] = ojson::array({a, b});
        } else {
          o["type"] = nullptr;
        }
        o["matrix"] = mj::matrix_json(alg.evaluate(f));
        out += dump(o) + "\n";
      }
    } else {
      const auto& alg = c.hnn->algebra;
      for (const auto& n : maskit::enumerate_hnn_forms(alg, max_length)) {
        ojson o = ojson::object();
        o["length"] = n.form.length();
        o["form"] = maskit::word_to_string(alg.to_word(n.form));
        o["type"] = n.type;
        o["matrix"] = mj::matrix_json(alg.evaluate(n.form));
        out += dump(o) + "\n";
      }
    }
    *jsonl = dup(out);
  });
}

mk_status mk_cover(const mk_config* cfg, int depth, char** jsonl) {
  return guarded([&] {
    require(cfg && jsonl, "null argument");
    const auto cover = maskit::build_cover(cfg->cfg, depth);
    std::string out;
    for (std::size_t l = 0; l < cover.levels.size(); ++l) {
      for (std::size_t k = 0; k < cover.levels[l].size(); ++k) {
        const auto& n = cover.levels[l][k];
        ojson o = ojson::object();
        o["level"] = l;
        o["index"] = k;
        o["form"] = mj::word_json(cover.form_word(cfg->cfg, static_cast<int>(l), k));
        o["label"] = n.label;
        o["cap"] = mj::region_json(n.region);
        o["parent"] = n.parent == maskit::CoverNode::kNoParent ? ojson(nullptr) : ojson(n.parent);
        out += dump(o) + "\n";
      }
    }
    *jsonl = dup(out);
  });
}

mk_status mk_cover_stats(const mk_config* cfg, int depth, char** json) {
  return guarded([&] {
    require(cfg && json, "null argument");
    const auto cover = maskit::build_cover(cfg->cfg, depth);
    const auto st = maskit::contraction_stats(cover);
    ojson o = ojson::object();
    o["depth"] = cover.depth();
    o["caps"] = cover.size();
    o["levels"] = ojson::array();
    for (const auto& l : st.levels) {
      ojson e = ojson::object();
      e["level"] = l.level;
      e["count"] = l.count;
      e["max_diameter"] = num(l.max_diameter);
      e["mean_diameter"] = num(l.mean_diameter);
      e["worst_ratio"] = num(l.worst_ratio);
      o["levels"].push_back(std::move(e));
    }
    o["worst_ratio_from_2"] = num(st.worst_ratio_from_2);
    *json = dup(dump(o));
  });
}

mk_status mk_code(const mk_config* cfg, const char* point, int depth, int conical, char** json) {
  return guarded([&] {
    require(cfg && point && json, "null argument");
    const auto coding = maskit::code_point(cfg->cfg, parse_point_text(point), depth);
    ojson o = coding_json(coding);
    if (conical) {
      ojson w = ojson::object();
      try {
        const auto cw = maskit::conical_witness(cfg->cfg, coding, cfg->cfg.j_bound);
        w["verdict"] = "conical_evidence";
        w["side"] = cw.side;
        w["k"] = mj::cap_json(cw.k);
        w["k_separation"] = num(cw.k_separation);
        w["steps"] = ojson::array();
        for (const auto& s : cw.steps) {
          ojson e = ojson::object();
          e["k"] = s.k;
          e["g"] = maskit::word_to_string(s.g);
          e["point_margin"] = num(s.point_margin);
          e["set_margin"] = num(s.set_margin);
          w["steps"].push_back(std::move(e));
        }
      } catch (const maskit::Error& e) {
        w["verdict"] = maskit::error_code_name(e.code());
        w["message"] = e.what();
      }
      o["conical"] = std::move(w);
    }
    *json = dup(dump(o));
  });
}

mk_status mk_classify(const mk_config* cfg, const char* word, char** json) {
  return guarded([&] {
    require(cfg && word && json, "null argument");
    *json = dup(dump(verdict_json(maskit::classify_element(cfg->cfg, maskit::parse_word_text(word)))));
  });
}

mk_status mk_random_words(const mk_config* cfg, int count, int max_length, unsigned long long seed,
                          char** text) {
  return guarded([&] {
    require(cfg && text, "null argument");
    require(count >= 0, "count must be nonnegative");
    std::string out;
    for (const auto& w : maskit::random_words(cfg->cfg, count, max_length, seed)) {
      out += maskit::word_to_string(w) + "\n";
    }
    *text = dup(out);
  });
}

mk_status mk_probe(const mk_config* cfg, const char* word, int count, char** json) {
  return guarded([&] {
    require(cfg && word && json, "null argument");
    const maskit::Word w = maskit::parse_word_text(word);
    const maskit::Moebius g = evaluate_word(cfg->cfg, w);
    std::vector<maskit::Moebius> maps;
    maskit::Moebius p;
    for (int k = 0; k < count; ++k) {
      p = p * g;
      maps.push_back(p);
    }
    const auto r = maskit::convergence_sequence_probe(maps);
    ojson o = ojson::object();
    o["word"] = maskit::word_to_string(w);
    o["count"] = count;
    o["z_plus"] = mj::point_json(r.z_plus);
    o["z_minus"] = mj::point_json(r.z_minus);
    o["radius"] = num(r.radius);
    o["spread"] = ojson::array();
    for (double s : r.spread) o["spread"].push_back(num(s));
    o["coverage"] = ojson::array();
    for (double c : r.coverage) o["coverage"].push_back(num(c));
    *json = dup(dump(o));
  });
}

mk_status mk_render(const mk_config* cfg, int depth, int width, int height, const double* window,
                    unsigned char** bytes, size_t* size) {
  return guarded([&] {
    require(cfg && bytes && size, "null argument");
    maskit::ImageOptions opts;
    opts.width = width;
    opts.height = height;
    if (window) opts.window = {window[0], window[1], window[2], window[3]};
    const auto cover = maskit::build_cover(cfg->cfg, depth);
    const std::string img = maskit::render_ppm(cover, maskit::limit_point_cloud(cfg->cfg, cover), opts);
    auto* out = static_cast<unsigned char*>(std::malloc(img.size()));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, img.data(), img.size());
    *bytes = out;
    *size = img.size();
  });
}

}  // extern "C"
