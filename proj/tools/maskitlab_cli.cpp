// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// maskitlab command-line driver. Talks to the library through the C API only.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maskitlab/maskitlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 2;
constexpr int kExitUsage = 4;

struct Options {
  std::string config;
  std::optional<int> depth;
  std::optional<double> epsilon;
  std::string out;
  std::string point = "0";
  bool conical = false;
  bool stats = false;
  std::vector<std::string> words;
  int random = 0;
  unsigned long long seed = 0;
  int count = 12;
  std::vector<int> image{512, 512};
  std::vector<double> window{-8.0, -8.0, 8.0, 8.0};
};

using ConfigPtr = std::unique_ptr<mk_config, decltype(&mk_config_free)>;

std::string json_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '"': o += "\\\""; break;
      case '\\': o += "\\\\"; break;
      case '\n': o += "\\n"; break;
      case '\t': o += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          o += buf;
        } else {
          o += c;
        }
    }
  }
  return o;
}

int exit_for(mk_status s) {
  switch (s) {
    case MK_OK: return kExitOk;
    case MK_ERR_CONFIG:
    case MK_ERR_USAGE:
    case MK_ERR_IO:
    case MK_ERR_DEGENERATE_MATRIX: return kExitUsage;
    default: return kExitFailed;
  }
}

// Error report on stdout so failures stay machine readable.
int report_error(mk_status s) {
  std::cout << "{\"error\":\"" << mk_status_name(s) << "\",\"message\":\""
            << json_escape(mk_last_error()) << "\"}\n";
  return exit_for(s);
}

bool write_output(const Options& o, const std::string& data) {
  if (o.out.empty()) {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return true;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << o.out << "\n";
    return false;
  }
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  return static_cast<bool>(f);
}

std::string take(char* p) {
  std::string s = p ? p : "";
  mk_free(p);
  return s;
}

int load(const Options& o, ConfigPtr& cfg) {
  mk_config* raw = nullptr;
  const mk_status s = mk_config_load_file(o.config.c_str(), &raw);
  if (s != MK_OK) return report_error(s);
  cfg.reset(raw);
  char* before = nullptr;
  mk_config_warnings(cfg.get(), &before);
  const std::string had = take(before);
  const mk_status ov = mk_config_override(cfg.get(), o.depth.value_or(-1), o.epsilon.value_or(-1.0));
  if (ov != MK_OK) return report_error(ov);
  char* after = nullptr;
  mk_config_warnings(cfg.get(), &after);
  const std::string now = take(after);
  if (now != had) std::cerr << "warning: overrides weaken the config settings: " << now << "\n";
  return -1;
}

int run(const std::string& cmd, const Options& o) {
  ConfigPtr cfg(nullptr, &mk_config_free);
  if (const int rc = load(o, cfg); rc >= 0) return rc;
  mk_config* c = cfg.get();
  const int depth = o.depth.value_or(mk_config_depth(c));
  char* text = nullptr;
  mk_status s = MK_OK;
  int verdict_exit = kExitOk;

  if (cmd == "verify") {
    s = mk_verify(c, &text, &verdict_exit);
  } else if (cmd == "enumerate") {
    s = mk_enumerate(c, depth, &text);
  } else if (cmd == "cover") {
    s = o.stats ? mk_cover_stats(c, depth, &text) : mk_cover(c, depth, &text);
  } else if (cmd == "code") {
    s = mk_code(c, o.point.c_str(), depth, o.conical ? 1 : 0, &text);
  } else if (cmd == "classify") {
    std::vector<std::string> words = o.words;
    if (o.random > 0) {
      char* list = nullptr;
      s = mk_random_words(c, o.random, depth > 0 ? depth : 1, o.seed, &list);
      if (s != MK_OK) return report_error(s);
      std::string all = take(list);
      std::size_t pos = 0;
      while (pos < all.size()) {
        const std::size_t nl = all.find('\n', pos);
        words.push_back(all.substr(pos, nl - pos));
        pos = nl + 1;
      }
    }
    if (words.empty()) {
      std::cerr << "classify needs --word or --random\n";
      return kExitUsage;
    }
    std::string out;
    for (const auto& w : words) {
      char* one = nullptr;
      s = mk_classify(c, w.c_str(), &one);
      if (s != MK_OK) return report_error(s);
      out += take(one) + "\n";
    }
    return write_output(o, out) ? kExitOk : kExitUsage;
  } else if (cmd == "probe") {
    if (o.words.size() != 1) {
      std::cerr << "probe needs exactly one --word\n";
      return kExitUsage;
    }
    s = mk_probe(c, o.words.front().c_str(), o.count, &text);
  } else if (cmd == "render") {
    unsigned char* bytes = nullptr;
    std::size_t size = 0;
    s = mk_render(c, depth, o.image[0], o.image[1], o.window.data(), &bytes, &size);
    if (s != MK_OK) return report_error(s);
    const std::string img(reinterpret_cast<const char*>(bytes), size);
    mk_free(bytes);
    return write_output(o, img) ? kExitOk : kExitUsage;
  }
  if (s != MK_OK) return report_error(s);
  std::string out = take(text);
  if (!out.empty() && out.back() != '\n') out += "\n";
  if (!write_output(o, out)) return kExitUsage;
  return verdict_exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maskitlab: ping-pong verification and limit sets for Kleinian combinations"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "group configuration (JSON)")->required();
    sub->add_option("--depth", o.depth, "word length / cover depth");
    sub->add_option("--epsilon", o.epsilon, "containment margin");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--seed", o.seed, "seed for random choices");
  };

  auto* verify = app.add_subcommand("verify", "check the ping-pong hypotheses");
  common(verify);
  auto* enumerate = app.add_subcommand("enumerate", "list normal forms up to --depth");
  common(enumerate);
  auto* cover = app.add_subcommand("cover", "nested translate cover as JSON lines");
  common(cover);
  cover->add_flag("--stats", o.stats, "print contraction statistics instead");
  auto* code = app.add_subcommand("code", "code a point by nested translates");
  common(code);
  code->add_option("--point", o.point, "re,im or inf");
  code->add_flag("--conical", o.conical, "also build a conical-limit witness");
  auto* classify = app.add_subcommand("classify", "classify group elements");
  common(classify);
  classify->add_option("--word", o.words, "word such as \"u v^-1\" (repeatable)");
  classify->add_option("--random", o.random, "also classify N random words of length <= depth");
  auto* probe = app.add_subcommand("probe", "convergence probe over powers of a word");
  common(probe);
  probe->add_option("--word", o.words, "word whose powers form the sequence");
  probe->add_option("--count", o.count, "number of powers (>= 8)");
  auto* render = app.add_subcommand("render", "P6 image of the limit-set cloud");
  common(render);
  render->add_option("--image", o.image, "width height")->expected(2);
  render->add_option("--window", o.window, "x0 y0 x1 y1")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) return run(sub->get_name(), o);
  return kExitUsage;
}
