// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "maskitlab/error.hpp"

namespace maskit::json {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& msg) {
  throw Error(ErrorCode::Config, what + ": " + msg);
}

double number(const ojson& j, const std::string& what) {
  if (!j.is_number()) fail(what, "expected a number");
  return j.get<double>();
}

}  // namespace

cplx parse_complex(const ojson& j, const std::string& what) {
  if (j.is_null()) fail(what, "value is missing (null slot)");
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(what, "expected [re, im]");
  return {number(j[0], what), number(j[1], what)};
}

Moebius parse_matrix(const ojson& j, const std::string& what) {
  if (j.is_null()) fail(what, "matrix slot is not filled in");
  if (!j.is_object()) fail(what, "expected {\"a\":..,\"b\":..,\"c\":..,\"d\":..}");
  for (const char* k : {"a", "b", "c", "d"}) {
    if (!j.contains(k)) fail(what, std::string("missing entry '") + k + "'");
  }
  try {
    return {parse_complex(j["a"], what + ".a"), parse_complex(j["b"], what + ".b"),
            parse_complex(j["c"], what + ".c"), parse_complex(j["d"], what + ".d")};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateMatrix) fail(what, e.what());
    throw;
  }
}

Word parse_word(const ojson& j, const std::string& what) {
  if (!j.is_array()) fail(what, "expected a word [[name, exp], ...]");
  Word w;
  for (const auto& l : j) {
    if (l.is_string()) {
      w.push_back({l.get<std::string>(), 1});
      continue;
    }
    if (!l.is_array() || l.size() != 2 || !l[0].is_string() || !l[1].is_number_integer()) {
      fail(what, "each letter must be [name, integer exponent]");
    }
    w.push_back({l[0].get<std::string>(), l[1].get<int>()});
  }
  return w;
}

Cap parse_cap(const ojson& j, const std::string& what) {
  if (!j.is_object()) fail(what, "expected a cap object");
  const bool closed = j.value("closed", true);
  if (j.contains("center")) {
    const auto& c = j["center"];
    if (!c.is_array() || c.size() != 3) fail(what, "center must be [x, y, z]");
    const Vec3 v{number(c[0], what), number(c[1], what), number(c[2], what)};
    if (!j.contains("radius_rad")) fail(what, "missing radius_rad");
    return Cap::make(v, number(j["radius_rad"], what), closed);
  }
  if (j.contains("circle_center")) {
    const cplx z0 = parse_complex(j["circle_center"], what + ".circle_center");
    if (!j.contains("radius")) fail(what, "missing radius");
    const std::string side = j.value("side", "inside");
    if (side != "inside" && side != "outside") fail(what, "side must be inside or outside");
    return Cap::from_circle(z0, number(j["radius"], what), side == "inside", closed);
  }
  if (j.contains("half_plane")) {
    const auto& h = j["half_plane"];
    return Cap::half_plane(parse_complex(h.at("normal"), what + ".normal"),
                           number(h.value("offset", ojson(0.0)), what), closed);
  }
  fail(what, "cap needs center/radius_rad, circle_center/radius or half_plane");
}

Region parse_region(const ojson& j, const std::string& what) {
  if (j.is_array()) {
    if (j.empty()) fail(what, "region must contain at least one cap");
    Region r;
    for (std::size_t i = 0; i < j.size(); ++i) {
      r.caps.push_back(parse_cap(j[i], what + "[" + std::to_string(i) + "]"));
    }
    return r;
  }
  return Region(parse_cap(j, what));
}

SpherePoint parse_point(const ojson& j, const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return SpherePoint::infinity();
    fail(what, "point must be [re, im] or \"inf\"");
  }
  return SpherePoint::from_complex(parse_complex(j, what));
}

double round_sig(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

ojson complex_json(cplx z) { return ojson::array({round_sig(z.real()), round_sig(z.imag())}); }

ojson matrix_json(const Moebius& m) {
  ojson o = ojson::object();
  o["a"] = complex_json(m.a());
  o["b"] = complex_json(m.b());
  o["c"] = complex_json(m.c());
  o["d"] = complex_json(m.d());
  return o;
}

ojson word_json(const Word& w) {
  ojson a = ojson::array();
  for (const Letter& l : w) a.push_back(ojson::array({l.gen, l.exp}));
  return a;
}

ojson point_json(const SpherePoint& p) {
  if (p.is_infinity(1e-15)) return "inf";
  return complex_json(p.affine());
}

ojson cap_json(const Cap& c) {
  ojson o = ojson::object();
  o["center"] = ojson::array({round_sig(c.center.x), round_sig(c.center.y), round_sig(c.center.z)});
  o["radius_rad"] = round_sig(c.radius);
  o["closed"] = c.closed;
  if (auto pc = c.plane_circle()) {
    o["circle_center"] = complex_json(pc->center);
    o["radius"] = round_sig(pc->radius);
    o["side"] = pc->inside ? "inside" : "outside";
  }
  return o;
}

ojson region_json(const Region& r) {
  if (r.caps.size() == 1) return cap_json(r.caps.front());
  ojson a = ojson::array();
  for (const Cap& c : r.caps) a.push_back(cap_json(c));
  return a;
}

}  // namespace maskit::json
