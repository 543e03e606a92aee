// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

// JSON conversions shared by the config loader and the C API. Internal.

#pragma once

#include <json.hpp>
#include <string>

#include "maskitlab/sphere.hpp"
#include "maskitlab/words.hpp"

namespace maskit::json {

using ojson = nlohmann::ordered_json;

cplx parse_complex(const ojson& j, const std::string& what);
Moebius parse_matrix(const ojson& j, const std::string& what);
Word parse_word(const ojson& j, const std::string& what);
Cap parse_cap(const ojson& j, const std::string& what);
Region parse_region(const ojson& j, const std::string& what);
/// [re, im] or the string "inf".
SpherePoint parse_point(const ojson& j, const std::string& what);

ojson complex_json(cplx z);
ojson matrix_json(const Moebius& m);
ojson word_json(const Word& w);
ojson point_json(const SpherePoint& p);
ojson cap_json(const Cap& c);
ojson region_json(const Region& r);
/// Numbers rounded to 12 significant digits so reports are stable across
/// harmless last-bit differences.
double round_sig(double x);

}  // namespace maskit::json
