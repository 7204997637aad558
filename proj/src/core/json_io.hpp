#pragma once

#include <json.hpp>

#include <string>

#include "core/num.hpp"

namespace bnet {

// Insertion-ordered JSON so every report serializes byte-identically.
using Json = nlohmann::ordered_json;

inline Json json_parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::Parse, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string json_dump(const Json& j) { return j.dump(2) + "\n"; }

// Scalars in reports: exact values as "p/q", floats as decimal strings at
// the requested precision. Strings keep output byte-stable across platforms.
inline Json num_json(const Num& x) {
  if (x.exact()) return Json(x.str());
  return Json(decimal_string(x, precision()));
}

}  // namespace bnet
