// Copyright 2025 The gaussbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gaussbound/states.hpp"

namespace gaussbound {

/// A state document failed schema validation. The message names the field.
class SchemaError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// On-disk / on-wire representation of a single state.
///   pure:  {"kind":"pure","a":..,"b":..,"x":..,"p":..}
///   mixed: {"kind":"mixed","a":..,"b":..,"zeta":..}
/// b, x, p, zeta default to 0; unknown fields are rejected.
struct StateDocument {
  enum class Kind { pure, mixed };
  Kind kind = Kind::pure;
  double a = 1.0;
  double b = 0.0;
  double x = 0.0;
  double p = 0.0;
  double zeta = 0.0;

  PureGaussianState to_pure() const {
    if (kind != Kind::pure) throw SchemaError("state is not of kind \"pure\"");
    return PureGaussianState(a, b, x, p);
  }
  MixedGaussianState to_mixed() const {
    if (kind != Kind::mixed) throw SchemaError("state is not of kind \"mixed\"");
    return MixedGaussianState(a, b, zeta);
  }
};

inline StateDocument from_state(const PureGaussianState& s) {
  StateDocument d;
  d.kind = StateDocument::Kind::pure;
  d.a = s.a;
  d.b = s.b;
  d.x = s.x0;
  d.p = s.p0;
  return d;
}

inline StateDocument from_state(const MixedGaussianState& s) {
  StateDocument d;
  d.kind = StateDocument::Kind::mixed;
  d.a = s.a;
  d.b = s.b;
  d.zeta = s.zeta;
  return d;
}

namespace detail {

inline double number_field(const nlohmann::json& j, const char* name, double fallback,
                           bool required) {
  if (!j.contains(name)) {
    if (required) throw SchemaError(std::string("missing required field \"") + name + "\"");
    return fallback;
  }
  const auto& v = j.at(name);
  if (!v.is_number()) throw SchemaError(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

}  // namespace detail

inline StateDocument parse_state_document(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("state document must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw SchemaError("missing required field \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  StateDocument doc;
  if (kind == "pure") {
    doc.kind = StateDocument::Kind::pure;
  } else if (kind == "mixed") {
    doc.kind = StateDocument::Kind::mixed;
  } else {
    throw SchemaError("field \"kind\" must be \"pure\" or \"mixed\", got \"" + kind + "\"");
  }
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const bool known =
        key == "kind" || key == "a" || key == "b" ||
        (doc.kind == StateDocument::Kind::pure ? (key == "x" || key == "p") : key == "zeta");
    if (!known) throw SchemaError("unknown field \"" + key + "\" in " + kind + " state");
  }
  doc.a = detail::number_field(j, "a", 0.0, /*required=*/true);
  doc.b = detail::number_field(j, "b", 0.0, false);
  if (doc.kind == StateDocument::Kind::pure) {
    doc.x = detail::number_field(j, "x", 0.0, false);
    doc.p = detail::number_field(j, "p", 0.0, false);
    doc.to_pure();  // surface invariant violations as errors now
  } else {
    doc.zeta = detail::number_field(j, "zeta", 0.0, false);
    doc.to_mixed();
  }
  return doc;
}

inline StateDocument parse_state_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_state_document(j);
}

/// Round-trip-safe number formatting: 17 significant digits, C locale.
inline std::string format_number(double v) {
  if (v == 0.0) return "0";  // avoid "-0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Canonical serialization: fixed field order, 17-significant-digit numbers.
/// parse(to_canonical_json(doc)) is value-identical to doc.
inline std::string to_canonical_json(const StateDocument& d) {
  std::string out = "{\"kind\":\"";
  out += (d.kind == StateDocument::Kind::pure) ? "pure" : "mixed";
  out += "\",\"a\":" + format_number(d.a) + ",\"b\":" + format_number(d.b);
  if (d.kind == StateDocument::Kind::pure) {
    out += ",\"x\":" + format_number(d.x) + ",\"p\":" + format_number(d.p);
  } else {
    out += ",\"zeta\":" + format_number(d.zeta);
  }
  out += "}";
  return out;
}

/// Tiny ordered JSON writer for report emission. Field order is insertion
/// order and numbers use format_number, so byte-identical output only
/// depends on the values themselves.
class JsonWriter {
 public:
  JsonWriter& field(const std::string& name, double value) {
    return raw_field(name, format_number(value));
  }
  JsonWriter& field(const std::string& name, std::uint64_t value) {
    return raw_field(name, std::to_string(value));
  }
  JsonWriter& field(const std::string& name, int value) {
    return raw_field(name, std::to_string(value));
  }
  JsonWriter& field(const std::string& name, bool value) {
    return raw_field(name, value ? "true" : "false");
  }
  JsonWriter& field(const std::string& name, const std::string& value) {
    return raw_field(name, "\"" + value + "\"");
  }
  JsonWriter& raw_field(const std::string& name, const std::string& raw) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"" + name + "\":" + raw;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

}  // namespace gaussbound
