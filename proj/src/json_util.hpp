#pragma once

// Field accessors shared by the JSON readers. Failures throw esgdoc::Error
// with a message naming the offending field; callers attach the index.

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "esgdoc/element.hpp"
#include "esgdoc/errors.hpp"

namespace esgdoc::detail {

inline nlohmann::json parse_json(std::string_view raw) {
  try {
    return nlohmann::json::parse(raw.begin(), raw.end());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the 1-based position of the offending byte.
    throw ParseError("malformed JSON", e.byte == 0 ? 0 : e.byte - 1);
  }
}

inline void require_object(const nlohmann::json& j, std::string_view what) {
  if (!j.is_object()) throw Error(std::string(what) + " must be a JSON object");
}

inline void reject_unknown(const nlohmann::json& j, std::string_view what,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) {
      throw Error("unknown key \"" + item.key() + "\" in " + std::string(what));
    }
  }
}

inline const nlohmann::json& get_field(const nlohmann::json& j,
                                       std::string_view key,
                                       std::string_view what) {
  auto it = j.find(std::string(key));
  if (it == j.end()) {
    throw Error(std::string(what) + " is missing \"" + std::string(key) + "\"");
  }
  return *it;
}

inline int get_int(const nlohmann::json& j, std::string_view key,
                   std::string_view what) {
  const auto& v = get_field(j, key, what);
  if (!v.is_number_integer()) {
    throw Error(std::string(what) + " field \"" + std::string(key) +
                "\" must be an integer");
  }
  return v.get<int>();
}

inline int get_int_or(const nlohmann::json& j, std::string_view key,
                      std::string_view what, int fallback) {
  return j.contains(std::string(key)) ? get_int(j, key, what) : fallback;
}

inline double get_double(const nlohmann::json& j, std::string_view key,
                         std::string_view what) {
  const auto& v = get_field(j, key, what);
  if (!v.is_number()) {
    throw Error(std::string(what) + " field \"" + std::string(key) +
                "\" must be a number");
  }
  return v.get<double>();
}

inline bool get_bool(const nlohmann::json& j, std::string_view key,
                     std::string_view what) {
  const auto& v = get_field(j, key, what);
  if (!v.is_boolean()) {
    throw Error(std::string(what) + " field \"" + std::string(key) +
                "\" must be a boolean");
  }
  return v.get<bool>();
}

inline std::string get_string(const nlohmann::json& j, std::string_view key,
                              std::string_view what) {
  const auto& v = get_field(j, key, what);
  if (!v.is_string()) {
    throw Error(std::string(what) + " field \"" + std::string(key) +
                "\" must be a string");
  }
  return v.get<std::string>();
}

inline std::string get_string_or(const nlohmann::json& j, std::string_view key,
                                 std::string_view what, std::string fallback) {
  return j.contains(std::string(key)) ? get_string(j, key, what)
                                      : std::move(fallback);
}

inline const nlohmann::json& get_array(const nlohmann::json& j,
                                       std::string_view key,
                                       std::string_view what) {
  const auto& v = get_field(j, key, what);
  if (!v.is_array()) {
    throw Error(std::string(what) + " field \"" + std::string(key) +
                "\" must be an array");
  }
  return v;
}

inline BBox get_bbox(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 4) throw Error("bbox must be an array of 4 numbers");
  for (const auto& n : v) {
    if (!n.is_number()) throw Error("bbox must be an array of 4 numbers");
  }
  BBox box{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
           v[3].get<double>()};
  if (auto err = check_bbox(box)) throw Error(*err);
  return box;
}

inline void check_schema_version(const nlohmann::json& doc) {
  const auto& v = get_field(doc, "schema_version", "document");
  if (!v.is_number_integer()) throw Error("schema_version must be an integer");
  const auto version = v.get<long long>();
  if (version != 1) throw UnsupportedVersionError(version);
}

}  // namespace esgdoc::detail
