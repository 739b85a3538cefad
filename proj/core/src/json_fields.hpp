// Copyright 2026 The seeds-mdp Authors.
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

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "seeds/io.hpp"

namespace seeds::detail {

using Json = nlohmann::json;

inline std::string join_field(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline std::string join_index(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

inline const Json& require(const Json& obj, const std::string& key,
                           const std::string& parent) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join_field(parent, key), "missing");
  return *it;
}

inline double as_number(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

inline std::int64_t as_integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::int64_t as_positive(const Json& j, const std::string& field) {
  const auto v = as_integer(j, field);
  if (v < 1) throw ConfigError(field, "must be >= 1");
  return v;
}

inline std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

inline const Json& as_array(const Json& j, const std::string& field,
                            std::size_t expected_size) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  if (j.size() != expected_size)
    throw ConfigError(field, "expected " + std::to_string(expected_size) +
                                 " entries, found " + std::to_string(j.size()));
  return j;
}

inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

LayeredMdp mdp_from_json_value(const Json& j, const std::string& field);
LossFunction loss_table_from_json_value(const Json& j, const LayerShape& shape,
                                        const std::string& field);

}  // namespace seeds::detail
