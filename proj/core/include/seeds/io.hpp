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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seeds/mdp.hpp"
#include "seeds/tables.hpp"

namespace seeds {

/// Invalid document. `field()` is the dotted path of the offending entry, or
/// empty for syntax errors (whose message carries the parse location).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message
                                         : "field '" + field + "': " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// {"H", "layer_sizes", "A", "P": [h][s][a][s']} with layer-local indices.
std::string mdp_to_json(const LayeredMdp& mdp);
/// Throws ConfigError; the result always passes validate_mdp.
LayeredMdp mdp_from_json(std::string_view text);

/// Nested [h][s][a], the layout shared with loss tables.
template <class Tag>
std::string pair_table_to_json(const LayerShape& shape, const PairTable<Tag>& table);
/// Nested [h][s][a][s'].
std::string triple_table_to_json(const TripleOccupancy& q3);

/// Parses [h][s][a] into a loss table; `field` names the entry in errors.
LossFunction loss_table_from_json(std::string_view text, const LayerShape& shape,
                                  const std::string& field);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories. Errors name the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal that round-trips.
std::string format_double(double x);

}  // namespace seeds
