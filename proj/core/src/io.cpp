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

#include "seeds/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json_fields.hpp"

namespace seeds {

using detail::Json;

std::string format_double(double x) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

std::string mdp_to_json(const LayeredMdp& mdp) {
  const auto& shape = mdp.shape();
  Json p = Json::array();
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    Json layer = Json::array();
    for (std::size_t s = shape.layer_begin(h); s < shape.layer_end(h); ++s) {
      Json state = Json::array();
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const auto row = mdp.transition(s, a);
        state.push_back(Json(std::vector<double>(row.begin(), row.end())));
      }
      layer.push_back(std::move(state));
    }
    p.push_back(std::move(layer));
  }
  Json doc = {{"H", shape.horizon()},
              {"layer_sizes", shape.layer_sizes()},
              {"A", shape.num_actions()},
              {"P", std::move(p)}};
  return doc.dump(2) + "\n";
}

namespace detail {

LayeredMdp mdp_from_json_value(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  const auto H = as_positive(require(j, "H", field), join_field(field, "H"));
  const auto A = as_positive(require(j, "A", field), join_field(field, "A"));
  const std::string sizes_field = join_field(field, "layer_sizes");
  const auto& sizes_json =
      as_array(require(j, "layer_sizes", field), sizes_field,
               static_cast<std::size_t>(H) + 1);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < sizes_json.size(); ++i)
    sizes.push_back(static_cast<std::size_t>(
        as_positive(sizes_json[i], join_index(sizes_field, i))));
  if (sizes.front() != 1) throw ConfigError(sizes_field, "layer 0 must hold one state");
  if (sizes.back() != 1) throw ConfigError(sizes_field, "layer H must hold one state");

  const LayerShape shape(sizes, static_cast<std::size_t>(A));
  TransitionTable p(shape, 0.0);
  const std::string p_field = join_field(field, "P");
  const auto& pj = as_array(require(j, "P", field), p_field, shape.horizon());
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    const auto hf = join_index(p_field, h);
    const auto& layer = as_array(pj[h], hf, shape.layer_size(h));
    for (std::size_t i = 0; i < shape.layer_size(h); ++i) {
      const auto sf = join_index(hf, i);
      const auto& state = as_array(layer[i], sf, shape.num_actions());
      const std::size_t s = shape.layer_begin(h) + i;
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const auto af = join_index(sf, a);
        const auto& row_json = as_array(state[a], af, shape.row_length(s));
        auto row = p.row(s, a);
        for (std::size_t k = 0; k < row.size(); ++k)
          row[k] = as_number(row_json[k], join_index(af, k));
      }
    }
  }
  LayeredMdp mdp(shape, std::move(p));
  const auto violations = validate_mdp(mdp);
  if (!violations.empty()) throw ConfigError(p_field, violations.front().describe());
  return mdp;
}

LossFunction loss_table_from_json_value(const Json& j, const LayerShape& shape,
                                        const std::string& field) {
  LossFunction table(shape, 0.0);
  const auto& hj = as_array(j, field, shape.horizon());
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    const auto hf = join_index(field, h);
    const auto& layer = as_array(hj[h], hf, shape.layer_size(h));
    for (std::size_t i = 0; i < shape.layer_size(h); ++i) {
      const auto sf = join_index(hf, i);
      const auto& state = as_array(layer[i], sf, shape.num_actions());
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const double x = as_number(state[a], join_index(sf, a));
        if (!(x >= 0.0 && x <= 1.0))
          throw ConfigError(join_index(sf, a), "loss must lie in [0, 1]");
        table(shape.layer_begin(h) + i, a) = x;
      }
    }
  }
  return table;
}

}  // namespace detail

LayeredMdp mdp_from_json(std::string_view text) {
  return detail::mdp_from_json_value(detail::parse_document(text), "");
}

LossFunction loss_table_from_json(std::string_view text, const LayerShape& shape,
                                  const std::string& field) {
  return detail::loss_table_from_json_value(detail::parse_document(text), shape,
                                            field);
}

template <class Tag>
std::string pair_table_to_json(const LayerShape& shape, const PairTable<Tag>& table) {
  Json doc = Json::array();
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    Json layer = Json::array();
    for (std::size_t s = shape.layer_begin(h); s < shape.layer_end(h); ++s) {
      const auto row = table.row(s);
      layer.push_back(Json(std::vector<double>(row.begin(), row.end())));
    }
    doc.push_back(std::move(layer));
  }
  return doc.dump();
}

template std::string pair_table_to_json(const LayerShape&, const OccupancyMeasure&);
template std::string pair_table_to_json(const LayerShape&, const LossFunction&);

std::string triple_table_to_json(const TripleOccupancy& q3) {
  const auto& shape = q3.shape();
  Json doc = Json::array();
  for (std::size_t h = 0; h < shape.horizon(); ++h) {
    Json layer = Json::array();
    for (std::size_t s = shape.layer_begin(h); s < shape.layer_end(h); ++s) {
      Json state = Json::array();
      for (std::size_t a = 0; a < shape.num_actions(); ++a) {
        const auto row = q3.row(s, a);
        state.push_back(Json(std::vector<double>(row.begin(), row.end())));
      }
      layer.push_back(std::move(state));
    }
    doc.push_back(std::move(layer));
  }
  return doc.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec)
    throw std::runtime_error("cannot create directory '" +
                             path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace seeds
