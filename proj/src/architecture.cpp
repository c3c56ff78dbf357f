// Copyright 2026 The filterdist Authors. All Rights Reserved.
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

#include "filterdist/architecture.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "filterdist/error.hpp"
#include "filterdist/shape.hpp"
#include "json.hpp"

namespace filterdist {

using Json = nlohmann::ordered_json;

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kPool: return "pool";
    case LayerKind::kBlock: return "block";
    case LayerKind::kClassifier: return "classifier";
  }
  return "?";
}

std::string_view to_string(BlockType type) {
  return type == BlockType::kResidual ? "residual" : "inception";
}

Rational::Rational(Count num, Count den) {
  if (num <= 0 || den <= 0) {
    throw InvalidArgument("block_expansion must be a positive rational, got " +
                          std::to_string(num) + "/" + std::to_string(den));
  }
  const Count g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Count Rational::scale(Count value) const {
  return std::max<Count>(1, value * num_ / den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto to_count = [&](std::string_view part) -> Count {
    if (part.empty() || !std::all_of(part.begin(), part.end(),
                                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("block_expansion '" + std::string(text) +
                           "' is not of the form p or p/q",
                       0);
    }
    return std::stoll(std::string(part));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_count(text), 1);
  return Rational(to_count(text.substr(0, slash)), to_count(text.substr(slash + 1)));
}

namespace {

LayerKind parse_kind(const std::string& token) {
  if (token == "conv") return LayerKind::kConv;
  if (token == "pool") return LayerKind::kPool;
  if (token == "block") return LayerKind::kBlock;
  if (token == "classifier") return LayerKind::kClassifier;
  throw ParseError("unknown layer kind '" + token + "'", 0);
}

BlockType parse_block_type(const std::string& token) {
  if (token == "residual") return BlockType::kResidual;
  if (token == "inception") return BlockType::kInception;
  throw ParseError("unknown block_type '" + token + "'", 0);
}

void reject_unknown_fields(const Json& object, std::initializer_list<std::string_view> allowed,
                           const std::string& where) {
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ParseError("unknown field '" + item.key() + "' in " + where, 0);
    }
  }
}

const Json& require(const Json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw ParseError("missing field '" + std::string(key) + "' in " + where, 0);
  }
  return *it;
}

Count as_integer(const Json& value, const char* key, const std::string& where) {
  if (!value.is_number_integer()) {
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be an integer", 0);
  }
  return value.get<Count>();
}

int as_small_integer(const Json& value, const char* key, const std::string& where) {
  const Count v = as_integer(value, key, where);
  if (v < -(1 << 30) || v > (1 << 30)) {
    throw ParseError("field '" + std::string(key) + "' in " + where + " is out of range", 0);
  }
  return static_cast<int>(v);
}

std::string as_string(const Json& value, const char* key, const std::string& where) {
  if (!value.is_string()) {
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be a string", 0);
  }
  return value.get<std::string>();
}

bool as_bool(const Json& value, const char* key, const std::string& where) {
  if (!value.is_boolean()) {
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be a boolean", 0);
  }
  return value.get<bool>();
}

LayerSpec parse_layer(const Json& node, std::size_t position) {
  const std::string where = "layers[" + std::to_string(position) + "]";
  if (!node.is_object()) throw ParseError(where + " must be an object", 0);
  reject_unknown_fields(node,
                        {"id", "kind", "filters", "kernel", "stride", "padding", "separable",
                         "block_type", "block_internal_layers", "block_expansion"},
                        where);

  LayerSpec layer;
  layer.id = as_small_integer(require(node, "id", where), "id", where);
  layer.kind = parse_kind(as_string(require(node, "kind", where), "kind", where));

  if (auto it = node.find("filters"); it != node.end()) {
    layer.filters = as_integer(*it, "filters", where);
  }
  const bool spatial = layer.kind != LayerKind::kClassifier;
  if (auto it = node.find("kernel"); it != node.end()) {
    layer.kernel = as_small_integer(*it, "kernel", where);
  } else if (spatial) {
    throw ParseError("missing field 'kernel' in " + where, 0);
  }
  if (auto it = node.find("stride"); it != node.end()) {
    layer.stride = as_small_integer(*it, "stride", where);
  }
  if (auto it = node.find("padding"); it != node.end()) {
    layer.padding = as_small_integer(*it, "padding", where);
  } else if (layer.kind == LayerKind::kConv || layer.kind == LayerKind::kBlock) {
    layer.padding = layer.kernel / 2;
  }
  if (auto it = node.find("separable"); it != node.end()) {
    layer.separable = as_bool(*it, "separable", where);
  }
  if (auto it = node.find("block_type"); it != node.end()) {
    layer.block_type = parse_block_type(as_string(*it, "block_type", where));
  }
  if (auto it = node.find("block_internal_layers"); it != node.end()) {
    layer.block_internal_layers = as_small_integer(*it, "block_internal_layers", where);
  } else if (layer.kind == LayerKind::kBlock) {
    throw ParseError("missing field 'block_internal_layers' in " + where, 0);
  }
  if (auto it = node.find("block_expansion"); it != node.end()) {
    if (it->is_number_integer()) {
      layer.block_expansion = Rational(it->get<Count>(), 1);
    } else if (it->is_string()) {
      layer.block_expansion = Rational::parse(it->get<std::string>());
    } else {
      throw ParseError("field 'block_expansion' in " + where +
                           " must be an integer or a \"p/q\" string",
                       0);
    }
  }
  return layer;
}

Json layer_to_json(const LayerSpec& layer) {
  Json node;
  node["id"] = layer.id;
  node["kind"] = std::string(to_string(layer.kind));
  if (layer.filters) node["filters"] = *layer.filters;
  if (layer.kind != LayerKind::kClassifier) {
    node["kernel"] = layer.kernel;
    node["stride"] = layer.stride;
    node["padding"] = layer.padding;
  }
  if (layer.separable) node["separable"] = true;
  if (layer.kind == LayerKind::kBlock) {
    node["block_type"] = std::string(to_string(layer.block_type));
    node["block_internal_layers"] = layer.block_internal_layers;
    if (layer.block_expansion.den() == 1) {
      node["block_expansion"] = layer.block_expansion.num();
    } else {
      node["block_expansion"] = layer.block_expansion.to_string();
    }
  }
  return node;
}

std::string layer_label(const LayerSpec& layer) {
  return std::string(to_string(layer.kind)) + " layer " + std::to_string(layer.id);
}

void validate_layer(const LayerSpec& layer, const ArchitectureSpec& arch) {
  const std::string label = layer_label(layer);
  const bool has_filters = layer.kind != LayerKind::kPool;
  if (!has_filters && layer.filters) {
    throw ValidationError(label + ": pool layers carry no filters");
  }
  if (has_filters && (!layer.filters || *layer.filters < 1)) {
    throw ValidationError(label + ": filters must be >= 1");
  }
  if (layer.kind == LayerKind::kClassifier) {
    if (*layer.filters != arch.num_classes) {
      throw ValidationError(label + ": classifier filters must equal num_classes");
    }
    if (layer.kernel != 0 || layer.stride != 1 || layer.padding != 0) {
      throw ValidationError(label + ": classifier takes no kernel, stride or padding");
    }
  } else {
    if (layer.kernel < 1) throw ValidationError(label + ": kernel must be >= 1");
    if (layer.stride < 1) throw ValidationError(label + ": stride must be >= 1");
    if (layer.padding < 0) throw ValidationError(label + ": padding must be >= 0");
  }
  if (layer.separable && layer.kind != LayerKind::kConv) {
    throw ValidationError(label + ": only conv layers can be separable");
  }
  if (layer.kind == LayerKind::kBlock) {
    if (layer.block_internal_layers < 1) {
      throw ValidationError(label + ": block_internal_layers must be >= 1");
    }
    if (layer.block_type == BlockType::kInception) {
      if (layer.block_internal_layers != 7) {
        throw ValidationError(label + ": inception blocks have exactly 7 internal conv layers");
      }
      if (layer.block_expansion != Rational()) {
        throw ValidationError(label + ": inception blocks take no block_expansion");
      }
      if (layer.stride != 1 || 2 * layer.padding != layer.kernel - 1) {
        throw ValidationError(label +
                              ": inception blocks need stride 1 and same padding (kernel odd, "
                              "padding kernel/2)");
      }
    }
  } else if (layer.block_internal_layers != 0 || layer.block_expansion != Rational() ||
             layer.block_type != BlockType::kResidual) {
    throw ValidationError(label + ": block fields are only valid on block layers");
  }
}

}  // namespace

void validate(const ArchitectureSpec& arch) {
  if (arch.name.empty()) throw ValidationError("name must be non-empty");
  if (arch.input.height < 1 || arch.input.width < 1 || arch.input.channels < 1) {
    throw ValidationError("input height, width and channels must be >= 1");
  }
  if (arch.num_classes < 1) throw ValidationError("num_classes must be >= 1");
  if (arch.layers.empty()) throw ValidationError("layers must be non-empty");

  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    const LayerSpec& layer = arch.layers[i];
    if (layer.id != static_cast<int>(i) + 1) {
      throw ValidationError("layer id " + std::to_string(layer.id) +
                            " must equal its 1-based position " + std::to_string(i + 1));
    }
    const bool last = i + 1 == arch.layers.size();
    if ((layer.kind == LayerKind::kClassifier) != last) {
      throw ValidationError("classifier must be final layer");
    }
    validate_layer(layer, arch);
  }
  infer_shapes(arch);
}

ArchitectureSpec parse_architecture(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
  if (!root.is_object()) throw ParseError("architecture must be a JSON object", 0);
  reject_unknown_fields(root, {"name", "input", "num_classes", "batch_norm", "layers"},
                        "architecture");

  ArchitectureSpec arch;
  arch.name = as_string(require(root, "name", "architecture"), "name", "architecture");

  const Json& input = require(root, "input", "architecture");
  if (!input.is_object()) throw ParseError("field 'input' must be an object", 0);
  reject_unknown_fields(input, {"height", "width", "channels"}, "input");
  arch.input.height = as_integer(require(input, "height", "input"), "height", "input");
  arch.input.width = as_integer(require(input, "width", "input"), "width", "input");
  arch.input.channels = as_integer(require(input, "channels", "input"), "channels", "input");

  arch.num_classes =
      as_integer(require(root, "num_classes", "architecture"), "num_classes", "architecture");
  if (auto it = root.find("batch_norm"); it != root.end()) {
    arch.batch_norm = as_bool(*it, "batch_norm", "architecture");
  }

  const Json& layers = require(root, "layers", "architecture");
  if (!layers.is_array()) throw ParseError("field 'layers' must be an array", 0);
  arch.layers.reserve(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    arch.layers.push_back(parse_layer(layers[i], i));
  }

  validate(arch);
  return arch;
}

std::string serialize_architecture(const ArchitectureSpec& arch) {
  Json root;
  root["name"] = arch.name;
  root["input"] = Json{{"height", arch.input.height},
                       {"width", arch.input.width},
                       {"channels", arch.input.channels}};
  root["num_classes"] = arch.num_classes;
  root["batch_norm"] = arch.batch_norm;
  Json layers = Json::array();
  for (const LayerSpec& layer : arch.layers) layers.push_back(layer_to_json(layer));
  root["layers"] = std::move(layers);
  return root.dump(2) + "\n";
}

FilterPlan::FilterPlan(std::vector<int> unit_indices, std::vector<Count> counts)
    : unit_indices_(std::move(unit_indices)), counts_(std::move(counts)) {
  if (unit_indices_.size() != counts_.size()) {
    throw InvalidArgument("filter plan needs one count per unit");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

FilterPlan extract_filter_plan(const ArchitectureSpec& arch) {
  std::vector<int> ids;
  std::vector<Count> counts;
  for (const LayerSpec& layer : arch.layers) {
    if (layer.kind == LayerKind::kConv || layer.kind == LayerKind::kBlock) {
      ids.push_back(layer.id);
      counts.push_back(*layer.filters);
    }
  }
  if (ids.empty()) {
    throw InvalidArgument("architecture '" + arch.name + "' has no redistributable units");
  }
  return FilterPlan(std::move(ids), std::move(counts));
}

ArchitectureSpec apply_filter_plan(const ArchitectureSpec& arch,
                                   std::span<const Count> counts) {
  const FilterPlan plan = extract_filter_plan(arch);
  if (static_cast<Count>(counts.size()) != plan.depth()) {
    throw InvalidArgument("expected " + std::to_string(plan.depth()) + " filter counts, got " +
                          std::to_string(counts.size()));
  }
  ArchitectureSpec out = arch;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) {
      throw InvalidArgument("filter count for unit " + std::to_string(i + 1) +
                            " must be >= 1, got " + std::to_string(counts[i]));
    }
    out.layers[plan.unit_indices()[i] - 1].filters = counts[i];
  }
  validate(out);
  return out;
}

}  // namespace filterdist
