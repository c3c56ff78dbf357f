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

// Architecture data model: the layer stack a filter distribution is applied to,
// its JSON file format, and the redistributable filter plan extracted from it.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace filterdist {

using Count = std::int64_t;

enum class LayerKind { kConv, kPool, kBlock, kClassifier };

// Internal topology of a block unit.
//  residual:  chain of internal convs plus a shortcut (projection when the
//             channel count changes).
//  inception: four parallel branches (1x1 | 1x1-kxk | 1x1-kxk-kxk |
//             pool-1x1), every internal conv having the block's width and the
//             branch outputs concatenated.
enum class BlockType { kResidual, kInception };

std::string_view to_string(LayerKind kind);
std::string_view to_string(BlockType type);

// Positive rational p/q, kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Count num, Count den);

  Count num() const { return num_; }
  Count den() const { return den_; }

  // floor(value * p / q), never below 1.
  Count scale(Count value) const;

  std::string to_string() const;
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  Count num_ = 1;
  Count den_ = 1;
};

struct LayerSpec {
  int id = 0;  // 1-based position in the stack
  LayerKind kind = LayerKind::kConv;
  std::optional<Count> filters;  // absent for pool
  int kernel = 0;                // 0 for classifier
  int stride = 1;
  int padding = 0;
  bool separable = false;  // conv only: depthwise kxk followed by pointwise 1x1
  BlockType block_type = BlockType::kResidual;
  int block_internal_layers = 0;  // block only
  Rational block_expansion;       // block only, applied to the final internal conv

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct InputGeometry {
  Count height = 0;
  Count width = 0;
  Count channels = 0;

  friend bool operator==(const InputGeometry&, const InputGeometry&) = default;
};

struct ArchitectureSpec {
  std::string name;
  InputGeometry input;
  Count num_classes = 0;
  bool batch_norm = false;  // every conv followed by an affine batch norm
  std::vector<LayerSpec> layers;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

// Parses and validates the JSON architecture format. Throws ParseError for
// malformed text or unknown fields, ValidationError for invariant violations.
ArchitectureSpec parse_architecture(std::string_view text);

// Deterministic JSON rendering with every field materialized.
std::string serialize_architecture(const ArchitectureSpec& arch);

// Throws ValidationError naming the first violated invariant.
void validate(const ArchitectureSpec& arch);

// Ordered redistributable units (conv layers and blocks) of an architecture.
class FilterPlan {
 public:
  FilterPlan(std::vector<int> unit_indices, std::vector<Count> counts);

  // Layer ids (1-based) of the units, in order.
  const std::vector<int>& unit_indices() const { return unit_indices_; }
  const std::vector<Count>& counts() const { return counts_; }
  Count depth() const { return static_cast<Count>(counts_.size()); }
  Count total() const { return total_; }

 private:
  std::vector<int> unit_indices_;
  std::vector<Count> counts_;
  Count total_ = 0;
};

FilterPlan extract_filter_plan(const ArchitectureSpec& arch);

// Writes `counts` back into the plan's units. Block units take the count on
// every internal conv; the block's expansion then applies to the final one.
ArchitectureSpec apply_filter_plan(const ArchitectureSpec& arch,
                                   std::span<const Count> counts);

}  // namespace filterdist
