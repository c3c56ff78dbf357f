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

// Analytical resource model: parameters, multiply-accumulates (MACs) and
// activation memory. One MAC is two FLOPs. Memory is an estimate at a fixed
// element size; peak activation memory uses the adjacent-layer heuristic
// (a layer's input and output are live together) rather than a liveness
// analysis, so residual skips are not accounted for.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "filterdist/architecture.hpp"
#include "filterdist/templates.hpp"

namespace filterdist {

inline constexpr Count kBytesPerElement = 4;

struct LayerCost {
  int layer_id = 0;
  LayerKind kind = LayerKind::kConv;
  Count in_channels = 0;
  Count out_channels = 0;
  Count out_height = 0;
  Count out_width = 0;
  Count params = 0;
  Count macs = 0;
  Count activation_elements = 0;  // output feature map, whole batch
  Count live_elements = 0;        // input + output feature maps, whole batch
};

struct CostReport {
  Count batch = 1;
  Count total_params = 0;
  Count total_macs = 0;
  Count activation_elements_total = 0;
  Count activation_elements_peak = 0;  // max live_elements over rows
  Count param_bytes = 0;
  Count activation_bytes_per_sample = 0;
  std::vector<LayerCost> rows;
};

Count count_parameters(const ArchitectureSpec& arch);
Count count_macs(const ArchitectureSpec& arch, Count batch);

struct ActivationMemory {
  Count total_bytes = 0;
  Count peak_bytes = 0;
};

ActivationMemory activation_memory(const ArchitectureSpec& arch, Count batch,
                                   Count bytes_per_element);

CostReport cost_report(const ArchitectureSpec& arch, Count batch);

struct ComparisonRow {
  TemplateId id = TemplateId::kBase;
  std::optional<std::string> error;  // set when the template cannot be applied
  Count params = 0;
  Count macs = 0;
  Count activation_total_bytes = 0;
  Count activation_peak_bytes = 0;
  double params_delta_pct = 0.0;
  double macs_delta_pct = 0.0;
};

// One row per template, base always first. Template failures are recorded
// on their row instead of aborting the comparison.
std::vector<ComparisonRow> compare_templates(const ArchitectureSpec& arch,
                                             std::span<const TemplateId> templates,
                                             Count batch);

}  // namespace filterdist
