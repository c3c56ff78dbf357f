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

// Text, CSV and JSON renderings of cost reports, template comparisons and
// per-template filter distributions.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "filterdist/cost_model.hpp"
#include "filterdist/templates.hpp"

namespace filterdist {

enum class OutputFormat { kText, kCsv, kJson };

OutputFormat parse_format(std::string_view token);

std::string render_report(const CostReport& report, OutputFormat format);

// Text or CSV; CSV header is
// template,params,macs,activation_total_bytes,activation_peak_bytes,params_delta_pct,macs_delta_pct
std::string render_comparison(std::span<const ComparisonRow> rows, OutputFormat format);

// CSV with header template,layer_index,filters; layer_index is the 1-based
// position in the filter plan.
std::string render_distribution(const ArchitectureSpec& arch,
                                std::span<const TemplateId> templates);

}  // namespace filterdist
