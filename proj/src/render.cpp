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

#include "filterdist/render.hpp"

#include <cstdio>
#include <sstream>

#include "filterdist/error.hpp"
#include "json.hpp"

namespace filterdist {

namespace {

constexpr std::string_view kCostNote =
    "# MACs are multiply-accumulates (1 MAC = 2 FLOPs). Memory is analytical at 4 bytes per\n"
    "# element; peak activation is an adjacent-layer estimate, not a liveness analysis.\n";

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Renders rows of cells as columns; the first column is left-aligned.
std::string align(const std::vector<std::vector<std::string>>& table) {
  std::vector<std::size_t> widths;
  for (const auto& row : table) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& row : table) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      line += i == 0 ? pad_right(row[i], widths[i]) : pad_left(row[i], widths[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

std::string report_text(const CostReport& r) {
  std::ostringstream out;
  out << kCostNote;
  out << "batch " << r.batch << "\n\n";
  std::vector<std::vector<std::string>> table;
  table.push_back({"layer", "kind", "in_ch", "out_ch", "out_hw", "params", "macs",
                   "activations", "live"});
  for (const LayerCost& row : r.rows) {
    table.push_back({std::to_string(row.layer_id), std::string(to_string(row.kind)),
                     std::to_string(row.in_channels), std::to_string(row.out_channels),
                     std::to_string(row.out_height) + "x" + std::to_string(row.out_width),
                     std::to_string(row.params), std::to_string(row.macs),
                     std::to_string(row.activation_elements), std::to_string(row.live_elements)});
  }
  out << align(table) << '\n';
  out << align({{"total params", std::to_string(r.total_params)},
                {"total macs", std::to_string(r.total_macs)},
                {"activation elements (total)", std::to_string(r.activation_elements_total)},
                {"activation elements (peak)", std::to_string(r.activation_elements_peak)},
                {"param bytes", std::to_string(r.param_bytes)},
                {"activation bytes per sample", std::to_string(r.activation_bytes_per_sample)}});
  return out.str();
}

std::string report_csv(const CostReport& r) {
  std::ostringstream out;
  out << "layer_id,kind,in_channels,out_channels,out_height,out_width,params,macs,"
         "activation_elements,live_elements\n";
  for (const LayerCost& row : r.rows) {
    out << row.layer_id << ',' << to_string(row.kind) << ',' << row.in_channels << ','
        << row.out_channels << ',' << row.out_height << ',' << row.out_width << ','
        << row.params << ',' << row.macs << ',' << row.activation_elements << ','
        << row.live_elements << '\n';
  }
  return out.str();
}

std::string report_json(const CostReport& r) {
  nlohmann::ordered_json root;
  root["batch"] = r.batch;
  root["total_params"] = r.total_params;
  root["total_macs"] = r.total_macs;
  root["activation_elements_total"] = r.activation_elements_total;
  root["activation_elements_peak"] = r.activation_elements_peak;
  root["param_bytes"] = r.param_bytes;
  root["activation_bytes_per_sample"] = r.activation_bytes_per_sample;
  auto rows = nlohmann::ordered_json::array();
  for (const LayerCost& row : r.rows) {
    rows.push_back({{"layer_id", row.layer_id},
                    {"kind", std::string(to_string(row.kind))},
                    {"in_channels", row.in_channels},
                    {"out_channels", row.out_channels},
                    {"out_height", row.out_height},
                    {"out_width", row.out_width},
                    {"params", row.params},
                    {"macs", row.macs},
                    {"activation_elements", row.activation_elements},
                    {"live_elements", row.live_elements}});
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

}  // namespace

OutputFormat parse_format(std::string_view token) {
  if (token == "text") return OutputFormat::kText;
  if (token == "csv") return OutputFormat::kCsv;
  if (token == "json") return OutputFormat::kJson;
  throw InvalidArgument("unknown format '" + std::string(token) + "' (expected text, csv or json)");
}

std::string render_report(const CostReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kText: return report_text(report);
    case OutputFormat::kCsv: return report_csv(report);
    case OutputFormat::kJson: return report_json(report);
  }
  return {};
}

std::string render_comparison(std::span<const ComparisonRow> rows, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    throw InvalidArgument("comparison tables render as text or csv");
  }
  std::ostringstream out;
  if (format == OutputFormat::kCsv) {
    out << "template,params,macs,activation_total_bytes,activation_peak_bytes,"
           "params_delta_pct,macs_delta_pct\n";
    for (const ComparisonRow& row : rows) {
      out << to_token(row.id);
      if (row.error) {
        out << ",,,,,,\n";
        continue;
      }
      out << ',' << row.params << ',' << row.macs << ',' << row.activation_total_bytes << ','
          << row.activation_peak_bytes << ',' << fixed2(row.params_delta_pct) << ','
          << fixed2(row.macs_delta_pct) << '\n';
    }
    return out.str();
  }

  out << kCostNote << '\n';
  std::vector<std::vector<std::string>> table;
  table.push_back({"template", "params", "macs", "act_total_B", "act_peak_B", "params_d%",
                   "macs_d%"});
  std::vector<std::string> errors;
  for (const ComparisonRow& row : rows) {
    if (row.error) {
      table.push_back({std::string(to_token(row.id)), "-", "-", "-", "-", "-", "-"});
      errors.push_back(std::string(to_token(row.id)) + ": " + *row.error);
      continue;
    }
    table.push_back({std::string(to_token(row.id)), std::to_string(row.params),
                     std::to_string(row.macs), std::to_string(row.activation_total_bytes),
                     std::to_string(row.activation_peak_bytes), fixed2(row.params_delta_pct),
                     fixed2(row.macs_delta_pct)});
  }
  out << align(table);
  for (const std::string& e : errors) out << "error " << e << '\n';
  return out.str();
}

std::string render_distribution(const ArchitectureSpec& arch,
                                std::span<const TemplateId> templates) {
  const FilterPlan plan = extract_filter_plan(arch);
  std::ostringstream out;
  out << "template,layer_index,filters\n";
  for (TemplateId id : templates) {
    const std::vector<Count> counts = template_counts(plan, id);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      out << to_token(id) << ',' << i + 1 << ',' << counts[i] << '\n';
    }
  }
  return out.str();
}

}  // namespace filterdist
