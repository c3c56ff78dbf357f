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

#include "filterdist/cost_model.hpp"

#include <algorithm>

#include "filterdist/error.hpp"
#include "filterdist/shape.hpp"

namespace filterdist {

namespace {

void require_batch(Count batch) {
  if (batch < 1) throw InvalidArgument("batch must be >= 1, got " + std::to_string(batch));
}

Count conv_params(const PrimitiveConv& c, bool batch_norm) {
  const Count k2 = static_cast<Count>(c.kernel) * c.kernel;
  Count p = k2 * (c.in_channels / c.groups) * c.out_channels + c.out_channels;
  if (batch_norm) p += 2 * c.out_channels;
  return p;
}

Count conv_macs(const PrimitiveConv& c) {
  const Count k2 = static_cast<Count>(c.kernel) * c.kernel;
  return c.out_height * c.out_width * k2 * (c.in_channels / c.groups) * c.out_channels;
}

LayerCost layer_cost(const LayerShape& shape, const ArchitectureSpec& arch, Count batch) {
  LayerCost row;
  row.layer_id = shape.layer_id;
  row.kind = shape.kind;
  row.in_channels = shape.input.channels;
  row.out_channels = shape.output.channels;
  row.out_height = shape.output.height;
  row.out_width = shape.output.width;
  if (shape.kind == LayerKind::kClassifier) {
    row.params = shape.input.channels * shape.output.channels + shape.output.channels;
    row.macs = shape.input.channels * shape.output.channels * batch;
  } else {
    for (const PrimitiveConv& c : shape.convs) {
      row.params += conv_params(c, arch.batch_norm);
      row.macs += conv_macs(c) * batch;
    }
  }
  row.activation_elements = shape.output.elements() * batch;
  row.live_elements = (shape.input.elements() + shape.output.elements()) * batch;
  return row;
}

double delta_pct(Count value, Count base) {
  if (base == 0) return 0.0;
  return 100.0 * (static_cast<double>(value) - static_cast<double>(base)) /
         static_cast<double>(base);
}

}  // namespace

CostReport cost_report(const ArchitectureSpec& arch, Count batch) {
  require_batch(batch);
  CostReport report;
  report.batch = batch;
  for (const LayerShape& shape : infer_shapes(arch)) {
    const LayerCost row = layer_cost(shape, arch, batch);
    report.total_params += row.params;
    report.total_macs += row.macs;
    report.activation_elements_total += row.activation_elements;
    report.activation_elements_peak = std::max(report.activation_elements_peak, row.live_elements);
    report.rows.push_back(row);
  }
  report.param_bytes = report.total_params * kBytesPerElement;
  report.activation_bytes_per_sample = report.activation_elements_total / batch * kBytesPerElement;
  return report;
}

Count count_parameters(const ArchitectureSpec& arch) { return cost_report(arch, 1).total_params; }

Count count_macs(const ArchitectureSpec& arch, Count batch) {
  return cost_report(arch, batch).total_macs;
}

ActivationMemory activation_memory(const ArchitectureSpec& arch, Count batch,
                                   Count bytes_per_element) {
  if (bytes_per_element < 1) throw InvalidArgument("bytes_per_element must be >= 1");
  const CostReport report = cost_report(arch, batch);
  return {report.activation_elements_total * bytes_per_element,
          report.activation_elements_peak * bytes_per_element};
}

std::vector<ComparisonRow> compare_templates(const ArchitectureSpec& arch,
                                             std::span<const TemplateId> templates,
                                             Count batch) {
  require_batch(batch);
  std::vector<TemplateId> order{TemplateId::kBase};
  for (TemplateId id : templates) {
    if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
  }

  std::vector<ComparisonRow> rows;
  rows.reserve(order.size());
  for (TemplateId id : order) {
    ComparisonRow row;
    row.id = id;
    try {
      const CostReport report = cost_report(apply_template(arch, id), batch);
      row.params = report.total_params;
      row.macs = report.total_macs;
      row.activation_total_bytes = report.activation_elements_total * kBytesPerElement;
      row.activation_peak_bytes = report.activation_elements_peak * kBytesPerElement;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  const ComparisonRow& base = rows.front();
  for (ComparisonRow& row : rows) {
    if (row.error) continue;
    row.params_delta_pct = delta_pct(row.params, base.params);
    row.macs_delta_pct = delta_pct(row.macs, base.macs);
  }
  return rows;
}

}  // namespace filterdist
