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

// Shape propagation through an architecture. Every layer is lowered to the
// primitive convolutions it contains so costs can be computed uniformly.

#pragma once

#include <vector>

#include "filterdist/architecture.hpp"

namespace filterdist {

struct TensorShape {
  Count channels = 0;
  Count height = 0;
  Count width = 0;

  Count elements() const { return channels * height * width; }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

// One convolution. Depthwise convs have groups == in_channels == out_channels.
struct PrimitiveConv {
  Count in_channels = 0;
  Count out_channels = 0;
  Count groups = 1;
  int kernel = 1;
  int stride = 1;
  int padding = 0;
  Count out_height = 0;
  Count out_width = 0;
};

struct LayerShape {
  int layer_id = 0;
  LayerKind kind = LayerKind::kConv;
  TensorShape input;
  TensorShape output;
  std::vector<PrimitiveConv> convs;  // empty for pool and classifier
};

// floor((size + 2 * padding - kernel) / stride) + 1, or 0 when the window
// does not fit.
Count conv_output_size(Count size, int kernel, int stride, int padding);

// Throws ValidationError when channels or spatial sizes cannot be propagated.
std::vector<LayerShape> infer_shapes(const ArchitectureSpec& arch);

}  // namespace filterdist
