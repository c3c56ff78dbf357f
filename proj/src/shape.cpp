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

#include "filterdist/shape.hpp"

#include <string>

#include "filterdist/error.hpp"

namespace filterdist {

Count conv_output_size(Count size, int kernel, int stride, int padding) {
  const Count span = size + 2 * static_cast<Count>(padding) - kernel;
  if (span < 0 || stride < 1) return 0;
  return span / stride + 1;
}

namespace {

class ShapeBuilder {
 public:
  ShapeBuilder(const LayerSpec& layer, TensorShape input) : layer_(layer) {
    shape_.layer_id = layer.id;
    shape_.kind = layer.kind;
    shape_.input = input;
  }

  // Appends a conv on `from` and returns its output shape.
  TensorShape conv(const TensorShape& from, Count out_channels, int kernel, int stride,
                   int padding, bool depthwise = false) {
    PrimitiveConv c;
    c.in_channels = from.channels;
    c.out_channels = depthwise ? from.channels : out_channels;
    c.groups = depthwise ? from.channels : 1;
    c.kernel = kernel;
    c.stride = stride;
    c.padding = padding;
    c.out_height = conv_output_size(from.height, kernel, stride, padding);
    c.out_width = conv_output_size(from.width, kernel, stride, padding);
    if (c.out_height < 1 || c.out_width < 1) {
      throw ValidationError(label() + ": spatial size collapses below 1 (input " +
                            std::to_string(from.height) + "x" + std::to_string(from.width) +
                            ", kernel " + std::to_string(kernel) + ", stride " +
                            std::to_string(stride) + ", padding " + std::to_string(padding) +
                            ")");
    }
    shape_.convs.push_back(c);
    return {c.out_channels, c.out_height, c.out_width};
  }

  std::string label() const {
    return std::string(to_string(layer_.kind)) + " layer " + std::to_string(layer_.id);
  }

  LayerShape finish(TensorShape output) {
    shape_.output = output;
    return std::move(shape_);
  }

 private:
  const LayerSpec& layer_;
  LayerShape shape_;
};

TensorShape residual_block(ShapeBuilder& b, const LayerSpec& layer, const TensorShape& in) {
  const Count width = *layer.filters;
  const Count final_width = layer.block_expansion.scale(width);
  const int n = layer.block_internal_layers;
  const int k = layer.kernel;

  TensorShape x = in;
  if (n == 1) {
    x = b.conv(x, final_width, k, layer.stride, layer.padding);
  } else if (n == 2) {
    x = b.conv(x, width, k, layer.stride, layer.padding);
    x = b.conv(x, final_width, k, 1, layer.padding);
  } else {
    // Bottleneck: 1x1 reduce, (n - 2) kxk convs carrying the stride, 1x1 restore.
    x = b.conv(x, width, 1, 1, 0);
    x = b.conv(x, width, k, layer.stride, layer.padding);
    for (int i = 0; i < n - 3; ++i) x = b.conv(x, width, k, 1, layer.padding);
    x = b.conv(x, final_width, 1, 1, 0);
  }

  const Count skip_h = conv_output_size(in.height, 1, layer.stride, 0);
  const Count skip_w = conv_output_size(in.width, 1, layer.stride, 0);
  if (skip_h != x.height || skip_w != x.width) {
    throw ValidationError(b.label() + ": shortcut spatial size " + std::to_string(skip_h) + "x" +
                          std::to_string(skip_w) + " does not match residual path " +
                          std::to_string(x.height) + "x" + std::to_string(x.width));
  }
  // Channel change needs a 1x1 projection; a pure stride is a parameter-free subsample.
  if (in.channels != final_width) b.conv(in, final_width, 1, layer.stride, 0);
  return x;
}

TensorShape inception_block(ShapeBuilder& b, const LayerSpec& layer, const TensorShape& in) {
  const Count w = *layer.filters;
  const int k = layer.kernel;
  const int p = layer.padding;

  b.conv(in, w, 1, 1, 0);

  TensorShape x = b.conv(in, w, 1, 1, 0);
  b.conv(x, w, k, 1, p);

  x = b.conv(in, w, 1, 1, 0);
  x = b.conv(x, w, k, 1, p);
  x = b.conv(x, w, k, 1, p);

  // 3x3 stride-1 max pool keeps the geometry; its 1x1 projection follows.
  b.conv(in, w, 1, 1, 0);
  return {4 * w, in.height, in.width};
}

}  // namespace

std::vector<LayerShape> infer_shapes(const ArchitectureSpec& arch) {
  std::vector<LayerShape> shapes;
  shapes.reserve(arch.layers.size());
  TensorShape current{arch.input.channels, arch.input.height, arch.input.width};

  for (const LayerSpec& layer : arch.layers) {
    ShapeBuilder b(layer, current);
    TensorShape out;
    switch (layer.kind) {
      case LayerKind::kConv:
        if (layer.separable) {
          const TensorShape dw =
              b.conv(current, current.channels, layer.kernel, layer.stride, layer.padding, true);
          out = b.conv(dw, *layer.filters, 1, 1, 0);
        } else {
          out = b.conv(current, *layer.filters, layer.kernel, layer.stride, layer.padding);
        }
        break;
      case LayerKind::kPool: {
        out = {current.channels,
               conv_output_size(current.height, layer.kernel, layer.stride, layer.padding),
               conv_output_size(current.width, layer.kernel, layer.stride, layer.padding)};
        if (out.height < 1 || out.width < 1) {
          throw ValidationError(b.label() + ": spatial size collapses below 1");
        }
        break;
      }
      case LayerKind::kBlock:
        out = layer.block_type == BlockType::kResidual ? residual_block(b, layer, current)
                                                       : inception_block(b, layer, current);
        break;
      case LayerKind::kClassifier:
        // Global average pooling feeds a single fully connected layer.
        out = {*layer.filters, 1, 1};
        break;
    }
    shapes.push_back(b.finish(out));
    current = out;
  }
  return shapes;
}

}  // namespace filterdist
