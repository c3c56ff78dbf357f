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

#include "filterdist/zoo.hpp"

#include <array>
#include <string>

#include "filterdist/error.hpp"

namespace filterdist {

namespace {

constexpr std::array<ZooFamily, 4> kFamilies = {ZooFamily::kVgg19, ZooFamily::kResnet50,
                                                ZooFamily::kInception, ZooFamily::kMobilenet};
constexpr std::array<ZooDataset, 3> kDatasets = {ZooDataset::kCifar10, ZooDataset::kCifar100,
                                                 ZooDataset::kTinyImagenet};

class StackBuilder {
 public:
  StackBuilder(std::string name, ZooDataset dataset) {
    arch_.name = std::move(name);
    const Count size = input_size(dataset);
    arch_.input = {size, size, 3};
    arch_.num_classes = num_classes(dataset);
    arch_.batch_norm = true;
    tiny_ = dataset == ZooDataset::kTinyImagenet;
  }

  StackBuilder& conv(Count filters, int kernel = 3, int stride = 1, bool separable = false) {
    LayerSpec& l = push(LayerKind::kConv, kernel, stride);
    l.filters = filters;
    l.separable = separable;
    l.padding = kernel / 2;
    return *this;
  }

  // The stem is the first conv. 64x64 inputs get an extra 2x2 downsampling
  // stage right after it so the remaining stack sees CIFAR geometry.
  StackBuilder& stem(Count filters) {
    conv(filters);
    if (tiny_) pool(2, 2);
    return *this;
  }

  StackBuilder& pool(int kernel, int stride, int padding = 0) {
    push(LayerKind::kPool, kernel, stride).padding = padding;
    return *this;
  }

  StackBuilder& residual(Count width, int stride, int internal_layers, Count expansion) {
    LayerSpec& l = push(LayerKind::kBlock, 3, stride);
    l.filters = width;
    l.padding = 1;
    l.block_type = BlockType::kResidual;
    l.block_internal_layers = internal_layers;
    l.block_expansion = Rational(expansion, 1);
    return *this;
  }

  StackBuilder& inception(Count width) {
    LayerSpec& l = push(LayerKind::kBlock, 3, 1);
    l.filters = width;
    l.padding = 1;
    l.block_type = BlockType::kInception;
    l.block_internal_layers = 7;
    return *this;
  }

  ArchitectureSpec finish() {
    LayerSpec& l = push(LayerKind::kClassifier, 0, 1);
    l.filters = arch_.num_classes;
    validate(arch_);
    return std::move(arch_);
  }

 private:
  LayerSpec& push(LayerKind kind, int kernel, int stride) {
    LayerSpec l;
    l.id = static_cast<int>(arch_.layers.size()) + 1;
    l.kind = kind;
    l.kernel = kernel;
    l.stride = stride;
    arch_.layers.push_back(l);
    return arch_.layers.back();
  }

  ArchitectureSpec arch_;
  bool tiny_ = false;
};

ArchitectureSpec vgg19(StackBuilder b) {
  constexpr int kPool = 0;
  constexpr std::array<int, 21> cfg = {64,  64,  kPool, 128, 128, kPool, 256,
                                       256, 256, 256,   kPool, 512, 512, 512,
                                       512, kPool, 512, 512, 512, 512, kPool};
  b.stem(cfg[0]);
  for (std::size_t i = 1; i < cfg.size(); ++i) {
    if (cfg[i] == kPool) {
      b.pool(2, 2);
    } else {
      b.conv(cfg[i]);
    }
  }
  return b.finish();
}

// Bottleneck stages [3, 4, 6, 3] with expansion 4.
ArchitectureSpec resnet50(StackBuilder b) {
  struct Stage {
    Count width;
    int blocks;
    int stride;
  };
  constexpr std::array<Stage, 4> stages = {{{64, 3, 1}, {128, 4, 2}, {256, 6, 2}, {512, 3, 2}}};
  b.stem(64);
  for (const Stage& s : stages) {
    for (int i = 0; i < s.blocks; ++i) b.residual(s.width, i == 0 ? s.stride : 1, 3, 4);
  }
  return b.finish();
}

ArchitectureSpec mobilenet(StackBuilder b) {
  struct Unit {
    Count width;
    int stride;
  };
  constexpr std::array<Unit, 13> units = {{{64, 1},
                                           {128, 2},
                                           {128, 1},
                                           {256, 2},
                                           {256, 1},
                                           {512, 2},
                                           {512, 1},
                                           {512, 1},
                                           {512, 1},
                                           {512, 1},
                                           {512, 1},
                                           {1024, 2},
                                           {1024, 1}}};
  b.stem(32);
  for (const Unit& u : units) b.conv(u.width, 3, u.stride, true);
  return b.finish();
}

// Nine inception modules in three resolution groups, each module at one width.
ArchitectureSpec inception(StackBuilder b) {
  b.stem(64);
  b.inception(64).inception(96);
  b.pool(3, 2, 1);
  b.inception(96).inception(96).inception(112).inception(112).inception(160);
  b.pool(3, 2, 1);
  b.inception(160).inception(208);
  return b.finish();
}

}  // namespace

std::string_view to_token(ZooFamily family) {
  switch (family) {
    case ZooFamily::kVgg19: return "vgg19";
    case ZooFamily::kResnet50: return "resnet50";
    case ZooFamily::kInception: return "inception";
    case ZooFamily::kMobilenet: return "mobilenet";
  }
  return "?";
}

std::string_view to_token(ZooDataset dataset) {
  switch (dataset) {
    case ZooDataset::kCifar10: return "cifar10";
    case ZooDataset::kCifar100: return "cifar100";
    case ZooDataset::kTinyImagenet: return "tiny-imagenet";
  }
  return "?";
}

ZooFamily parse_family(std::string_view token) {
  for (ZooFamily f : kFamilies) {
    if (token == to_token(f)) return f;
  }
  throw InvalidArgument("unknown model family '" + std::string(token) +
                        "' (expected vgg19, resnet50, inception or mobilenet)");
}

ZooDataset parse_dataset(std::string_view token) {
  for (ZooDataset d : kDatasets) {
    if (token == to_token(d)) return d;
  }
  throw InvalidArgument("unknown dataset '" + std::string(token) +
                        "' (expected cifar10, cifar100 or tiny-imagenet)");
}

Count num_classes(ZooDataset dataset) {
  switch (dataset) {
    case ZooDataset::kCifar10: return 10;
    case ZooDataset::kCifar100: return 100;
    case ZooDataset::kTinyImagenet: return 200;
  }
  return 0;
}

Count input_size(ZooDataset dataset) { return dataset == ZooDataset::kTinyImagenet ? 64 : 32; }

ArchitectureSpec build_model(ZooModelId id) {
  StackBuilder b(std::string(to_token(id.family)) + "-" + std::string(to_token(id.dataset)),
                 id.dataset);
  switch (id.family) {
    case ZooFamily::kVgg19: return vgg19(std::move(b));
    case ZooFamily::kResnet50: return resnet50(std::move(b));
    case ZooFamily::kInception: return inception(std::move(b));
    case ZooFamily::kMobilenet: return mobilenet(std::move(b));
  }
  throw InvalidArgument("unknown model family");
}

std::vector<ZooModelId> list_models() {
  std::vector<ZooModelId> ids;
  for (ZooFamily f : kFamilies) {
    for (ZooDataset d : kDatasets) ids.push_back({f, d});
  }
  return ids;
}

}  // namespace filterdist
