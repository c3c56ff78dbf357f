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

// Built-in baselines: VGG-19, ResNet-50, Inception and MobileNet adapted to
// CIFAR (32x32) and Tiny-ImageNet (64x64) inputs.

#pragma once

#include <string_view>
#include <vector>

#include "filterdist/architecture.hpp"

namespace filterdist {

enum class ZooFamily { kVgg19, kResnet50, kInception, kMobilenet };
enum class ZooDataset { kCifar10, kCifar100, kTinyImagenet };

struct ZooModelId {
  ZooFamily family = ZooFamily::kVgg19;
  ZooDataset dataset = ZooDataset::kCifar10;

  friend bool operator==(const ZooModelId&, const ZooModelId&) = default;
};

std::string_view to_token(ZooFamily family);
std::string_view to_token(ZooDataset dataset);
ZooFamily parse_family(std::string_view token);
ZooDataset parse_dataset(std::string_view token);

Count num_classes(ZooDataset dataset);
Count input_size(ZooDataset dataset);

ArchitectureSpec build_model(ZooModelId id);

// Family-major order: vgg19, resnet50, inception, mobilenet, each over
// cifar10, cifar100, tiny-imagenet.
std::vector<ZooModelId> list_models();

}  // namespace filterdist
