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

// End-to-end checks of the filterdist command line tool.

#include <algorithm>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "support/run.hpp"

using filterdist::testing::run_cli;
using filterdist::testing::slurp;

namespace {

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("zoo then reverse twice reproduces the original bytes") {
  REQUIRE(run_cli("zoo --model vgg19 --dataset cifar10 --out cli_vgg.json").exit_code == 0);
  REQUIRE(run_cli("apply --in cli_vgg.json --template reverse --out cli_rev.json").exit_code == 0);
  REQUIRE(run_cli("apply --in cli_rev.json --template reverse --out cli_rev2.json").exit_code == 0);
  const std::string original = slurp("cli_vgg.json");
  CHECK(!original.empty());
  CHECK(slurp("cli_rev.json") != original);
  CHECK(slurp("cli_rev2.json") == original);
}

TEST_CASE("compare lists every template as csv") {
  const auto r = run_cli("compare --model vgg19 --dataset cifar10 --templates all --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(count_lines(r.out) == 6);
  CHECK(r.out.rfind("template,params,macs,", 0) == 0);
  CHECK(r.out.find("\nbase,20040522,") != std::string::npos);
  CHECK(r.out.find("\nuniform,16004610,") != std::string::npos);
}

TEST_CASE("distribution writes a constant uniform profile") {
  REQUIRE(run_cli("distribution --model vgg19 --dataset cifar10 --templates uniform "
                  "--out cli_dist.csv")
              .exit_code == 0);
  const std::string csv = slurp("cli_dist.csv");
  CHECK(count_lines(csv) == 17);
  for (int layer = 1; layer <= 16; ++layer) {
    CHECK(csv.find("uniform," + std::to_string(layer) + ",344\n") != std::string::npos);
  }
}

TEST_CASE("report formats and determinism") {
  REQUIRE(run_cli("zoo --model resnet50 --dataset cifar100 --out cli_resnet.json").exit_code == 0);
  const auto first = run_cli("report --in cli_resnet.json --format csv --batch 4");
  const auto second = run_cli("report --in cli_resnet.json --format csv --batch 4");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.rfind("layer_id,kind,in_channels,out_channels,", 0) == 0);

  const auto json = run_cli("report --in cli_resnet.json --format json");
  REQUIRE(json.exit_code == 0);
  CHECK(json.out.find("\"batch\": 128") != std::string::npos);

  const auto text = run_cli("report --in cli_resnet.json");
  REQUIRE(text.exit_code == 0);
  CHECK(text.out.find("1 MAC = 2 FLOPs") != std::string::npos);
}

TEST_CASE("failures use distinct exit codes") {
  CHECK(run_cli("apply --in cli_vgg.json --template flat --out cli_x.json").exit_code == 1);
  CHECK(run_cli("report --in does_not_exist.json").exit_code == 2);
  CHECK(run_cli("compare --in cli_vgg.json --model vgg19 --dataset cifar10 --templates all")
            .exit_code == 1);
  CHECK(run_cli("compare --templates all").exit_code == 1);
  CHECK(run_cli("report --in cli_vgg.json --batch 0").exit_code == 1);
  CHECK(run_cli("zoo --model vgg19 --dataset cifar10 --out /nonexistent/dir/x.json").exit_code ==
        2);

  std::FILE* f = std::fopen("cli_broken.json", "w");
  std::fputs("{\"name\": ", f);
  std::fclose(f);
  CHECK(run_cli("report --in cli_broken.json").exit_code == 1);
}
