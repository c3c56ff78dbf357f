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

#include <random>
#include <string>

#include "doctest.h"
#include "filterdist/architecture.hpp"
#include "filterdist/error.hpp"
#include "filterdist/shape.hpp"
#include "filterdist/zoo.hpp"
#include "support/oracles.hpp"

using namespace filterdist;

namespace {

constexpr const char* kMinimal = R"({
  "name": "tiny",
  "input": {"height": 32, "width": 32, "channels": 3},
  "num_classes": 10,
  "layers": [
    {"id": 1, "kind": "conv", "filters": 8, "kernel": 3},
    {"id": 2, "kind": "classifier", "filters": 10}
  ]
})";

std::string with_layers(const std::string& layers, int classes = 10) {
  return R"({"name": "t", "input": {"height": 8, "width": 8, "channels": 3}, "num_classes": )" +
         std::to_string(classes) + R"(, "layers": [)" + layers + "]}";
}

std::string validation_message(const std::string& text) {
  try {
    parse_architecture(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "<no validation error>";
}

}  // namespace

TEST_CASE("minimal file parses to two layers with defaults filled in") {
  const ArchitectureSpec a = parse_architecture(kMinimal);
  REQUIRE(a.layers.size() == 2);
  CHECK(a.name == "tiny");
  CHECK(a.input == InputGeometry{32, 32, 3});
  CHECK_FALSE(a.batch_norm);
  CHECK(a.layers[0].kind == LayerKind::kConv);
  CHECK(a.layers[0].filters == 8);
  CHECK(a.layers[0].stride == 1);
  CHECK(a.layers[0].padding == 1);
  CHECK(a.layers[1].kind == LayerKind::kClassifier);
}

TEST_CASE("classifier that is not last is rejected") {
  const std::string text = with_layers(R"({"id": 1, "kind": "classifier", "filters": 10},
                                          {"id": 2, "kind": "conv", "filters": 4, "kernel": 3})");
  CHECK(validation_message(text) == "classifier must be final layer");
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "conv", "filters": 4, "kernel": 3})")) ==
        "classifier must be final layer");
}

TEST_CASE("syntax errors report a byte position") {
  const std::string text = R"({"name": "x", "input": {"height": 8,, }})";
  try {
    parse_architecture(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 37);
    CHECK(std::string(e.what()).find("byte 37") != std::string::npos);
  }
}

TEST_CASE("strict mode rejects unknown fields") {
  CHECK_THROWS_AS(parse_architecture(with_layers(
                      R"({"id": 1, "kind": "conv", "filters": 4, "kernel": 3, "groups": 2},
                         {"id": 2, "kind": "classifier", "filters": 10})")),
                  ParseError);
  std::string text = kMinimal;
  text.insert(1, R"("author": "me",)");
  CHECK_THROWS_AS(parse_architecture(text), ParseError);
}

TEST_CASE("type and presence errors are parse errors") {
  CHECK_THROWS_AS(parse_architecture(with_layers(
                      R"({"id": 1, "kind": "conv", "filters": 4.5, "kernel": 3},
                         {"id": 2, "kind": "classifier", "filters": 10})")),
                  ParseError);
  CHECK_THROWS_AS(parse_architecture(with_layers(
                      R"({"id": 1, "kind": "conv", "filters": 4},
                         {"id": 2, "kind": "classifier", "filters": 10})")),
                  ParseError);
  CHECK_THROWS_AS(parse_architecture(with_layers(
                      R"({"id": 1, "kind": "dense", "filters": 4, "kernel": 1},
                         {"id": 2, "kind": "classifier", "filters": 10})")),
                  ParseError);
  CHECK_THROWS_AS(parse_architecture("[]"), ParseError);
}

TEST_CASE("layer invariants are validation errors naming the invariant") {
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "pool", "filters": 4, "kernel": 2},
                                          {"id": 2, "kind": "classifier", "filters": 10})"))
            .find("pool layers carry no filters") != std::string::npos);
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "conv", "filters": 0, "kernel": 3},
                                          {"id": 2, "kind": "classifier", "filters": 10})"))
            .find("filters must be >= 1") != std::string::npos);
  CHECK(validation_message(with_layers(R"({"id": 2, "kind": "conv", "filters": 4, "kernel": 3},
                                          {"id": 2, "kind": "classifier", "filters": 10})"))
            .find("must equal its 1-based position") != std::string::npos);
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "block", "filters": 4, "kernel": 3,
                                           "block_internal_layers": 0},
                                          {"id": 2, "kind": "classifier", "filters": 10})"))
            .find("block_internal_layers must be >= 1") != std::string::npos);
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "conv", "filters": 4, "kernel": 3},
                                          {"id": 2, "kind": "classifier", "filters": 7})"))
            .find("classifier filters must equal num_classes") != std::string::npos);
  CHECK(validation_message(with_layers(R"({"id": 1, "kind": "conv", "filters": 4, "kernel": 3,
                                           "block_expansion": 2},
                                          {"id": 2, "kind": "classifier", "filters": 10})"))
            .find("block fields are only valid on block layers") != std::string::npos);
}

TEST_CASE("spatial collapse is a validation error") {
  const std::string text = with_layers(R"({"id": 1, "kind": "pool", "kernel": 2, "stride": 2},
                                          {"id": 2, "kind": "pool", "kernel": 2, "stride": 2},
                                          {"id": 3, "kind": "pool", "kernel": 2, "stride": 2},
                                          {"id": 4, "kind": "conv", "filters": 4, "kernel": 3,
                                           "padding": 0},
                                          {"id": 5, "kind": "classifier", "filters": 10})");
  CHECK(validation_message(text).find("spatial size collapses below 1") != std::string::npos);
}

TEST_CASE("rational expansion parses from integers and p/q strings") {
  CHECK(Rational::parse("4") == Rational(4, 1));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational(3, 2).to_string() == "3/2");
  CHECK(Rational(1, 2).scale(1) == 1);
  CHECK(Rational(3, 2).scale(10) == 15);
  CHECK_THROWS_AS(Rational::parse("x/2"), ParseError);
  CHECK_THROWS_AS(Rational(0, 1), InvalidArgument);
}

TEST_CASE("serialization is deterministic and keeps block fields") {
  const ArchitectureSpec r = build_model({ZooFamily::kResnet50, ZooDataset::kCifar10});
  const std::string once = serialize_architecture(r);
  CHECK(once == serialize_architecture(r));
  CHECK(once.find("\"block_internal_layers\": 3") != std::string::npos);
  CHECK(once.find("\"block_expansion\": 4") != std::string::npos);
  CHECK(once.find("\"block_type\": \"residual\"") != std::string::npos);

  ArchitectureSpec half = r;
  half.layers[1].block_expansion = Rational(1, 2);
  CHECK(serialize_architecture(half).find("\"block_expansion\": \"1/2\"") != std::string::npos);
  CHECK(parse_architecture(serialize_architecture(half)) == half);
}

TEST_CASE("zoo models round-trip through the file format") {
  for (const ZooModelId& id : list_models()) {
    const ArchitectureSpec a = build_model(id);
    CAPTURE(a.name);
    CHECK(parse_architecture(serialize_architecture(a)) == a);
  }
}

TEST_CASE("round-trip property over generated architectures") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const ArchitectureSpec a = testing::random_architecture(rng, 2, 8, 16);
    const std::string text = serialize_architecture(a);
    const ArchitectureSpec back = parse_architecture(text);
    REQUIRE(back == a);
    REQUIRE(serialize_architecture(back) == text);
  }
}

TEST_CASE("filter plan extraction") {
  SUBCASE("VGG-19 has 16 units totalling 5504") {
    const FilterPlan p = extract_filter_plan(build_model({ZooFamily::kVgg19, ZooDataset::kCifar10}));
    CHECK(p.depth() == 16);
    CHECK(p.total() == 5504);
    CHECK(p.counts() == std::vector<Count>{64, 64, 128, 128, 256, 256, 256, 256, 512, 512, 512,
                                           512, 512, 512, 512, 512});
  }
  SUBCASE("single conv") {
    const FilterPlan p = extract_filter_plan(parse_architecture(kMinimal));
    CHECK(p.depth() == 1);
    CHECK(p.total() == 8);
    CHECK(p.unit_indices() == std::vector<int>{1});
  }
  SUBCASE("blocks count as one unit each") {
    const ArchitectureSpec a = parse_architecture(with_layers(
        R"({"id": 1, "kind": "block", "filters": 16, "kernel": 3, "block_internal_layers": 2},
           {"id": 2, "kind": "pool", "kernel": 2, "stride": 2},
           {"id": 3, "kind": "block", "filters": 32, "kernel": 3, "block_internal_layers": 3},
           {"id": 4, "kind": "classifier", "filters": 10})"));
    const FilterPlan p = extract_filter_plan(a);
    CHECK(p.depth() == 2);
    CHECK(p.total() == 48);
    CHECK(p.unit_indices() == std::vector<int>{1, 3});
  }
  SUBCASE("no redistributable units") {
    const ArchitectureSpec a = parse_architecture(
        with_layers(R"({"id": 1, "kind": "pool", "kernel": 2, "stride": 2},
                       {"id": 2, "kind": "classifier", "filters": 10})"));
    CHECK_THROWS_AS(extract_filter_plan(a), InvalidArgument);
  }
}

TEST_CASE("applying a filter plan") {
  const ArchitectureSpec vgg = build_model({ZooFamily::kVgg19, ZooDataset::kCifar10});

  SUBCASE("own counts are the identity") {
    const FilterPlan p = extract_filter_plan(vgg);
    CHECK(apply_filter_plan(vgg, p.counts()) == vgg);
  }
  SUBCASE("VGG-19 with all-344 counts") {
    const std::vector<Count> counts(16, 344);
    const ArchitectureSpec out = apply_filter_plan(vgg, counts);
    for (const LayerSpec& l : out.layers) {
      if (l.kind == LayerKind::kConv) CHECK(l.filters == 344);
      if (l.kind == LayerKind::kClassifier) CHECK(l.filters == 10);
    }
  }
  SUBCASE("block expansion applies to the final internal conv") {
    const ArchitectureSpec a = parse_architecture(with_layers(
        R"({"id": 1, "kind": "block", "filters": 16, "kernel": 3, "block_internal_layers": 3,
            "block_expansion": 4},
           {"id": 2, "kind": "classifier", "filters": 10})"));
    const std::vector<Count> counts{8};
    const ArchitectureSpec out = apply_filter_plan(a, counts);
    const LayerShape s = infer_shapes(out).front();
    REQUIRE(s.convs.size() == 4);  // three internal convs plus the 3 -> 32 projection
    CHECK(s.convs[0].out_channels == 8);
    CHECK(s.convs[1].out_channels == 8);
    CHECK(s.convs[2].out_channels == 32);
    CHECK(s.output.channels == 32);
    CHECK(infer_shapes(out).back().input.channels == 32);
  }
  SUBCASE("errors") {
    const std::vector<Count> short_counts(15, 344);
    CHECK_THROWS_AS(apply_filter_plan(vgg, short_counts), InvalidArgument);
    std::vector<Count> zero(16, 344);
    zero[3] = 0;
    CHECK_THROWS_AS(apply_filter_plan(vgg, zero), InvalidArgument);
  }
}

TEST_CASE("apply then extract returns the new counts on generated architectures") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const ArchitectureSpec a = testing::random_architecture(rng, 3, 8, 12);
    const FilterPlan p = extract_filter_plan(a);
    std::vector<Count> counts(p.counts().size());
    for (Count& c : counts) c = std::uniform_int_distribution<Count>(1, 20)(rng);
    const ArchitectureSpec out = apply_filter_plan(a, counts);
    REQUIRE(extract_filter_plan(out).counts() == counts);
    REQUIRE_NOTHROW(validate(out));
    REQUIRE(out.layers.back() == a.layers.back());
  }
}

TEST_CASE("shape propagation details") {
  CHECK(conv_output_size(32, 3, 1, 1) == 32);
  CHECK(conv_output_size(32, 3, 2, 1) == 16);
  CHECK(conv_output_size(5, 2, 2, 0) == 2);
  CHECK(conv_output_size(1, 3, 1, 0) == 0);

  SUBCASE("residual shortcut is free when only the stride changes") {
    const ArchitectureSpec a = parse_architecture(with_layers(
        R"({"id": 1, "kind": "conv", "filters": 8, "kernel": 3},
           {"id": 2, "kind": "block", "filters": 8, "kernel": 3, "stride": 2,
            "block_internal_layers": 2},
           {"id": 3, "kind": "classifier", "filters": 10})"));
    const LayerShape s = infer_shapes(a)[1];
    CHECK(s.convs.size() == 2);
    CHECK(s.output == TensorShape{8, 4, 4});
  }
  SUBCASE("separable conv lowers to depthwise plus pointwise") {
    const ArchitectureSpec a = parse_architecture(with_layers(
        R"({"id": 1, "kind": "conv", "filters": 16, "kernel": 3, "stride": 2, "separable": true},
           {"id": 2, "kind": "classifier", "filters": 10})"));
    const LayerShape s = infer_shapes(a)[0];
    REQUIRE(s.convs.size() == 2);
    CHECK(s.convs[0].groups == 3);
    CHECK(s.convs[0].out_channels == 3);
    CHECK(s.convs[1].kernel == 1);
    CHECK(s.output == TensorShape{16, 4, 4});
  }
  SUBCASE("inception block concatenates four branches") {
    const ArchitectureSpec a = parse_architecture(with_layers(
        R"({"id": 1, "kind": "block", "block_type": "inception", "filters": 5, "kernel": 3,
            "block_internal_layers": 7},
           {"id": 2, "kind": "classifier", "filters": 10})"));
    const LayerShape s = infer_shapes(a)[0];
    CHECK(s.convs.size() == 7);
    CHECK(s.output == TensorShape{20, 8, 8});
  }
  SUBCASE("inception blocks must keep geometry") {
    CHECK(validation_message(with_layers(
              R"({"id": 1, "kind": "block", "block_type": "inception", "filters": 5,
                  "kernel": 3, "stride": 2, "block_internal_layers": 7},
                 {"id": 2, "kind": "classifier", "filters": 10})"))
              .find("stride 1") != std::string::npos);
  }
}
