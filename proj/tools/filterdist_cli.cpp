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

// filterdist command-line tool. A thin layer over the C API: every command
// loads or builds an architecture, calls one library operation and writes
// the result.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "filterdist/filterdist.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

struct StatusError {
  fd_status status;
  std::string message;
};

void check(fd_status status) {
  if (status != FD_OK) throw StatusError{status, fd_last_error()};
}

struct ArchDeleter {
  void operator()(fd_arch* a) const { fd_arch_free(a); }
};
using ArchPtr = std::unique_ptr<fd_arch, ArchDeleter>;

struct StringDeleter {
  void operator()(char* s) const { fd_string_free(s); }
};
using TextPtr = std::unique_ptr<char, StringDeleter>;

struct Source {
  std::string in;
  std::string model;
  std::string dataset;
};

ArchPtr load(const Source& src) {
  fd_arch* raw = nullptr;
  if (!src.in.empty()) {
    check(fd_arch_load(src.in.c_str(), &raw));
  } else {
    check(fd_zoo_build(src.model.c_str(), src.dataset.c_str(), &raw));
  }
  return ArchPtr(raw);
}

void emit(const char* text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw StatusError{FD_ERR_IO, "cannot write '" + path + "'"};
}

// Adds --in and --model/--dataset as mutually exclusive input sources.
void add_source(CLI::App* cmd, Source& src) {
  auto* in = cmd->add_option("--in", src.in, "Architecture file (JSON)");
  auto* model =
      cmd->add_option("--model", src.model, "Zoo family: vgg19, resnet50, inception, mobilenet");
  auto* dataset =
      cmd->add_option("--dataset", src.dataset, "Zoo dataset: cifar10, cifar100, tiny-imagenet");
  in->excludes(model)->excludes(dataset);
  model->needs(dataset);
  dataset->needs(model);
  cmd->callback([cmd, in, model] {
    if (in->count() == 0 && model->count() == 0) {
      throw CLI::RequiredError(cmd->get_name() + ": one of --in or --model/--dataset");
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redistribute per-layer filter counts with templates and compare analytical costs",
               "filterdist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fd_version()));

  Source zoo_src;
  std::string out_path;
  std::string template_token;
  std::string templates;
  std::string format = "text";
  std::int64_t batch = 128;

  auto* zoo = app.add_subcommand("zoo", "Write a built-in model as an architecture file");
  zoo->add_option("--model", zoo_src.model, "vgg19, resnet50, inception, mobilenet")->required();
  zoo->add_option("--dataset", zoo_src.dataset, "cifar10, cifar100, tiny-imagenet")->required();
  zoo->add_option("--out", out_path, "Output path")->required();

  Source apply_src;
  auto* apply = app.add_subcommand("apply", "Apply one template to an architecture file");
  apply->add_option("--in", apply_src.in, "Input architecture file")->required();
  apply->add_option("--template", template_token,
                    "base, uniform, reverse, quadratic, negative-quadratic")
      ->required();
  apply->add_option("--out", out_path, "Output path")->required();

  Source report_src;
  auto* report = app.add_subcommand("report", "Per-layer parameters, MACs and activations");
  report->add_option("--in", report_src.in, "Input architecture file")->required();
  report->add_option("--batch", batch, "Batch size")->check(CLI::PositiveNumber);
  report->add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  report->add_option("--out", out_path, "Output path (default stdout)");

  Source compare_src;
  auto* compare = app.add_subcommand("compare", "Compare templates on one architecture");
  add_source(compare, compare_src);
  compare->add_option("--templates", templates, "Comma-separated tokens or 'all'")->required();
  compare->add_option("--batch", batch, "Batch size")->check(CLI::PositiveNumber);
  compare->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  compare->add_option("--out", out_path, "Output path (default stdout)");

  Source dist_src;
  auto* distribution =
      app.add_subcommand("distribution", "Write per-layer filter counts for each template (CSV)");
  add_source(distribution, dist_src);
  distribution->add_option("--templates", templates, "Comma-separated tokens or 'all'")
      ->required();
  distribution->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (zoo->parsed()) {
      ArchPtr arch = load(zoo_src);
      check(fd_arch_save(arch.get(), out_path.c_str()));
    } else if (apply->parsed()) {
      ArchPtr arch = load(apply_src);
      fd_arch* raw = nullptr;
      check(fd_arch_apply_template(arch.get(), template_token.c_str(), &raw));
      ArchPtr result(raw);
      check(fd_arch_save(result.get(), out_path.c_str()));
    } else if (report->parsed()) {
      ArchPtr arch = load(report_src);
      char* raw = nullptr;
      check(fd_render_report(arch.get(), batch, format.c_str(), &raw));
      emit(TextPtr(raw).get(), out_path);
    } else if (compare->parsed()) {
      ArchPtr arch = load(compare_src);
      char* raw = nullptr;
      check(fd_render_comparison(arch.get(), templates.c_str(), batch, format.c_str(), &raw));
      emit(TextPtr(raw).get(), out_path);
    } else if (distribution->parsed()) {
      ArchPtr arch = load(dist_src);
      char* raw = nullptr;
      check(fd_render_distribution(arch.get(), templates.c_str(), &raw));
      emit(TextPtr(raw).get(), out_path);
    }
  } catch (const StatusError& e) {
    std::cerr << "filterdist: " << fd_status_name(e.status) << ": " << e.message << '\n';
    return e.status == FD_ERR_IO ? kExitIo : kExitUsage;
  }
  return 0;
}
