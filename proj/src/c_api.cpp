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

#include "filterdist/filterdist.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "filterdist/architecture.hpp"
#include "filterdist/cost_model.hpp"
#include "filterdist/error.hpp"
#include "filterdist/render.hpp"
#include "filterdist/templates.hpp"
#include "filterdist/zoo.hpp"

struct fd_arch {
  filterdist::ArchitectureSpec spec;
};

namespace {

namespace fd = filterdist;

thread_local std::string g_last_error;

fd_status fail(fd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

fd_status to_status(fd::ErrorCode code) {
  switch (code) {
    case fd::ErrorCode::kParse: return FD_ERR_PARSE;
    case fd::ErrorCode::kValidation: return FD_ERR_VALIDATION;
    case fd::ErrorCode::kInfeasible: return FD_ERR_INFEASIBLE;
    case fd::ErrorCode::kSingular: return FD_ERR_SINGULAR;
    case fd::ErrorCode::kInvalidArgument: return FD_ERR_INVALID_ARGUMENT;
    case fd::ErrorCode::kIo: return FD_ERR_IO;
  }
  return FD_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
fd_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return FD_OK;
  } catch (const fd::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FD_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw fd::InvalidArgument(std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

fd_arch* wrap(fd::ArchitectureSpec spec) { return new fd_arch{std::move(spec)}; }

}  // namespace

extern "C" {

const char* fd_version(void) { return "0.1.0"; }

const char* fd_last_error(void) { return g_last_error.c_str(); }

const char* fd_status_name(fd_status status) {
  switch (status) {
    case FD_OK: return "ok";
    case FD_ERR_PARSE: return "parse error";
    case FD_ERR_VALIDATION: return "validation error";
    case FD_ERR_INFEASIBLE: return "infeasible";
    case FD_ERR_SINGULAR: return "singular system";
    case FD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FD_ERR_IO: return "i/o error";
    case FD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void fd_arch_free(fd_arch* arch) { delete arch; }

void fd_string_free(char* text) { std::free(text); }

fd_status fd_arch_parse(const char* text, size_t length, fd_arch** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(fd::parse_architecture(std::string_view(text, length)));
  });
}

fd_status fd_arch_load(const char* path, fd_arch** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fd::Error(fd::ErrorCode::kIo, std::string("cannot open '") + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw fd::Error(fd::ErrorCode::kIo, std::string("cannot read '") + path + "'");
    *out = wrap(fd::parse_architecture(buffer.str()));
  });
}

fd_status fd_arch_serialize(const fd_arch* arch, char** out_text) {
  return guarded([&] {
    require(arch, "arch");
    require(out_text, "out_text");
    *out_text = copy_string(fd::serialize_architecture(arch->spec));
  });
}

fd_status fd_arch_save(const fd_arch* arch, const char* path) {
  return guarded([&] {
    require(arch, "arch");
    require(path, "path");
    const std::string text = fd::serialize_architecture(arch->spec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw fd::Error(fd::ErrorCode::kIo, std::string("cannot write '") + path + "'");
    out << text;
    out.flush();
    if (!out) throw fd::Error(fd::ErrorCode::kIo, std::string("cannot write '") + path + "'");
  });
}

fd_status fd_arch_equal(const fd_arch* lhs, const fd_arch* rhs, int* out_equal) {
  return guarded([&] {
    require(lhs, "lhs");
    require(rhs, "rhs");
    require(out_equal, "out_equal");
    *out_equal = lhs->spec == rhs->spec ? 1 : 0;
  });
}

fd_status fd_zoo_build(const char* family, const char* dataset, fd_arch** out) {
  return guarded([&] {
    require(family, "family");
    require(dataset, "dataset");
    require(out, "out");
    *out = wrap(fd::build_model({fd::parse_family(family), fd::parse_dataset(dataset)}));
  });
}

fd_status fd_arch_filter_plan(const fd_arch* arch, int64_t* counts, size_t capacity,
                              size_t* out_depth, int64_t* out_total) {
  return guarded([&] {
    require(arch, "arch");
    const fd::FilterPlan plan = fd::extract_filter_plan(arch->spec);
    const auto depth = static_cast<size_t>(plan.depth());
    if (counts != nullptr) {
      if (capacity < depth) {
        throw fd::InvalidArgument("counts buffer holds " + std::to_string(capacity) +
                                  " entries, plan depth is " + std::to_string(depth));
      }
      std::copy(plan.counts().begin(), plan.counts().end(), counts);
    }
    if (out_depth != nullptr) *out_depth = depth;
    if (out_total != nullptr) *out_total = plan.total();
  });
}

fd_status fd_arch_apply_counts(const fd_arch* arch, const int64_t* counts, size_t depth,
                               fd_arch** out) {
  return guarded([&] {
    require(arch, "arch");
    require(counts, "counts");
    require(out, "out");
    const std::vector<fd::Count> values(counts, counts + depth);
    *out = wrap(fd::apply_filter_plan(arch->spec, values));
  });
}

fd_status fd_arch_apply_template(const fd_arch* arch, const char* token, fd_arch** out) {
  return guarded([&] {
    require(arch, "arch");
    require(token, "token");
    require(out, "out");
    *out = wrap(fd::apply_template(arch->spec, fd::parse_template(token)));
  });
}

fd_status fd_solve_quadratic(int64_t depth, int64_t total, int64_t f_min, fd_coefficients* out) {
  return guarded([&] {
    require(out, "out");
    const auto q = fd::solve_quadratic(depth, total, f_min);
    *out = {q.a, q.b, q.c};
  });
}

fd_status fd_solve_negative_quadratic(int64_t depth, int64_t total, int64_t f_min,
                                      fd_coefficients* out) {
  return guarded([&] {
    require(out, "out");
    const auto q = fd::solve_negative_quadratic(depth, total, f_min);
    *out = {q.a, q.b, q.c};
  });
}

fd_status fd_round_preserving_sum(const double* reals, size_t length, int64_t total,
                                  int64_t* out_counts) {
  return guarded([&] {
    require(reals, "reals");
    require(out_counts, "out_counts");
    const auto counts = fd::round_preserving_sum(std::span<const double>(reals, length), total);
    std::copy(counts.begin(), counts.end(), out_counts);
  });
}

fd_status fd_arch_cost(const fd_arch* arch, int64_t batch, fd_cost_totals* out) {
  return guarded([&] {
    require(arch, "arch");
    require(out, "out");
    const fd::CostReport r = fd::cost_report(arch->spec, batch);
    *out = {r.total_params,     r.total_macs,  r.activation_elements_total,
            r.activation_elements_peak, r.param_bytes, r.activation_bytes_per_sample};
  });
}

fd_status fd_render_report(const fd_arch* arch, int64_t batch, const char* format,
                           char** out_text) {
  return guarded([&] {
    require(arch, "arch");
    require(format, "format");
    require(out_text, "out_text");
    const auto fmt = fd::parse_format(format);
    *out_text = copy_string(fd::render_report(fd::cost_report(arch->spec, batch), fmt));
  });
}

fd_status fd_render_comparison(const fd_arch* arch, const char* templates, int64_t batch,
                               const char* format, char** out_text) {
  return guarded([&] {
    require(arch, "arch");
    require(templates, "templates");
    require(format, "format");
    require(out_text, "out_text");
    const auto fmt = fd::parse_format(format);
    const auto ids = fd::parse_template_list(templates);
    const auto rows = fd::compare_templates(arch->spec, ids, batch);
    *out_text = copy_string(fd::render_comparison(rows, fmt));
  });
}

fd_status fd_render_distribution(const fd_arch* arch, const char* templates, char** out_text) {
  return guarded([&] {
    require(arch, "arch");
    require(templates, "templates");
    require(out_text, "out_text");
    const auto ids = fd::parse_template_list(templates);
    *out_text = copy_string(fd::render_distribution(arch->spec, ids));
  });
}

}  // extern "C"
