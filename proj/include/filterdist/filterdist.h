/* Copyright 2026 The filterdist Authors. All Rights Reserved.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

/* C interface to the filterdist library.
 *
 * Architectures are opaque handles owned by the caller and released with
 * fd_arch_free. Strings returned through `char**` out-parameters are
 * heap-allocated and released with fd_string_free. Every function returns an
 * fd_status; on failure a description is available from fd_last_error(),
 * which is thread-local and valid until the next call on the same thread.
 */

#ifndef FILTERDIST_FILTERDIST_H_
#define FILTERDIST_FILTERDIST_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FD_BUILDING_LIBRARY)
#define FD_API __attribute__((visibility("default")))
#else
#define FD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fd_status {
  FD_OK = 0,
  FD_ERR_PARSE = 1,
  FD_ERR_VALIDATION = 2,
  FD_ERR_INFEASIBLE = 3,
  FD_ERR_SINGULAR = 4,
  FD_ERR_INVALID_ARGUMENT = 5,
  FD_ERR_IO = 6,
  FD_ERR_INTERNAL = 99
} fd_status;

typedef struct fd_arch fd_arch;

typedef struct fd_cost_totals {
  int64_t params;
  int64_t macs;
  int64_t activation_elements_total;
  int64_t activation_elements_peak;
  int64_t param_bytes;
  int64_t activation_bytes_per_sample;
} fd_cost_totals;

typedef struct fd_coefficients {
  double a;
  double b;
  double c;
} fd_coefficients;

FD_API const char* fd_version(void);
FD_API const char* fd_last_error(void);
FD_API const char* fd_status_name(fd_status status);

FD_API void fd_arch_free(fd_arch* arch);
FD_API void fd_string_free(char* text);

/* Architecture files (JSON). */
FD_API fd_status fd_arch_parse(const char* text, size_t length, fd_arch** out);
FD_API fd_status fd_arch_load(const char* path, fd_arch** out);
FD_API fd_status fd_arch_serialize(const fd_arch* arch, char** out_text);
FD_API fd_status fd_arch_save(const fd_arch* arch, const char* path);
FD_API fd_status fd_arch_equal(const fd_arch* lhs, const fd_arch* rhs, int* out_equal);

/* Zoo: family is vgg19|resnet50|inception|mobilenet, dataset is
 * cifar10|cifar100|tiny-imagenet. */
FD_API fd_status fd_zoo_build(const char* family, const char* dataset, fd_arch** out);

/* Filter plan. `counts` may be NULL to query the depth only; otherwise it must
 * hold `capacity` entries and at least the plan's depth. */
FD_API fd_status fd_arch_filter_plan(const fd_arch* arch, int64_t* counts, size_t capacity,
                                     size_t* out_depth, int64_t* out_total);
FD_API fd_status fd_arch_apply_counts(const fd_arch* arch, const int64_t* counts, size_t depth,
                                      fd_arch** out);

/* Templates: base|uniform|reverse|quadratic|negative-quadratic. */
FD_API fd_status fd_arch_apply_template(const fd_arch* arch, const char* token, fd_arch** out);
FD_API fd_status fd_solve_quadratic(int64_t depth, int64_t total, int64_t f_min,
                                    fd_coefficients* out);
FD_API fd_status fd_solve_negative_quadratic(int64_t depth, int64_t total, int64_t f_min,
                                             fd_coefficients* out);
FD_API fd_status fd_round_preserving_sum(const double* reals, size_t length, int64_t total,
                                         int64_t* out_counts);

/* Cost model. */
FD_API fd_status fd_arch_cost(const fd_arch* arch, int64_t batch, fd_cost_totals* out);

/* Renderings. `format` is text|csv|json for reports and text|csv for
 * comparisons; `templates` is "all" or a comma-separated token list. */
FD_API fd_status fd_render_report(const fd_arch* arch, int64_t batch, const char* format,
                                  char** out_text);
FD_API fd_status fd_render_comparison(const fd_arch* arch, const char* templates, int64_t batch,
                                      const char* format, char** out_text);
FD_API fd_status fd_render_distribution(const fd_arch* arch, const char* templates,
                                        char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* FILTERDIST_FILTERDIST_H_ */
