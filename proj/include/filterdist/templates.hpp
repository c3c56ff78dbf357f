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

// Filter distribution templates. Each template maps a filter plan (the
// per-unit counts f_1..f_D with total F) to a new set of counts with the same
// total: base (identity), uniform, reverse, quadratic (U-shaped, minimum in
// the middle) and negative quadratic (arch-shaped, f_min at both ends).

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "filterdist/architecture.hpp"

namespace filterdist {

enum class TemplateId { kBase, kUniform, kReverse, kQuadratic, kNegativeQuadratic };

// Lowercase tokens: base, uniform, reverse, quadratic, negative-quadratic.
std::string_view to_token(TemplateId id);
TemplateId parse_template(std::string_view token);

// Canonical order used by "all": base, reverse, uniform, quadratic,
// negative-quadratic.
std::span<const TemplateId> all_templates();

// "all" or a comma-separated list of tokens.
std::vector<TemplateId> parse_template_list(std::string_view list);

// f(l) = a l^2 + b l + c over layer index l in [1, D].
struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

double eval_polynomial(const QuadraticCoefficients& coeffs, double layer_index);

// Relative residuals of the three defining equations of a quadratic template.
struct ConstraintResiduals {
  double total = 0.0;   // |sum_l f(l) - F| / F
  double second = 0.0;  // quadratic: vertex value; negative: f(1)
  double third = 0.0;   // quadratic: f(1) == f(D); negative: f(D)
  double max() const;
};

ConstraintResiduals quadratic_residuals(const QuadraticCoefficients& coeffs, Count depth,
                                        Count total, Count f_min);
ConstraintResiduals negative_quadratic_residuals(const QuadraticCoefficients& coeffs,
                                                 Count depth, Count total, Count f_min);

// Dense 3x3 solve by Gaussian elimination with partial pivoting. Throws
// SingularSystemError when a pivot falls below 1e-12 of the largest entry.
std::array<double, 3> solve_3x3(std::array<std::array<double, 3>, 3> matrix,
                                std::array<double, 3> rhs);

std::vector<double> uniform_counts(Count total, Count depth);
std::vector<Count> reverse_counts(std::span<const Count> counts);

// U-shaped curve: total F, value f_min at l = D/2, equal endpoints. Needs a > 0.
QuadraticCoefficients solve_quadratic(Count depth, Count total, Count f_min);

// Arch-shaped curve: total F, value f_min at l = 1 and l = D. Needs a < 0.
QuadraticCoefficients solve_negative_quadratic(Count depth, Count total, Count f_min);

// Largest-remainder apportionment onto integers >= 1 summing to `total`.
// Values are clamped to 1 and floored; leftover units go to the largest
// fractional parts (earlier layer wins a tie), and any excess created by
// clamping is taken back from the largest entries (later layer on a tie).
std::vector<Count> round_preserving_sum(std::span<const double> reals, Count total);

// Integer counts the template assigns to `plan`, summing to plan.total().
std::vector<Count> template_counts(const FilterPlan& plan, TemplateId id);

ArchitectureSpec apply_template(const ArchitectureSpec& arch, TemplateId id);

}  // namespace filterdist
