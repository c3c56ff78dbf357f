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

#include "filterdist/templates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "filterdist/error.hpp"

namespace filterdist {

namespace {

constexpr std::array<TemplateId, 5> kCanonicalOrder = {
    TemplateId::kBase, TemplateId::kReverse, TemplateId::kUniform, TemplateId::kQuadratic,
    TemplateId::kNegativeQuadratic};

// Closed forms of sum_{l=1..D} l^2 and sum_{l=1..D} l.
double sum_of_squares(double d) { return d * d * d / 3.0 + d * d / 2.0 + d / 6.0; }
double sum_of_indices(double d) { return d * d / 2.0 + d / 2.0; }

void require_solvable(Count depth, Count total, Count f_min, std::string_view name) {
  if (depth < 3) {
    throw SingularSystemError(std::string(name) + " template needs depth >= 3 (got " +
                              std::to_string(depth) + "); the 3x3 system is singular");
  }
  if (total < 1 || f_min < 1) {
    throw InvalidArgument(std::string(name) + " template needs F >= 1 and f_min >= 1");
  }
}

// Curvature below which a solved curve counts as flat: a * D^2 under 1e-9 of
// the mean count. Rounding noise in a singular-direction solve lands here.
double flat_curvature(Count depth, Count total) {
  const double d = static_cast<double>(depth);
  return 1e-9 * static_cast<double>(total) / (d * d * d);
}

}  // namespace

std::string_view to_token(TemplateId id) {
  switch (id) {
    case TemplateId::kBase: return "base";
    case TemplateId::kUniform: return "uniform";
    case TemplateId::kReverse: return "reverse";
    case TemplateId::kQuadratic: return "quadratic";
    case TemplateId::kNegativeQuadratic: return "negative-quadratic";
  }
  return "?";
}

TemplateId parse_template(std::string_view token) {
  for (TemplateId id : kCanonicalOrder) {
    if (token == to_token(id)) return id;
  }
  throw InvalidArgument("unknown template '" + std::string(token) +
                        "' (expected base, uniform, reverse, quadratic or negative-quadratic)");
}

std::span<const TemplateId> all_templates() { return kCanonicalOrder; }

std::vector<TemplateId> parse_template_list(std::string_view list) {
  if (list == "all") return {kCanonicalOrder.begin(), kCanonicalOrder.end()};
  std::vector<TemplateId> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    out.push_back(parse_template(list.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

double eval_polynomial(const QuadraticCoefficients& coeffs, double layer_index) {
  return (coeffs.a * layer_index + coeffs.b) * layer_index + coeffs.c;
}

double ConstraintResiduals::max() const { return std::max({total, second, third}); }

ConstraintResiduals quadratic_residuals(const QuadraticCoefficients& q, Count depth,
                                        Count total, Count f_min) {
  const double d = static_cast<double>(depth);
  const double f = static_cast<double>(total);
  const double m = static_cast<double>(f_min);
  ConstraintResiduals r;
  r.total = std::abs(sum_of_squares(d) * q.a + sum_of_indices(d) * q.b + d * q.c - f) / f;
  r.second = std::abs(eval_polynomial(q, d / 2.0) - m) / m;
  r.third = std::abs((d * d - 1.0) * q.a + (d - 1.0) * q.b) / f;
  return r;
}

ConstraintResiduals negative_quadratic_residuals(const QuadraticCoefficients& q, Count depth,
                                                 Count total, Count f_min) {
  const double d = static_cast<double>(depth);
  const double f = static_cast<double>(total);
  const double m = static_cast<double>(f_min);
  ConstraintResiduals r;
  r.total = std::abs(sum_of_squares(d) * q.a + sum_of_indices(d) * q.b + d * q.c - f) / f;
  r.second = std::abs(q.a + q.b + q.c - m) / m;
  r.third = std::abs(d * d * q.a + d * q.b + q.c - m) / m;
  return r;
}

std::array<double, 3> solve_3x3(std::array<std::array<double, 3>, 3> m,
                                std::array<double, 3> y) {
  double scale = 0.0;
  for (const auto& row : m) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  const double tiny = 1e-12 * scale;

  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (!(std::abs(m[pivot][col]) > tiny)) {
      throw SingularSystemError("singular 3x3 system (pivot " + std::to_string(m[pivot][col]) +
                                " in column " + std::to_string(col) + ")");
    }
    std::swap(m[col], m[pivot]);
    std::swap(y[col], y[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (int k = col; k < 3; ++k) m[r][k] -= factor * m[col][k];
      y[r] -= factor * y[col];
    }
  }

  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = y[r];
    for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * x[k];
    x[r] = acc / m[r][r];
  }
  return x;
}

std::vector<double> uniform_counts(Count total, Count depth) {
  if (depth < 1) throw InvalidArgument("uniform template needs depth >= 1");
  if (total < depth) {
    throw InfeasibleError("uniform template infeasible: F=" + std::to_string(total) +
                          " cannot give each of D=" + std::to_string(depth) +
                          " layers one filter");
  }
  return std::vector<double>(static_cast<std::size_t>(depth),
                             static_cast<double>(total) / static_cast<double>(depth));
}

std::vector<Count> reverse_counts(std::span<const Count> counts) {
  return {counts.rbegin(), counts.rend()};
}

QuadraticCoefficients solve_quadratic(Count depth, Count total, Count f_min) {
  require_solvable(depth, total, f_min, "quadratic");
  const double d = static_cast<double>(depth);
  const double h = d / 2.0;
  const auto x = solve_3x3({{{sum_of_squares(d), sum_of_indices(d), d},
                             {h * h, h, 1.0},
                             {d * d - 1.0, d - 1.0, 0.0}}},
                           {static_cast<double>(total), static_cast<double>(f_min), 0.0});
  const QuadraticCoefficients q{x[0], x[1], x[2]};
  if (!(q.a > flat_curvature(depth, total))) {
    throw InfeasibleError("quadratic template infeasible for this budget (a=" +
                          std::to_string(q.a) + " is not positive; F=" + std::to_string(total) +
                          ", D=" + std::to_string(depth) + ", f_min=" + std::to_string(f_min) +
                          ")");
  }
  return q;
}

QuadraticCoefficients solve_negative_quadratic(Count depth, Count total, Count f_min) {
  require_solvable(depth, total, f_min, "negative-quadratic");
  const double d = static_cast<double>(depth);
  const auto x = solve_3x3(
      {{{sum_of_squares(d), sum_of_indices(d), d}, {1.0, 1.0, 1.0}, {d * d, d, 1.0}}},
      {static_cast<double>(total), static_cast<double>(f_min), static_cast<double>(f_min)});
  const QuadraticCoefficients q{x[0], x[1], x[2]};
  if (!(q.a < -flat_curvature(depth, total))) {
    throw InfeasibleError("negative-quadratic template infeasible for this budget (a=" +
                          std::to_string(q.a) + " is not negative; F=" + std::to_string(total) +
                          ", D=" + std::to_string(depth) + ", f_min=" + std::to_string(f_min) +
                          ")");
  }
  return q;
}

std::vector<Count> round_preserving_sum(std::span<const double> reals, Count total) {
  const auto n = static_cast<Count>(reals.size());
  if (n == 0) throw InvalidArgument("cannot round an empty distribution");
  if (total < n) {
    throw InfeasibleError("total " + std::to_string(total) + " cannot give each of " +
                          std::to_string(n) + " layers at least one filter");
  }

  std::vector<Count> out(reals.size());
  std::vector<double> remainder(reals.size());
  Count sum = 0;
  for (std::size_t i = 0; i < reals.size(); ++i) {
    if (!std::isfinite(reals[i]) || reals[i] > 1e15) {
      throw InvalidArgument("filter count " + std::to_string(i + 1) + " is not a finite value");
    }
    const double clamped = std::max(reals[i], 1.0);
    const double floored = std::floor(clamped);
    out[i] = static_cast<Count>(floored);
    remainder[i] = clamped - floored;
    sum += out[i];
  }

  if (sum < total) {
    std::vector<std::size_t> order(reals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
      return remainder[lhs] > remainder[rhs];
    });
    const Count missing = total - sum;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Count share = missing / n + (static_cast<Count>(i) < missing % n ? 1 : 0);
      out[order[i]] += share;
    }
  } else if (sum > total) {
    // Largest value first; on equal values the later layer gives one up.
    auto smaller = [&](std::size_t lhs, std::size_t rhs) {
      return out[lhs] != out[rhs] ? out[lhs] < out[rhs] : lhs > rhs;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(smaller)> heap(smaller);
    for (std::size_t i = 0; i < out.size(); ++i) heap.push(i);
    for (Count excess = sum - total; excess > 0; --excess) {
      const std::size_t top = heap.top();
      heap.pop();
      --out[top];
      heap.push(top);
    }
  }
  return out;
}

std::vector<Count> template_counts(const FilterPlan& plan, TemplateId id) {
  const auto& counts = plan.counts();
  const Count depth = plan.depth();
  const Count total = plan.total();
  switch (id) {
    case TemplateId::kBase:
      return counts;
    case TemplateId::kReverse:
      return reverse_counts(counts);
    case TemplateId::kUniform:
      return round_preserving_sum(uniform_counts(total, depth), total);
    case TemplateId::kQuadratic:
    case TemplateId::kNegativeQuadratic: {
      const Count f_min = *std::min_element(counts.begin(), counts.end());
      const QuadraticCoefficients q = id == TemplateId::kQuadratic
                                          ? solve_quadratic(depth, total, f_min)
                                          : solve_negative_quadratic(depth, total, f_min);
      std::vector<double> curve(static_cast<std::size_t>(depth));
      for (Count l = 1; l <= depth; ++l) {
        curve[static_cast<std::size_t>(l - 1)] = eval_polynomial(q, static_cast<double>(l));
      }
      return round_preserving_sum(curve, total);
    }
  }
  throw InvalidArgument("unknown template");
}

ArchitectureSpec apply_template(const ArchitectureSpec& arch, TemplateId id) {
  if (id == TemplateId::kBase) return arch;
  const FilterPlan plan = extract_filter_plan(arch);
  const std::vector<Count> counts = template_counts(plan, id);
  return apply_filter_plan(arch, counts);
}

}  // namespace filterdist
