/*
 * Copyright 2026 RDMDL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rdmdl {

/// Candidate regression families, all linear in their parameters:
/// polynomials of degree 0..5, a/x + b, a/x^2 + b, a*e^x + b, a*ln(x) + b.
enum class ModelFamily {
  Poly0,
  Poly1,
  Poly2,
  Poly3,
  Poly4,
  Poly5,
  Recip1,
  Recip2,
  Exp,
  Log,
};

inline constexpr std::array<ModelFamily, 10> kAllFamilies = {
    ModelFamily::Poly0,  ModelFamily::Poly1,  ModelFamily::Poly2,
    ModelFamily::Poly3,  ModelFamily::Poly4,  ModelFamily::Poly5,
    ModelFamily::Recip1, ModelFamily::Recip2, ModelFamily::Exp,
    ModelFamily::Log,
};

int family_param_count(ModelFamily family);
std::string_view family_name(ModelFamily family);

/// Residual variances below this are clamped; exact fits would otherwise
/// make the Gaussian code length undefined.
inline constexpr double kSigma2Floor = 1e-12;

struct FittedModel {
  ModelFamily family = ModelFamily::Poly0;
  std::vector<double> params;  // intercept first, then coefficients ascending
  double sigma2 = 0.0;         // residual variance sum(r^2)/N, floored
  double total_bits = 0.0;     // residual code + parameter code
};

/// Gaussian residual code in bits: (n/2) log2(2 pi sigma2) + n/(2 ln 2).
/// May be negative for tiny variances; only differences between the two
/// directions matter.
double residual_code_length(double sigma2, std::size_t n);

/// Parameter code in bits: (k/2) log2(n).
double model_code_length(int k, std::size_t n);

/// Ordinary least squares on the family's feature matrix via a rank-
/// revealing orthogonal factorization; rank-deficient systems are solved in
/// the minimum-norm sense. Returns nullopt when a feature is undefined or
/// non-finite on this data (reciprocals at x == 0, log at x <= 0).
std::optional<FittedModel> fit_family(std::span<const double> x,
                                      std::span<const double> y,
                                      ModelFamily family,
                                      double sigma2_floor = kSigma2Floor);

struct ConditionalFit {
  double bits = 0.0;
  FittedModel model;
};

/// Minimum of residual + parameter code length over every applicable family.
/// Poly0 always applies, so a result always exists. Ties go to the smaller
/// parameter count, then to enumeration order.
ConditionalFit conditional_length(std::span<const double> x,
                                  std::span<const double> y,
                                  double sigma2_floor = kSigma2Floor);

}  // namespace rdmdl
