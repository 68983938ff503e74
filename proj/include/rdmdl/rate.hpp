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

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace rdmdl {

/// Histogram bandwidth selectors repurposed to pick the distortion level.
enum class DistortionRule { FreedmanDiaconis, Sturges, Scott, Rice };

/// Accepts "fd", "sturges", "scott", "rice".
DistortionRule distortion_rule_from_name(std::string_view name);
std::string_view distortion_rule_name(DistortionRule rule);

struct GridPolicy {
  int min_bins = 4;
  int max_bins = 256;
  int scale_targets = 12;
};

/// Ladder of quantization scales: eps strictly decreasing in (0,1),
/// bin_counts[i] == round(1/scales[i]) strictly increasing, at least four
/// entries, every count >= 2.
struct EpsilonGrid {
  std::vector<double> scales;
  std::vector<int> bin_counts;

  std::size_t size() const { return scales.size(); }
};

struct DimensionEstimate {
  double dim = 0.0;        // clamped at 0
  double intercept = 0.0;  // intercept of the slope fit
  std::vector<std::pair<double, double>> fit_points;  // (ln eps, entropy in nats)
};

/// Entropy in nats of `samples` quantized into round(1/epsilon) equal-width
/// bins spanning [min, max], with the top bin edge inclusive so the maximum
/// is counted. Constant input gives 0.
double entropy_at_scale(std::span<const double> samples, double epsilon);

/// Bin counts geometrically spaced over [min_bins, min(max(n/2, 2*min_bins),
/// max_bins)], `scale_targets` targets, deduplicated after rounding.
/// Throws std::invalid_argument ("sample too small for dimension fit") when
/// n < kMinSamples or fewer than four distinct counts result.
EpsilonGrid make_epsilon_grid(std::size_t n, const GridPolicy& policy);
EpsilonGrid default_epsilon_grid(std::size_t n);

/// Least-squares fit of entropy against ln(eps) across the grid, intercept
/// included; dim is the negated slope clamped at 0.
DimensionEstimate information_dimension(std::span<const double> samples,
                                        const EpsilonGrid& grid);

/// Bin width under `rule`:
///   FreedmanDiaconis  2 * IQR * N^(-1/3)
///   Sturges           range / (1 + log2 N)
///   Scott             3.5 * stddev * N^(-1/3)
///   Rice              0.5 * range * N^(-1/3)
/// Quantiles use linear interpolation. A rule that degenerates to a
/// non-positive width falls back FD -> Scott -> Rice -> 1/N, so the result
/// is always positive.
double bin_width(std::span<const double> samples, DistortionRule rule);

/// High-resolution quantization error delta^2 / 12, clamped to
/// [1e-12, 0.25].
double distortion_from_width(double delta);

/// Rate-distortion code length in bits: n * (dim/2) * log2(1/distortion).
double cause_length_from(double dim, double distortion, std::size_t n);

/// Full cause-side chain: information dimension over `grid`, distortion from
/// `rule` on the same samples, then cause_length_from.
double cause_length(std::span<const double> samples, DistortionRule rule,
                    const EpsilonGrid& grid);

}  // namespace rdmdl
