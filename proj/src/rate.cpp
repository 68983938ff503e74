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
#include "rdmdl/rate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rdmdl/dataset.hpp"

namespace rdmdl {

namespace {

constexpr double kDistortionFloor = 1e-12;
constexpr double kDistortionCeil = 0.25;

double quantile_linear(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

double rule_width(const std::vector<double>& sorted, DistortionRule rule) {
  const double n = static_cast<double>(sorted.size());
  const double inv_cbrt_n = 1.0 / std::cbrt(n);
  switch (rule) {
    case DistortionRule::FreedmanDiaconis: {
      const double iqr = quantile_linear(sorted, 0.75) - quantile_linear(sorted, 0.25);
      return 2.0 * iqr * inv_cbrt_n;
    }
    case DistortionRule::Sturges:
      return (sorted.back() - sorted.front()) / (1.0 + std::log2(n));
    case DistortionRule::Scott: {
      double mean = 0.0;
      for (const double s : sorted) mean += s;
      mean /= n;
      double ss = 0.0;
      for (const double s : sorted) ss += (s - mean) * (s - mean);
      const double stddev = sorted.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      return 3.5 * stddev * inv_cbrt_n;
    }
    case DistortionRule::Rice:
      return 0.5 * (sorted.back() - sorted.front()) * inv_cbrt_n;
  }
  return 0.0;
}

}  // namespace

DistortionRule distortion_rule_from_name(std::string_view name) {
  if (name == "fd") return DistortionRule::FreedmanDiaconis;
  if (name == "sturges") return DistortionRule::Sturges;
  if (name == "scott") return DistortionRule::Scott;
  if (name == "rice") return DistortionRule::Rice;
  throw std::invalid_argument("unknown distortion rule '" + std::string(name) +
                              "'; expected fd, sturges, scott or rice");
}

std::string_view distortion_rule_name(DistortionRule rule) {
  switch (rule) {
    case DistortionRule::FreedmanDiaconis: return "fd";
    case DistortionRule::Sturges: return "sturges";
    case DistortionRule::Scott: return "scott";
    case DistortionRule::Rice: return "rice";
  }
  return "?";
}

double entropy_at_scale(std::span<const double> samples, double epsilon) {
  if (samples.empty()) {
    throw std::invalid_argument("entropy_at_scale: empty sample vector");
  }
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("entropy_at_scale: epsilon must be in (0, 1]");
  }
  const auto bins = static_cast<std::size_t>(std::lround(1.0 / epsilon));
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi || bins <= 1) return 0.0;

  std::vector<std::size_t> counts(bins, 0);
  const double scale = static_cast<double>(bins) / (hi - lo);
  for (const double s : samples) {
    auto idx = static_cast<std::size_t>((s - lo) * scale);
    if (idx >= bins) idx = bins - 1;  // top edge inclusive
    ++counts[idx];
  }
  const double n = static_cast<double>(samples.size());
  double entropy = 0.0;
  for (const std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    entropy -= p * std::log(p);
  }
  return std::max(entropy, 0.0);
}

EpsilonGrid make_epsilon_grid(std::size_t n, const GridPolicy& policy) {
  if (policy.min_bins < 2 || policy.max_bins < policy.min_bins ||
      policy.scale_targets < 4) {
    throw std::invalid_argument("make_epsilon_grid: bad grid policy");
  }
  if (n < kMinSamples) {
    throw std::invalid_argument("sample too small for dimension fit (n=" +
                                std::to_string(n) + ")");
  }
  const auto lo = static_cast<std::size_t>(policy.min_bins);
  const std::size_t cap = std::min<std::size_t>(
      static_cast<std::size_t>(policy.max_bins), std::max<std::size_t>(n / 2, 2 * lo));

  std::vector<int> counts;
  const double ratio = static_cast<double>(cap) / static_cast<double>(lo);
  for (int k = 0; k < policy.scale_targets; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(policy.scale_targets - 1);
    const long b = std::lround(static_cast<double>(lo) * std::pow(ratio, t));
    counts.push_back(static_cast<int>(b));
  }
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  if (counts.size() < 4) {
    throw std::invalid_argument("sample too small for dimension fit (only " +
                                std::to_string(counts.size()) + " distinct scales)");
  }
  EpsilonGrid grid;
  grid.bin_counts = std::move(counts);
  grid.scales.reserve(grid.bin_counts.size());
  for (const int b : grid.bin_counts) grid.scales.push_back(1.0 / static_cast<double>(b));
  return grid;
}

EpsilonGrid default_epsilon_grid(std::size_t n) {
  return make_epsilon_grid(n, GridPolicy{});
}

DimensionEstimate information_dimension(std::span<const double> samples,
                                        const EpsilonGrid& grid) {
  if (grid.size() < 4) {
    throw std::invalid_argument("information_dimension: grid needs >= 4 scales");
  }
  DimensionEstimate est;
  est.fit_points.reserve(grid.size());
  for (const double eps : grid.scales) {
    est.fit_points.emplace_back(std::log(eps), entropy_at_scale(samples, eps));
  }

  const double m = static_cast<double>(est.fit_points.size());
  double mean_u = 0.0, mean_h = 0.0;
  for (const auto& [u, h] : est.fit_points) {
    mean_u += u;
    mean_h += h;
  }
  mean_u /= m;
  mean_h /= m;
  double suh = 0.0, suu = 0.0;
  for (const auto& [u, h] : est.fit_points) {
    suh += (u - mean_u) * (h - mean_h);
    suu += (u - mean_u) * (u - mean_u);
  }
  const double slope = suh / suu;  // suu > 0 by the grid invariant
  est.dim = std::max(0.0, -slope);
  est.intercept = mean_h - slope * mean_u;
  return est;
}

double bin_width(std::span<const double> samples, DistortionRule rule) {
  if (samples.empty()) {
    throw std::invalid_argument("bin_width: empty sample vector");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  const DistortionRule chain[] = {rule, DistortionRule::FreedmanDiaconis,
                                  DistortionRule::Scott, DistortionRule::Rice};
  for (const DistortionRule r : chain) {
    const double delta = rule_width(sorted, r);
    if (delta > 0.0 && std::isfinite(delta)) return delta;
  }
  return 1.0 / static_cast<double>(samples.size());
}

double distortion_from_width(double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("distortion_from_width: delta must be > 0");
  }
  return std::clamp(delta * delta / 12.0, kDistortionFloor, kDistortionCeil);
}

double cause_length_from(double dim, double distortion, std::size_t n) {
  return static_cast<double>(n) * (dim / 2.0) * std::log2(1.0 / distortion);
}

double cause_length(std::span<const double> samples, DistortionRule rule,
                    const EpsilonGrid& grid) {
  const DimensionEstimate est = information_dimension(samples, grid);
  const double distortion = distortion_from_width(bin_width(samples, rule));
  return cause_length_from(est.dim, distortion, samples.size());
}

}  // namespace rdmdl
