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

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdmdl/dataset.hpp"
#include "rdmdl/scorer.hpp"

namespace rdmdl {

struct ScoredPair {
  std::string id;
  double weight = 1.0;
  Direction truth = Direction::XtoY;
  DirectionScore score;
};

/// Weighted 2x2x2 dominance split: correctness of the cause-difference
/// predictor x correctness of the mechanism-difference predictor x which
/// difference had the larger magnitude. Entries are percentages of total
/// weight and sum to 100 across the table. A predictor whose delta is
/// exactly zero abstains and counts as not correct.
struct DominanceTable {
  double cells[2][2][2] = {};

  double& at(bool cause_correct, bool mech_correct, Component dominant);
  double at(bool cause_correct, bool mech_correct, Component dominant) const;

  /// Decision-outcome split {decided correctly, decided incorrectly} of one
  /// cause-predictor row, where the decision is the dominant component's.
  std::pair<double, double> row_marginal(bool cause_correct) const;
  std::pair<double, double> col_marginal(bool mech_correct) const;
};

struct CurvePoint {
  double decision_rate = 0.0;
  double cumulative_accuracy = 0.0;
};

struct MetricReport {
  double accuracy = 0.0;
  std::optional<double> auroc;  // undefined on single-class inputs
  double audrc = 0.0;
  std::vector<CurvePoint> curve;
  DominanceTable dominance;
};

/// Sum of weight * credit over total weight, credit being 1 for a correct
/// prediction, 0.5 for Abstain, 0 otherwise. Throws std::invalid_argument on
/// empty input or zero total weight.
double weighted_accuracy(std::span<const ScoredPair> scored);

/// Weighted pairwise statistic with truth XtoY as the positive class:
/// sum over (pos i, neg j) of w_i w_j ([s_i > s_j] + 0.5 [s_i == s_j])
/// divided by W_pos * W_neg. nullopt when either class is absent.
std::optional<double> weighted_auroc(std::span<const ScoredPair> scored);

/// Same statistic ranking by an arbitrary per-pair value (e.g. the
/// cause-difference alone).
std::optional<double> weighted_auroc_of(
    std::span<const ScoredPair> scored,
    const std::function<double(const DirectionScore&)>& stat);

struct AudrcResult {
  double area = 0.0;
  std::vector<CurvePoint> curve;
};

/// Pairs sorted by |s| descending (ties by id ascending); at each step the
/// decision rate is cumulative weight over total weight and the cumulative
/// weighted accuracy uses the same 1/0.5/0 credit as weighted_accuracy.
/// The area is the step integral sum (r_k - r_{k-1}) * a_k.
AudrcResult audrc(std::span<const ScoredPair> scored);

DominanceTable dominance_confusion(std::span<const ScoredPair> scored);

/// Fraction of distinct values in `samples`.
double uniqueness_fraction(std::span<const double> samples);

/// Keeps pairs whose x and y both have unique(v)/N >= threshold,
/// threshold in (0, 1].
BenchmarkSet subset_by_uniqueness(const BenchmarkSet& bench, double threshold);

MetricReport evaluate(std::span<const ScoredPair> scored);

nlohmann::ordered_json metric_report_json(const MetricReport& report);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve);

/// Formats with 9 significant digits and '.' decimal separator.
std::string format_sig9(double value);

}  // namespace rdmdl
