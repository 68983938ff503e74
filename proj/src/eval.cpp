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
#include "rdmdl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rdmdl {

namespace {

double credit(const ScoredPair& sp) {
  if (sp.score.predicted == Prediction::Abstain) return 0.5;
  const bool correct = (sp.score.predicted == Prediction::XtoY &&
                        sp.truth == Direction::XtoY) ||
                       (sp.score.predicted == Prediction::YtoX &&
                        sp.truth == Direction::YtoX);
  return correct ? 1.0 : 0.0;
}

double total_weight_or_throw(std::span<const ScoredPair> scored, const char* who) {
  if (scored.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty input");
  }
  double total = 0.0;
  for (const auto& sp : scored) total += sp.weight;
  if (!(total > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": total weight must be > 0");
  }
  return total;
}

// Strict-sign predictor in the component-difference orientation: a negative
// delta prefers XtoY. Zero abstains (returned as nullopt).
std::optional<Direction> delta_prediction(double delta) {
  if (delta < 0.0) return Direction::XtoY;
  if (delta > 0.0) return Direction::YtoX;
  return std::nullopt;
}

}  // namespace

double& DominanceTable::at(bool cause_correct, bool mech_correct, Component dominant) {
  return cells[cause_correct ? 0 : 1][mech_correct ? 0 : 1]
              [dominant == Component::Cause ? 0 : 1];
}

double DominanceTable::at(bool cause_correct, bool mech_correct,
                          Component dominant) const {
  return cells[cause_correct ? 0 : 1][mech_correct ? 0 : 1]
              [dominant == Component::Cause ? 0 : 1];
}

std::pair<double, double> DominanceTable::row_marginal(bool cause_correct) const {
  double good = 0.0, bad = 0.0;
  for (const bool mech_correct : {true, false}) {
    for (const Component dom : {Component::Cause, Component::Mechanism}) {
      const bool decision_correct = dom == Component::Cause ? cause_correct : mech_correct;
      (decision_correct ? good : bad) += at(cause_correct, mech_correct, dom);
    }
  }
  return {good, bad};
}

std::pair<double, double> DominanceTable::col_marginal(bool mech_correct) const {
  double good = 0.0, bad = 0.0;
  for (const bool cause_correct : {true, false}) {
    for (const Component dom : {Component::Cause, Component::Mechanism}) {
      const bool decision_correct = dom == Component::Cause ? cause_correct : mech_correct;
      (decision_correct ? good : bad) += at(cause_correct, mech_correct, dom);
    }
  }
  return {good, bad};
}

double weighted_accuracy(std::span<const ScoredPair> scored) {
  const double total = total_weight_or_throw(scored, "weighted_accuracy");
  double acc = 0.0;
  for (const auto& sp : scored) acc += sp.weight * credit(sp);
  return acc / total;
}

std::optional<double> weighted_auroc_of(
    std::span<const ScoredPair> scored,
    const std::function<double(const DirectionScore&)>& stat) {
  double w_pos = 0.0, w_neg = 0.0;
  for (const auto& sp : scored) {
    (sp.truth == Direction::XtoY ? w_pos : w_neg) += sp.weight;
  }
  if (!(w_pos > 0.0) || !(w_neg > 0.0)) return std::nullopt;

  // Exact pairwise Mann-Whitney; benchmark sizes keep O(n^2) cheap.
  double num = 0.0;
  for (const auto& pos : scored) {
    if (pos.truth != Direction::XtoY || pos.weight == 0.0) continue;
    const double sp = stat(pos.score);
    for (const auto& neg : scored) {
      if (neg.truth != Direction::YtoX || neg.weight == 0.0) continue;
      const double sn = stat(neg.score);
      if (sp > sn) {
        num += pos.weight * neg.weight;
      } else if (sp == sn) {
        num += 0.5 * pos.weight * neg.weight;
      }
    }
  }
  return num / (w_pos * w_neg);
}

std::optional<double> weighted_auroc(std::span<const ScoredPair> scored) {
  return weighted_auroc_of(scored, [](const DirectionScore& ds) { return ds.s; });
}

AudrcResult audrc(std::span<const ScoredPair> scored) {
  const double total = total_weight_or_throw(scored, "audrc");

  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ca = std::abs(scored[a].score.s);
    const double cb = std::abs(scored[b].score.s);
    if (ca != cb) return ca > cb;
    return scored[a].id < scored[b].id;
  });

  AudrcResult result;
  result.curve.reserve(scored.size());
  double cum_w = 0.0, cum_wc = 0.0, prev_rate = 0.0;
  for (const std::size_t i : order) {
    cum_w += scored[i].weight;
    cum_wc += scored[i].weight * credit(scored[i]);
    const double rate = cum_w / total;
    const double acc = cum_w > 0.0 ? cum_wc / cum_w : 0.0;
    result.area += (rate - prev_rate) * acc;
    result.curve.push_back({rate, acc});
    prev_rate = rate;
  }
  return result;
}

DominanceTable dominance_confusion(std::span<const ScoredPair> scored) {
  const double total = total_weight_or_throw(scored, "dominance_confusion");

  DominanceTable table;
  for (const auto& sp : scored) {
    const auto cause_pred = delta_prediction(sp.score.delta_cause);
    const auto mech_pred = delta_prediction(sp.score.delta_mech);
    const bool cause_correct = cause_pred && *cause_pred == sp.truth;
    const bool mech_correct = mech_pred && *mech_pred == sp.truth;
    table.at(cause_correct, mech_correct, sp.score.dominant) += sp.weight;
  }
  for (auto& plane : table.cells) {
    for (auto& row : plane) {
      for (double& cell : row) cell *= 100.0 / total;
    }
  }
  return table;
}

double uniqueness_fraction(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
  return static_cast<double>(distinct) / static_cast<double>(samples.size());
}

BenchmarkSet subset_by_uniqueness(const BenchmarkSet& bench, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw std::invalid_argument("subset_by_uniqueness: threshold must be in (0, 1]");
  }
  BenchmarkSet subset;
  subset.name = bench.name;
  subset.source_hash = bench.source_hash;
  subset.skipped = bench.skipped;
  for (const auto& pair : bench.pairs) {
    if (uniqueness_fraction(pair.x) >= threshold &&
        uniqueness_fraction(pair.y) >= threshold) {
      subset.pairs.push_back(pair);
    }
  }
  return subset;
}

MetricReport evaluate(std::span<const ScoredPair> scored) {
  MetricReport report;
  report.accuracy = weighted_accuracy(scored);
  report.auroc = weighted_auroc(scored);
  auto drc = audrc(scored);
  report.audrc = drc.area;
  report.curve = std::move(drc.curve);
  report.dominance = dominance_confusion(scored);
  return report;
}

nlohmann::ordered_json metric_report_json(const MetricReport& report) {
  nlohmann::ordered_json j;
  j["accuracy"] = report.accuracy;
  if (report.auroc) {
    j["auroc"] = *report.auroc;
  } else {
    j["auroc"] = nullptr;
  }
  j["audrc"] = report.audrc;

  auto curve = nlohmann::ordered_json::array();
  for (const auto& pt : report.curve) {
    curve.push_back({pt.decision_rate, pt.cumulative_accuracy});
  }
  j["curve"] = std::move(curve);

  auto cells = nlohmann::ordered_json::array();
  for (const bool cause_correct : {true, false}) {
    for (const bool mech_correct : {true, false}) {
      cells.push_back({
          {"cause_correct", cause_correct},
          {"mech_correct", mech_correct},
          {"cause_dominant_pct",
           report.dominance.at(cause_correct, mech_correct, Component::Cause)},
          {"mech_dominant_pct",
           report.dominance.at(cause_correct, mech_correct, Component::Mechanism)},
      });
    }
  }
  const auto [row1_good, row1_bad] = report.dominance.row_marginal(true);
  const auto [row2_good, row2_bad] = report.dominance.row_marginal(false);
  j["dominance"] = {
      {"cells", std::move(cells)},
      {"cause_correct_marginal", {{"decided_correct_pct", row1_good},
                                  {"decided_incorrect_pct", row1_bad}}},
      {"cause_incorrect_marginal", {{"decided_correct_pct", row2_good},
                                    {"decided_incorrect_pct", row2_bad}}},
  };
  return j;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "decision_rate,cumulative_accuracy\n";
  for (const auto& pt : curve) {
    out << format_sig9(pt.decision_rate) << ',' << format_sig9(pt.cumulative_accuracy)
        << '\n';
  }
}

std::string format_sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace rdmdl
