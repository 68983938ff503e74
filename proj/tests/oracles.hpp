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

// Brute-force reference metrics, written independently of the eval module so
// the two can be checked against each other.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "rdmdl/eval.hpp"

namespace oracles {

inline double pair_credit(const rdmdl::ScoredPair& sp) {
  using rdmdl::Direction;
  using rdmdl::Prediction;
  switch (sp.score.predicted) {
    case Prediction::Abstain: return 0.5;
    case Prediction::XtoY: return sp.truth == Direction::XtoY ? 1.0 : 0.0;
    case Prediction::YtoX: return sp.truth == Direction::YtoX ? 1.0 : 0.0;
  }
  return 0.0;
}

inline double accuracy(std::span<const rdmdl::ScoredPair> scored) {
  double num = 0.0, den = 0.0;
  for (const auto& sp : scored) {
    num += sp.weight * pair_credit(sp);
    den += sp.weight;
  }
  return num / den;
}

inline std::optional<double> auroc(std::span<const rdmdl::ScoredPair> scored) {
  using rdmdl::Direction;
  double numerator = 0.0, w_pos = 0.0, w_neg = 0.0;
  for (const auto& a : scored) {
    if (a.truth == Direction::XtoY) {
      w_pos += a.weight;
    } else {
      w_neg += a.weight;
    }
  }
  if (w_pos == 0.0 || w_neg == 0.0) return std::nullopt;
  for (const auto& a : scored) {
    for (const auto& b : scored) {
      if (a.truth != Direction::XtoY || b.truth != Direction::YtoX) continue;
      double kernel = 0.0;
      if (a.score.s > b.score.s) {
        kernel = 1.0;
      } else if (a.score.s == b.score.s) {
        kernel = 0.5;
      }
      numerator += a.weight * b.weight * kernel;
    }
  }
  return numerator / (w_pos * w_neg);
}

inline double audrc(std::span<const rdmdl::ScoredPair> scored) {
  std::vector<const rdmdl::ScoredPair*> order;
  for (const auto& sp : scored) order.push_back(&sp);
  std::stable_sort(order.begin(), order.end(),
                   [](const rdmdl::ScoredPair* a, const rdmdl::ScoredPair* b) {
                     const double ca = std::fabs(a->score.s);
                     const double cb = std::fabs(b->score.s);
                     return ca != cb ? ca > cb : a->id < b->id;
                   });
  double total = 0.0;
  for (const auto* sp : order) total += sp->weight;

  double area = 0.0, cw = 0.0, cwc = 0.0, last_rate = 0.0;
  for (const auto* sp : order) {
    cw += sp->weight;
    cwc += sp->weight * pair_credit(*sp);
    const double rate = cw / total;
    area += (rate - last_rate) * (cw > 0.0 ? cwc / cw : 0.0);
    last_rate = rate;
  }
  return area;
}

}  // namespace oracles
