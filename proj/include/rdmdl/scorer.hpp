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
#include <string_view>
#include <utility>

#include "rdmdl/dataset.hpp"
#include "rdmdl/mechanism.hpp"
#include "rdmdl/rate.hpp"

namespace rdmdl {

enum class Prediction { XtoY, YtoX, Abstain };

enum class Component { Cause, Mechanism };

struct RdmdlConfig {
  DistortionRule rule = DistortionRule::FreedmanDiaconis;
  ScalingMode scaling = ScalingMode::MinMax;
  GridPolicy grid;
  double sigma2_floor = kSigma2Floor;
  std::size_t min_n = kMinSamples;
};

/// Per-pair result. s is in bits per sample and positive when X -> Y has the
/// shorter total description; the per-component deltas use the opposite
/// orientation (negative favors X -> Y), see component_scores.
struct DirectionScore {
  double s = 0.0;
  double l_x = 0.0;
  double l_y = 0.0;
  double l_y_given_x = 0.0;
  double l_x_given_y = 0.0;
  double delta_cause = 0.0;  // l_x - l_y
  double delta_mech = 0.0;   // l_y_given_x - l_x_given_y
  Component dominant = Component::Mechanism;
  Prediction predicted = Prediction::Abstain;
  std::size_t n = 0;
};

/// Scales x and y independently, computes the four code lengths, and forms
/// s = (L(Y->X) - L(X->Y)) / n. predicted follows sign(s) with s == 0
/// abstaining; dominant is the larger-|delta| component, ties going to
/// Mechanism. Deterministic: identical input and config give identical bits.
DirectionScore score_pair(const PairSample& pair, const RdmdlConfig& config);

/// (delta_cause, delta_mech); their sum equals -n*s exactly. In this
/// orientation a negative value prefers X -> Y, the sign convention of the
/// component-difference decomposition (the score s flips it).
std::pair<double, double> component_scores(const DirectionScore& ds);

std::string_view to_string(Prediction p);
std::string_view to_string(Component c);

}  // namespace rdmdl
