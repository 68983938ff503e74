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
#include "rdmdl/scorer.hpp"

#include <cmath>
#include <stdexcept>

namespace rdmdl {

DirectionScore score_pair(const PairSample& pair, const RdmdlConfig& config) {
  pair.validate();
  if (pair.x.size() < config.min_n) {
    throw std::invalid_argument("pair " + pair.id + ": has " +
                                std::to_string(pair.x.size()) +
                                " samples, below the configured minimum of " +
                                std::to_string(config.min_n));
  }

  const std::size_t n = pair.x.size();
  const std::vector<double> sx = scale(pair.x, config.scaling);
  const std::vector<double> sy = scale(pair.y, config.scaling);
  const EpsilonGrid grid = make_epsilon_grid(n, config.grid);

  DirectionScore ds;
  ds.n = n;
  ds.l_x = cause_length(sx, config.rule, grid);
  ds.l_y = cause_length(sy, config.rule, grid);
  ds.l_y_given_x = conditional_length(sx, sy, config.sigma2_floor).bits;
  ds.l_x_given_y = conditional_length(sy, sx, config.sigma2_floor).bits;

  ds.s = ((ds.l_y + ds.l_x_given_y) - (ds.l_x + ds.l_y_given_x)) /
         static_cast<double>(n);
  ds.delta_cause = ds.l_x - ds.l_y;
  ds.delta_mech = ds.l_y_given_x - ds.l_x_given_y;
  ds.dominant = std::abs(ds.delta_cause) > std::abs(ds.delta_mech)
                    ? Component::Cause
                    : Component::Mechanism;
  ds.predicted = ds.s > 0.0   ? Prediction::XtoY
                 : ds.s < 0.0 ? Prediction::YtoX
                              : Prediction::Abstain;
  return ds;
}

std::pair<double, double> component_scores(const DirectionScore& ds) {
  return {ds.delta_cause, ds.delta_mech};
}

std::string_view to_string(Prediction p) {
  switch (p) {
    case Prediction::XtoY: return "XtoY";
    case Prediction::YtoX: return "YtoX";
    case Prediction::Abstain: return "Abstain";
  }
  return "?";
}

std::string_view to_string(Component c) {
  return c == Component::Cause ? "cause" : "mechanism";
}

}  // namespace rdmdl
