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
#include "rdmdl/mechanism.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace rdmdl {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Feature matrix with the intercept column first; returns false when any
// entry is undefined or non-finite on this data.
bool build_features(std::span<const double> x, ModelFamily family,
                    Eigen::MatrixXd& features) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const int k = family_param_count(family);
  features.resize(n, k);
  features.col(0).setOnes();

  switch (family) {
    case ModelFamily::Poly0:
      break;
    case ModelFamily::Poly1:
    case ModelFamily::Poly2:
    case ModelFamily::Poly3:
    case ModelFamily::Poly4:
    case ModelFamily::Poly5:
      for (Eigen::Index i = 0; i < n; ++i) {
        double pow_x = 1.0;
        for (int j = 1; j < k; ++j) {
          pow_x *= x[static_cast<std::size_t>(i)];
          features(i, j) = pow_x;
        }
      }
      break;
    case ModelFamily::Recip1:
      for (Eigen::Index i = 0; i < n; ++i)
        features(i, 1) = 1.0 / x[static_cast<std::size_t>(i)];
      break;
    case ModelFamily::Recip2: {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        features(i, 1) = 1.0 / (xi * xi);
      }
      break;
    }
    case ModelFamily::Exp:
      for (Eigen::Index i = 0; i < n; ++i)
        features(i, 1) = std::exp(x[static_cast<std::size_t>(i)]);
      break;
    case ModelFamily::Log:
      for (Eigen::Index i = 0; i < n; ++i)
        features(i, 1) = std::log(x[static_cast<std::size_t>(i)]);
      break;
  }
  return features.allFinite();
}

}  // namespace

int family_param_count(ModelFamily family) {
  switch (family) {
    case ModelFamily::Poly0: return 1;
    case ModelFamily::Poly1: return 2;
    case ModelFamily::Poly2: return 3;
    case ModelFamily::Poly3: return 4;
    case ModelFamily::Poly4: return 5;
    case ModelFamily::Poly5: return 6;
    case ModelFamily::Recip1:
    case ModelFamily::Recip2:
    case ModelFamily::Exp:
    case ModelFamily::Log: return 2;
  }
  return 1;
}

std::string_view family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Poly0: return "poly0";
    case ModelFamily::Poly1: return "poly1";
    case ModelFamily::Poly2: return "poly2";
    case ModelFamily::Poly3: return "poly3";
    case ModelFamily::Poly4: return "poly4";
    case ModelFamily::Poly5: return "poly5";
    case ModelFamily::Recip1: return "recip1";
    case ModelFamily::Recip2: return "recip2";
    case ModelFamily::Exp: return "exp";
    case ModelFamily::Log: return "log";
  }
  return "?";
}

double residual_code_length(double sigma2, std::size_t n) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("residual_code_length: sigma2 must be > 0");
  }
  const double nn = static_cast<double>(n);
  return nn / 2.0 * std::log2(2.0 * M_PI * sigma2) + nn / (2.0 * kLn2);
}

double model_code_length(int k, std::size_t n) {
  if (k < 1 || n < 2) {
    throw std::invalid_argument("model_code_length: need k >= 1 and n >= 2");
  }
  return static_cast<double>(k) / 2.0 * std::log2(static_cast<double>(n));
}

std::optional<FittedModel> fit_family(std::span<const double> x,
                                      std::span<const double> y, ModelFamily family,
                                      double sigma2_floor) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("fit_family: x and y must be nonempty and paired");
  }
  if (!(sigma2_floor > 0.0)) {
    throw std::invalid_argument("fit_family: sigma2_floor must be > 0");
  }

  Eigen::MatrixXd features;
  if (!build_features(x, family, features)) return std::nullopt;

  const Eigen::Map<const Eigen::VectorXd> target(y.data(),
                                                 static_cast<Eigen::Index>(y.size()));
  // Rank-revealing; rank-deficient systems get the minimum-norm solution.
  const Eigen::VectorXd params =
      features.completeOrthogonalDecomposition().solve(target);
  const double rss = (target - features * params).squaredNorm();

  FittedModel model;
  model.family = family;
  model.params.assign(params.data(), params.data() + params.size());
  model.sigma2 = std::max(rss / static_cast<double>(x.size()), sigma2_floor);
  model.total_bits = residual_code_length(model.sigma2, x.size()) +
                     model_code_length(family_param_count(family), x.size());
  return model;
}

ConditionalFit conditional_length(std::span<const double> x, std::span<const double> y,
                                  double sigma2_floor) {
  std::optional<FittedModel> best;
  for (const ModelFamily family : kAllFamilies) {
    auto fit = fit_family(x, y, family, sigma2_floor);
    if (!fit) continue;
    if (!best || fit->total_bits < best->total_bits ||
        (fit->total_bits == best->total_bits &&
         family_param_count(fit->family) < family_param_count(best->family))) {
      best = std::move(fit);
    }
  }
  // Poly0 always fits, so best is set.
  return ConditionalFit{best->total_bits, std::move(*best)};
}

}  // namespace rdmdl
