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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rdmdl/eval.hpp"
#include "rdmdl/random.hpp"

using namespace rdmdl;

namespace {

ScoredPair make(const std::string& id, double weight, Direction truth, double s,
                double delta_cause = 0.0, double delta_mech = 0.0) {
  ScoredPair sp;
  sp.id = id;
  sp.weight = weight;
  sp.truth = truth;
  sp.score.s = s;
  sp.score.n = 100;
  sp.score.delta_cause = delta_cause;
  sp.score.delta_mech = delta_mech;
  sp.score.dominant = std::abs(delta_cause) > std::abs(delta_mech)
                          ? Component::Cause
                          : Component::Mechanism;
  sp.score.predicted =
      s > 0.0 ? Prediction::XtoY : s < 0.0 ? Prediction::YtoX : Prediction::Abstain;
  return sp;
}

std::vector<ScoredPair> random_instance(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 19.0);
  std::vector<ScoredPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Direction truth =
        rng.uniform01() < 0.5 ? Direction::XtoY : Direction::YtoX;
    // Quantized scores produce plenty of ties, including exact zeros.
    const double s = std::round((rng.uniform01() - 0.5) * 8.0) / 4.0;
    const double weight =
        rng.uniform01() < 0.3 ? 1.0 : std::round(rng.uniform01() * 40.0) / 8.0;
    out.push_back(make("p" + std::to_string(i), weight, truth, s));
  }
  return out;
}

bool has_both_classes(const std::vector<ScoredPair>& v) {
  bool pos = false, neg = false;
  for (const auto& sp : v) (sp.truth == Direction::XtoY ? pos : neg) = true;
  return pos && neg;
}

double total_weight(const std::vector<ScoredPair>& v) {
  double w = 0.0;
  for (const auto& sp : v) w += sp.weight;
  return w;
}

}  // namespace

TEST_CASE("weighted_accuracy: fixtures") {
  const std::vector<ScoredPair> all_correct = {
      make("a", 1, Direction::XtoY, 1.0), make("b", 1, Direction::YtoX, -1.0)};
  CHECK(weighted_accuracy(all_correct) == 1.0);

  const std::vector<ScoredPair> with_abstain = {
      make("a", 1, Direction::XtoY, 1.0), make("b", 1, Direction::XtoY, 0.0)};
  CHECK(weighted_accuracy(with_abstain) == doctest::Approx(0.75));

  const std::vector<ScoredPair> weighted = {make("a", 2, Direction::XtoY, 1.0),
                                            make("b", 1, Direction::XtoY, -1.0)};
  CHECK(weighted_accuracy(weighted) == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(weighted_accuracy(std::vector<ScoredPair>{}), std::invalid_argument);
}

TEST_CASE("weighted_auroc: fixtures") {
  const std::vector<ScoredPair> perfect = {make("a", 1, Direction::XtoY, 2.0),
                                           make("b", 1, Direction::XtoY, 1.0),
                                           make("c", 1, Direction::YtoX, 0.0)};
  CHECK(weighted_auroc(perfect) == 1.0);

  const std::vector<ScoredPair> inverted = {make("a", 1, Direction::YtoX, 1.0),
                                            make("b", 1, Direction::XtoY, 0.0)};
  CHECK(weighted_auroc(inverted) == 0.0);

  // Frozen from the brute-force oracle: tie (w=2) counts half, win (w=1)
  // counts fully -> (0.5*2 + 1) / (1*3) = 2/3.
  const std::vector<ScoredPair> tied = {make("a", 1, Direction::XtoY, 1.0),
                                        make("b", 2, Direction::YtoX, 1.0),
                                        make("c", 1, Direction::YtoX, 0.0)};
  CHECK(weighted_auroc(tied) == doctest::Approx(2.0 / 3.0));

  const std::vector<ScoredPair> single_class = {make("a", 1, Direction::XtoY, 1.0),
                                                make("b", 1, Direction::XtoY, 0.5)};
  CHECK_FALSE(weighted_auroc(single_class).has_value());
}

TEST_CASE("weighted_auroc: invariant under increasing transforms") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = random_instance(seed);
    if (!has_both_classes(inst)) continue;
    const auto base = weighted_auroc(inst);
    REQUIRE(base.has_value());
    auto transformed = inst;
    for (auto& sp : transformed) sp.score.s = std::atan(sp.score.s) * 3.0 + 1.0;
    const auto alt = weighted_auroc(transformed);
    REQUIRE(alt.has_value());
    CHECK(*alt == doctest::Approx(*base).epsilon(1e-12));
  }
}

TEST_CASE("weighted_auroc: negating scores and flipping labels is a no-op") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = random_instance(seed);
    if (!has_both_classes(inst)) continue;
    const auto base = weighted_auroc(inst);
    auto flipped = inst;
    for (auto& sp : flipped) {
      sp.score.s = -sp.score.s;
      sp.truth = sp.truth == Direction::XtoY ? Direction::YtoX : Direction::XtoY;
    }
    const auto alt = weighted_auroc(flipped);
    REQUIRE(base.has_value());
    REQUIRE(alt.has_value());
    CHECK(*alt == doctest::Approx(*base).epsilon(1e-12));
  }
}

TEST_CASE("metrics match brute-force oracles on small instances") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance(seed);
    if (!(total_weight(inst) > 0.0)) continue;
    CHECK(weighted_accuracy(inst) == doctest::Approx(oracles::accuracy(inst)).epsilon(1e-12));
    CHECK(audrc(inst).area == doctest::Approx(oracles::audrc(inst)).epsilon(1e-12));
    const auto mine = weighted_auroc(inst);
    const auto ref = oracles::auroc(inst);
    REQUIRE(mine.has_value() == ref.has_value());
    if (mine) CHECK(*mine == doctest::Approx(*ref).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked >= 250);
}

TEST_CASE("unit weights reduce to the unweighted metrics") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_instance(seed);
    for (auto& sp : inst) sp.weight = 1.0;

    double hits = 0.0;
    for (const auto& sp : inst) hits += oracles::pair_credit(sp);
    CHECK(weighted_accuracy(inst) ==
          doctest::Approx(hits / static_cast<double>(inst.size())).epsilon(1e-12));

    const auto mine = weighted_auroc(inst);
    if (mine) {
      // plain unweighted pairwise count
      double num = 0.0;
      std::size_t pos = 0, neg = 0;
      for (const auto& a : inst) {
        if (a.truth == Direction::XtoY) {
          ++pos;
          continue;
        }
        ++neg;
      }
      for (const auto& a : inst) {
        if (a.truth != Direction::XtoY) continue;
        for (const auto& b : inst) {
          if (b.truth != Direction::YtoX) continue;
          if (a.score.s > b.score.s) num += 1.0;
          if (a.score.s == b.score.s) num += 0.5;
        }
      }
      CHECK(*mine == doctest::Approx(num / (static_cast<double>(pos) *
                                            static_cast<double>(neg)))
                         .epsilon(1e-12));
    }
    CHECK(audrc(inst).area == doctest::Approx(oracles::audrc(inst)).epsilon(1e-12));
  }
}

TEST_CASE("audrc: fixtures") {
  const std::vector<ScoredPair> all_correct = {make("a", 1, Direction::XtoY, 0.5),
                                               make("b", 1, Direction::YtoX, -2.0),
                                               make("c", 1, Direction::XtoY, 1.0)};
  CHECK(audrc(all_correct).area == doctest::Approx(1.0));

  const std::vector<ScoredPair> all_wrong = {make("a", 1, Direction::YtoX, 0.5),
                                             make("b", 1, Direction::XtoY, -2.0)};
  CHECK(audrc(all_wrong).area == doctest::Approx(0.0));

  // high-confidence pair correct, low-confidence incorrect:
  // 0.5*1 + 0.5*0.5 = 0.75
  const std::vector<ScoredPair> two = {make("hi", 1, Direction::XtoY, 2.0),
                                       make("lo", 1, Direction::XtoY, -0.5)};
  CHECK(audrc(two).area == doctest::Approx(0.75));
}

TEST_CASE("audrc: |s| ties broken by id ascending") {
  const auto correct = make("b", 1, Direction::XtoY, 1.0);
  const auto wrong = make("a", 1, Direction::YtoX, 1.0);
  // "a" walks first: 0.5*0 + 0.5*0.5 = 0.25
  CHECK(audrc(std::vector<ScoredPair>{correct, wrong}).area == doctest::Approx(0.25));

  const auto correct_first = make("a", 1, Direction::XtoY, 1.0);
  const auto wrong_second = make("b", 1, Direction::YtoX, 1.0);
  // "a" walks first and is correct: 0.5*1 + 0.5*0.5 = 0.75
  CHECK(audrc(std::vector<ScoredPair>{wrong_second, correct_first}).area ==
        doctest::Approx(0.75));
}

TEST_CASE("audrc: invariant under weight rescaling") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = random_instance(seed);
    const double base = audrc(inst).area;
    for (auto& sp : inst) sp.weight *= 7.25;
    CHECK(audrc(inst).area == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("audrc: curve rates are nondecreasing in [0,1]") {
  const auto inst = random_instance(11);
  const auto result = audrc(inst);
  double prev = 0.0;
  for (const auto& pt : result.curve) {
    CHECK(pt.decision_rate >= prev);
    CHECK(pt.decision_rate <= 1.0 + 1e-12);
    prev = pt.decision_rate;
  }
  CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("dominance_confusion: single pair, both predictors correct") {
  // truth XtoY; negative deltas predict XtoY; cause dominates
  const std::vector<ScoredPair> one = {
      make("a", 1, Direction::XtoY, 1.0, -4.0, -1.0)};
  const auto table = dominance_confusion(one);
  CHECK(table.at(true, true, Component::Cause) == doctest::Approx(100.0));
  CHECK(table.at(true, true, Component::Mechanism) == 0.0);
  CHECK(table.at(false, false, Component::Mechanism) == 0.0);
}

TEST_CASE("dominance_confusion: zero mechanism delta abstains, cause dominates") {
  const std::vector<ScoredPair> pairs = {
      make("a", 1, Direction::XtoY, 1.0, -4.0, 0.0),
      make("b", 1, Direction::XtoY, 1.0, -2.0, 0.0)};
  const auto table = dominance_confusion(pairs);
  // mechanism predictor undecided -> counted as not correct
  CHECK(table.at(true, false, Component::Cause) == doctest::Approx(100.0));
}

TEST_CASE("dominance_confusion: crafted four-cell instance") {
  const std::vector<ScoredPair> pairs = {
      // cause correct, mech correct, cause dominant
      make("a", 2, Direction::XtoY, 1.0, -4.0, -1.0),
      // cause correct, mech wrong, mech dominant
      make("b", 1, Direction::XtoY, -1.0, -1.0, 4.0),
      // cause wrong, mech correct, mech dominant
      make("c", 1, Direction::XtoY, 1.0, 1.0, -4.0),
      // cause wrong, mech wrong, cause dominant
      make("d", 4, Direction::XtoY, -1.0, 4.0, 1.0),
  };
  const auto table = dominance_confusion(pairs);
  CHECK(table.at(true, true, Component::Cause) == doctest::Approx(25.0));
  CHECK(table.at(true, false, Component::Mechanism) == doctest::Approx(12.5));
  CHECK(table.at(false, true, Component::Mechanism) == doctest::Approx(12.5));
  CHECK(table.at(false, false, Component::Cause) == doctest::Approx(50.0));

  double sum = 0.0;
  for (const bool c : {true, false}) {
    for (const bool m : {true, false}) {
      sum += table.at(c, m, Component::Cause) + table.at(c, m, Component::Mechanism);
    }
  }
  CHECK(sum == doctest::Approx(100.0));

  const auto [row_good, row_bad] = table.row_marginal(true);
  CHECK(row_good == doctest::Approx(25.0));  // a decided by cause, correct
  CHECK(row_bad == doctest::Approx(12.5));   // b decided by mech, wrong
}

TEST_CASE("uniqueness subset") {
  BenchmarkSet bench;
  bench.name = "t";

  PairSample continuous;
  continuous.id = "cont";
  continuous.weight = 1.0;
  Rng rng(3);
  continuous.x.resize(100);
  continuous.y.resize(100);
  for (auto& v : continuous.x) v = rng.uniform01();
  for (auto& v : continuous.y) v = rng.uniform01();

  PairSample binary = continuous;
  binary.id = "bin";
  binary.weight = 3.0;
  for (std::size_t i = 0; i < binary.x.size(); ++i) {
    binary.x[i] = binary.x[i] < 0.5 ? 0.0 : 1.0;
  }

  bench.pairs = {continuous, binary};
  const auto subset = subset_by_uniqueness(bench, 1.0 / 3.0);
  REQUIRE(subset.pairs.size() == 1);
  CHECK(subset.pairs[0].id == "cont");
  CHECK(subset.total_weight() / bench.total_weight() == doctest::Approx(0.25));

  CHECK_THROWS_AS(subset_by_uniqueness(bench, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(subset_by_uniqueness(bench, 1.5), std::invalid_argument);
}

TEST_CASE("uniqueness_fraction") {
  const std::vector<double> distinct = {1.0, 2.0, 3.0, 4.0};
  CHECK(uniqueness_fraction(distinct) == 1.0);
  const std::vector<double> repeated = {1.0, 1.0, 2.0, 2.0};
  CHECK(uniqueness_fraction(repeated) == 0.5);
}

TEST_CASE("evaluate bundles the individual metrics") {
  const auto inst = random_instance(17);
  const auto report = evaluate(inst);
  CHECK(report.accuracy == doctest::Approx(weighted_accuracy(inst)));
  CHECK(report.audrc == doctest::Approx(audrc(inst).area));
  CHECK(report.curve.size() == inst.size());
  const auto auc = weighted_auroc(inst);
  CHECK(report.auroc.has_value() == auc.has_value());
}

TEST_CASE("metric_report_json is well-formed") {
  const auto inst = random_instance(23);
  const auto j = metric_report_json(evaluate(inst));
  CHECK(j.contains("accuracy"));
  CHECK(j.contains("auroc"));
  CHECK(j.contains("audrc"));
  CHECK(j.contains("curve"));
  CHECK(j["dominance"].contains("cells"));
  CHECK(j["dominance"]["cells"].size() == 4);
}

TEST_CASE("weighted_auroc_of ranks by the supplied statistic") {
  const std::vector<ScoredPair> pairs = {
      make("a", 1, Direction::XtoY, -1.0, -5.0, 0.0),
      make("b", 1, Direction::YtoX, 1.0, 5.0, 0.0)};
  // ranking by s is inverted, ranking by -delta_cause is perfect
  CHECK(*weighted_auroc(pairs) == 0.0);
  const auto by_cause = weighted_auroc_of(
      pairs, [](const DirectionScore& ds) { return -ds.delta_cause; });
  CHECK(*by_cause == 1.0);
}
