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

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rdmdl {

enum class Direction { XtoY, YtoX };

enum class ScalingMode { MinMax, ZScore };

/// Minimum usable sample count per pair. Below this the epsilon grid in
/// rate.hpp cannot produce the four scales the dimension slope fit needs.
inline constexpr std::size_t kMinSamples = 8;

/// One cause-effect pair: paired sample vectors with benchmark metadata.
struct PairSample {
  std::string id;
  std::vector<double> x;
  std::vector<double> y;
  double weight = 1.0;
  Direction truth = Direction::XtoY;
  std::vector<std::string> tags;

  /// Throws std::invalid_argument on any violated invariant (length
  /// mismatch, fewer than kMinSamples observations, non-finite values,
  /// negative or non-finite weight).
  void validate() const;
};

struct SkippedPair {
  std::string id;
  std::string reason;
};

struct BenchmarkSet {
  std::string name;
  std::vector<PairSample> pairs;
  std::vector<SkippedPair> skipped;
  // FNV-1a over the meta file bytes followed by each pair file's bytes in
  // meta order; identical directory bytes give an identical hash.
  std::uint64_t source_hash = 0;

  double total_weight() const;
};

/// Parse failure inside a numeric file; the message names file and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural dataset problem: missing files, bad meta lines, duplicate ids.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a whitespace-separated numeric table. Every row must parse fully,
/// carry the same column count as the first row, and contain only finite
/// values; anything else raises ParseError naming the file and line.
std::vector<std::vector<double>> read_numeric_table(const std::filesystem::path& file);

/// Loads a benchmark directory: `pairmeta.txt` lines of the form
/// `id causeStart causeEnd effectStart effectEnd weight` (1-based column
/// indices) next to `pair<id>.txt` sample files. x takes the earlier of the
/// two columns, y the later, and truth is XtoY iff the cause column precedes
/// the effect column. Pairs whose cause or effect spans more than one column
/// and pairs with fewer than kMinSamples rows are skipped with a recorded
/// reason; data corruption (malformed rows, NaN/inf) is a hard error.
BenchmarkSet load_benchmark(const std::filesystem::path& dir);

/// MinMax maps onto [0,1]; ZScore to zero mean and unit (population)
/// variance. Constant input maps to all zeros under both modes.
std::vector<double> scale(std::span<const double> samples, ScalingMode mode);

enum class AnmMechanism { Quadratic, Cubic, Exp, LogShifted };

/// Accepts "quadratic", "cubic", "exp", "log-shifted"; throws
/// std::invalid_argument otherwise.
AnmMechanism anm_mechanism_from_name(std::string_view name);
std::string_view anm_mechanism_name(AnmMechanism mechanism);

/// Synthetic additive-noise pair: x ~ Uniform(0,1) i.i.d., y = f(x) +
/// N(0, noise_std^2), truth XtoY. Bit-reproducible for a fixed seed.
/// Mechanisms: quadratic x^2, cubic x^3, exp e^x, log-shifted ln(x + 0.1).
PairSample generate_anm_pair(AnmMechanism mechanism, double noise_std,
                             std::size_t n, std::uint64_t seed);

std::string_view to_string(Direction d);
std::string_view to_string(ScalingMode m);
ScalingMode scaling_mode_from_name(std::string_view name);

}  // namespace rdmdl
