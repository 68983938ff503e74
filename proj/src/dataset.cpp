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
#include "rdmdl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "rdmdl/random.hpp"

namespace rdmdl {

namespace {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t hash) {
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;

std::string read_file_bytes(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw DatasetError("cannot open file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

bool parse_double(std::string_view token, double& out) {
  if (token.size() > 1 && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::vector<double>> parse_numeric_table(std::string_view content,
                                                     const std::string& file_name) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    std::vector<double> row;
    row.reserve(tokens.size());
    for (const auto token : tokens) {
      double value = 0.0;
      if (!parse_double(token, value)) {
        throw ParseError(file_name + ":" + std::to_string(line_no) +
                         ": malformed numeric value '" + std::string(token) + "'");
      }
      if (!std::isfinite(value)) {
        throw ParseError(file_name + ":" + std::to_string(line_no) +
                         ": non-finite value '" + std::string(token) + "'");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(file_name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct MetaLine {
  std::string id;
  int cause_start = 0;
  int cause_end = 0;
  int effect_start = 0;
  int effect_end = 0;
  double weight = 0.0;
};

std::vector<MetaLine> parse_meta(std::string_view content, const std::string& file_name) {
  std::vector<MetaLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 6) {
      throw DatasetError(file_name + ":" + std::to_string(line_no) +
                         ": expected 6 fields `id causeStart causeEnd effectStart"
                         " effectEnd weight`, found " +
                         std::to_string(tokens.size()));
    }

    MetaLine meta;
    meta.id = std::string(tokens[0]);
    double fields[4] = {};
    for (int i = 0; i < 4; ++i) {
      if (!parse_double(tokens[i + 1], fields[i]) || fields[i] < 1.0 ||
          fields[i] != std::floor(fields[i])) {
        throw DatasetError(file_name + ":" + std::to_string(line_no) +
                           ": bad column index '" + std::string(tokens[i + 1]) + "'");
      }
    }
    meta.cause_start = static_cast<int>(fields[0]);
    meta.cause_end = static_cast<int>(fields[1]);
    meta.effect_start = static_cast<int>(fields[2]);
    meta.effect_end = static_cast<int>(fields[3]);
    if (meta.cause_end < meta.cause_start || meta.effect_end < meta.effect_start) {
      throw DatasetError(file_name + ":" + std::to_string(line_no) +
                         ": column span ends before it starts");
    }
    if (!parse_double(tokens[5], meta.weight) || !std::isfinite(meta.weight) ||
        meta.weight < 0.0) {
      throw DatasetError(file_name + ":" + std::to_string(line_no) + ": bad weight '" +
                         std::string(tokens[5]) + "'");
    }
    lines.push_back(std::move(meta));
  }
  return lines;
}

std::vector<double> extract_column(const std::vector<std::vector<double>>& rows,
                                   int col_1based) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[col_1based - 1]);
  return out;
}

}  // namespace

void PairSample::validate() const {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pair " + id + ": x has " + std::to_string(x.size()) +
                                " samples but y has " + std::to_string(y.size()));
  }
  if (x.size() < kMinSamples) {
    throw std::invalid_argument("pair " + id + ": needs at least " +
                                std::to_string(kMinSamples) + " samples, got " +
                                std::to_string(x.size()));
  }
  for (const auto& v : {std::cref(x), std::cref(y)}) {
    for (const double s : v.get()) {
      if (!std::isfinite(s)) {
        throw std::invalid_argument("pair " + id + ": non-finite sample");
      }
    }
  }
  if (!std::isfinite(weight) || weight < 0.0) {
    throw std::invalid_argument("pair " + id + ": weight must be finite and >= 0");
  }
}

double BenchmarkSet::total_weight() const {
  return std::accumulate(pairs.begin(), pairs.end(), 0.0,
                         [](double acc, const PairSample& p) { return acc + p.weight; });
}

std::vector<std::vector<double>> read_numeric_table(const std::filesystem::path& file) {
  return parse_numeric_table(read_file_bytes(file), file.filename().string());
}

BenchmarkSet load_benchmark(const std::filesystem::path& dir) {
  const auto meta_path = dir / "pairmeta.txt";
  if (!std::filesystem::exists(meta_path)) {
    throw DatasetError("missing meta file: " + meta_path.string());
  }

  BenchmarkSet bench;
  bench.name = dir.filename().string();
  if (bench.name.empty()) bench.name = dir.parent_path().filename().string();

  const std::string meta_bytes = read_file_bytes(meta_path);
  std::uint64_t hash = fnv1a(meta_bytes, kFnvOffset);
  const auto meta_lines = parse_meta(meta_bytes, meta_path.filename().string());

  std::unordered_set<std::string> seen_ids;
  for (const auto& meta : meta_lines) {
    if (!seen_ids.insert(meta.id).second) {
      throw DatasetError(meta_path.filename().string() + ": duplicate pair id '" +
                         meta.id + "'");
    }
    const auto pair_path = dir / ("pair" + meta.id + ".txt");
    if (!std::filesystem::exists(pair_path)) {
      throw DatasetError("pair file referenced but absent: " + pair_path.string());
    }
    const std::string bytes = read_file_bytes(pair_path);
    hash = fnv1a(bytes, hash);

    if (meta.cause_start != meta.cause_end || meta.effect_start != meta.effect_end) {
      bench.skipped.push_back(
          {meta.id, "multivariate pair (cause columns " +
                        std::to_string(meta.cause_start) + "-" +
                        std::to_string(meta.cause_end) + ", effect columns " +
                        std::to_string(meta.effect_start) + "-" +
                        std::to_string(meta.effect_end) + ")"});
      continue;
    }
    const int cause_col = meta.cause_start;
    const int effect_col = meta.effect_start;
    if (cause_col == effect_col) {
      throw DatasetError(meta_path.filename().string() + ": pair " + meta.id +
                         ": cause and effect share column " + std::to_string(cause_col));
    }

    const auto rows = parse_numeric_table(bytes, pair_path.filename().string());
    const int needed = std::max(cause_col, effect_col);
    if (rows.empty() || static_cast<int>(rows.front().size()) < needed) {
      throw DatasetError(pair_path.filename().string() + ": has " +
                         std::to_string(rows.empty() ? 0 : rows.front().size()) +
                         " columns, meta needs " + std::to_string(needed));
    }
    if (rows.size() < kMinSamples) {
      bench.skipped.push_back({meta.id, "fewer than " + std::to_string(kMinSamples) +
                                            " samples (" + std::to_string(rows.size()) +
                                            ")"});
      continue;
    }

    PairSample pair;
    pair.id = meta.id;
    pair.weight = meta.weight;
    pair.truth = cause_col < effect_col ? Direction::XtoY : Direction::YtoX;
    pair.x = extract_column(rows, std::min(cause_col, effect_col));
    pair.y = extract_column(rows, std::max(cause_col, effect_col));
    pair.validate();
    bench.pairs.push_back(std::move(pair));
  }
  bench.source_hash = hash;

  if (bench.pairs.empty()) {
    throw DatasetError(dir.string() + ": no usable pairs");
  }
  if (!(bench.total_weight() > 0.0)) {
    throw DatasetError(dir.string() + ": total weight is zero");
  }
  return bench;
}

std::vector<double> scale(std::span<const double> samples, ScalingMode mode) {
  if (samples.empty()) {
    throw std::invalid_argument("scale: empty sample vector");
  }
  std::vector<double> out(samples.size());
  if (mode == ScalingMode::MinMax) {
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it, hi = *hi_it;
    if (lo == hi) return out;  // all zeros
    const double span = hi - lo;
    std::transform(samples.begin(), samples.end(), out.begin(),
                   [&](double s) { return (s - lo) / span; });
    return out;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double var = 0.0;
  for (const double s : samples) var += (s - mean) * (s - mean);
  var /= n;
  if (var == 0.0) return out;
  const double inv_std = 1.0 / std::sqrt(var);
  std::transform(samples.begin(), samples.end(), out.begin(),
                 [&](double s) { return (s - mean) * inv_std; });
  return out;
}

AnmMechanism anm_mechanism_from_name(std::string_view name) {
  if (name == "quadratic") return AnmMechanism::Quadratic;
  if (name == "cubic") return AnmMechanism::Cubic;
  if (name == "exp") return AnmMechanism::Exp;
  if (name == "log-shifted") return AnmMechanism::LogShifted;
  throw std::invalid_argument("unknown mechanism '" + std::string(name) +
                              "'; expected quadratic, cubic, exp or log-shifted");
}

std::string_view anm_mechanism_name(AnmMechanism mechanism) {
  switch (mechanism) {
    case AnmMechanism::Quadratic: return "quadratic";
    case AnmMechanism::Cubic: return "cubic";
    case AnmMechanism::Exp: return "exp";
    case AnmMechanism::LogShifted: return "log-shifted";
  }
  return "?";
}

PairSample generate_anm_pair(AnmMechanism mechanism, double noise_std, std::size_t n,
                             std::uint64_t seed) {
  if (n < kMinSamples) {
    throw std::invalid_argument("generate_anm_pair: n must be >= " +
                                std::to_string(kMinSamples));
  }
  if (!(noise_std > 0.0) || !std::isfinite(noise_std)) {
    throw std::invalid_argument("generate_anm_pair: noise_std must be > 0");
  }

  const auto f = [mechanism](double x) {
    switch (mechanism) {
      case AnmMechanism::Quadratic: return x * x;
      case AnmMechanism::Cubic: return x * x * x;
      case AnmMechanism::Exp: return std::exp(x);
      case AnmMechanism::LogShifted: return std::log(x + 0.1);
    }
    return 0.0;
  };

  Rng rng(seed);
  PairSample pair;
  pair.id = std::string(anm_mechanism_name(mechanism)) + "-n" + std::to_string(n) +
            "-s" + std::to_string(seed);
  pair.x.resize(n);
  pair.y.resize(n);
  for (auto& v : pair.x) v = rng.uniform01();
  for (std::size_t i = 0; i < n; ++i) pair.y[i] = f(pair.x[i]) + rng.normal(0.0, noise_std);
  pair.weight = 1.0;
  pair.truth = Direction::XtoY;
  return pair;
}

std::string_view to_string(Direction d) {
  return d == Direction::XtoY ? "XtoY" : "YtoX";
}

std::string_view to_string(ScalingMode m) {
  return m == ScalingMode::MinMax ? "minmax" : "zscore";
}

ScalingMode scaling_mode_from_name(std::string_view name) {
  if (name == "minmax") return ScalingMode::MinMax;
  if (name == "zscore") return ScalingMode::ZScore;
  throw std::invalid_argument("unknown scaling mode '" + std::string(name) +
                              "'; expected minmax or zscore");
}

}  // namespace rdmdl
