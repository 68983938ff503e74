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

// rdmdl: bivariate causal direction scoring from rate-distortion MDL.
//
//   rdmdl score <pair-file>      score a single two-column sample file
//   rdmdl bench <directory>      score a pairmeta benchmark and write metrics
//   rdmdl generate <kind>        write a seeded synthetic additive-noise pair
//
// Exit codes: 0 ok, 2 usage/parse problem, 3 dataset problem.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdmdl/dataset.hpp"
#include "rdmdl/eval.hpp"
#include "rdmdl/mechanism.hpp"
#include "rdmdl/rate.hpp"
#include "rdmdl/scorer.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDataset = 3;

struct CommonOptions {
  std::string rule = "fd";
  std::string scaling = "minmax";
  std::size_t min_n = rdmdl::kMinSamples;
};

rdmdl::RdmdlConfig build_config(const CommonOptions& opt) {
  rdmdl::RdmdlConfig config;
  config.rule = rdmdl::distortion_rule_from_name(opt.rule);
  config.scaling = rdmdl::scaling_mode_from_name(opt.scaling);
  config.min_n = opt.min_n;
  return config;
}

std::string quote_csv(const std::string& field) {
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

constexpr const char* kScoresHeader =
    "id,weight,truth,n,s,l_x,l_y,l_y_given_x,l_x_given_y,delta_cause,delta_mech,"
    "predicted,dominant";

void write_score_row(std::ostream& out, const rdmdl::ScoredPair& sp) {
  using rdmdl::format_sig9;
  const auto& ds = sp.score;
  out << sp.id << ',' << format_sig9(sp.weight) << ',' << rdmdl::to_string(sp.truth)
      << ',' << ds.n << ',' << format_sig9(ds.s) << ',' << format_sig9(ds.l_x) << ','
      << format_sig9(ds.l_y) << ',' << format_sig9(ds.l_y_given_x) << ','
      << format_sig9(ds.l_x_given_y) << ',' << format_sig9(ds.delta_cause) << ','
      << format_sig9(ds.delta_mech) << ',' << rdmdl::to_string(ds.predicted) << ','
      << rdmdl::to_string(ds.dominant) << '\n';
}

std::vector<rdmdl::ScoredPair> score_all(const std::vector<rdmdl::PairSample>& pairs,
                                         const rdmdl::RdmdlConfig& config,
                                         unsigned jobs) {
  std::vector<rdmdl::ScoredPair> scored(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pairs.size()) return;
      try {
        scored[i] = rdmdl::ScoredPair{pairs[i].id, pairs[i].weight, pairs[i].truth,
                                      rdmdl::score_pair(pairs[i], config)};
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return scored;
}

// ---------------------------------------------------------------------------
// score

struct ScoreOptions {
  std::string file;
  CommonOptions common;
  int x_col = 1;
  int y_col = 2;
  std::string id;
};

int run_score(const ScoreOptions& opt) {
  std::vector<std::vector<double>> table;
  try {
    table = rdmdl::read_numeric_table(opt.file);
  } catch (const rdmdl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rdmdl::DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataset;
  }
  if (table.empty()) {
    std::cerr << "error: no observations in " << opt.file << '\n';
    return kExitUsage;
  }
  const int cols = static_cast<int>(table.front().size());
  const int needed = std::max(opt.x_col, opt.y_col);
  if (cols < needed) {
    std::cerr << "error: " << opt.file << " has " << cols << " column(s), need "
              << needed << '\n';
    return kExitUsage;
  }

  rdmdl::PairSample pair;
  pair.id = opt.id.empty() ? fs::path(opt.file).stem().string() : opt.id;
  pair.x.reserve(table.size());
  pair.y.reserve(table.size());
  for (const auto& row : table) {
    pair.x.push_back(row[static_cast<std::size_t>(opt.x_col - 1)]);
    pair.y.push_back(row[static_cast<std::size_t>(opt.y_col - 1)]);
  }

  const auto ds = rdmdl::score_pair(pair, build_config(opt.common));
  using rdmdl::format_sig9;
  std::cout << "id,s,l_x,l_y,l_y_given_x,l_x_given_y,predicted,dominant\n"
            << pair.id << ',' << format_sig9(ds.s) << ',' << format_sig9(ds.l_x) << ','
            << format_sig9(ds.l_y) << ',' << format_sig9(ds.l_y_given_x) << ','
            << format_sig9(ds.l_x_given_y) << ',' << rdmdl::to_string(ds.predicted)
            << ',' << rdmdl::to_string(ds.dominant) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string dir;
  std::string out = ".";
  CommonOptions common;
  std::optional<double> unique_threshold;
  unsigned jobs = 1;
};

ordered_json config_echo(const BenchOptions& opt) {
  ordered_json config;
  config["rule"] = opt.common.rule;
  config["scaling"] = opt.common.scaling;
  config["min_n"] = opt.common.min_n;
  const rdmdl::GridPolicy grid;
  config["grid"] = {{"min_bins", grid.min_bins},
                    {"max_bins", grid.max_bins},
                    {"scale_targets", grid.scale_targets}};
  if (opt.unique_threshold) {
    config["unique_threshold"] = *opt.unique_threshold;
  } else {
    config["unique_threshold"] = nullptr;
  }
  return config;
}

ordered_json metrics_section(const std::vector<rdmdl::ScoredPair>& scored) {
  auto section = rdmdl::metric_report_json(rdmdl::evaluate(scored));
  const auto cause_only = rdmdl::weighted_auroc_of(
      scored, [](const rdmdl::DirectionScore& ds) { return -ds.delta_cause; });
  if (cause_only) {
    section["cause_only_auroc"] = *cause_only;
  } else {
    section["cause_only_auroc"] = nullptr;
  }
  return section;
}

int run_bench(const BenchOptions& opt) {
  const auto started = std::chrono::steady_clock::now();

  auto bench = rdmdl::load_benchmark(opt.dir);

  // Apply the configured minimum sample count on top of the loader's floor.
  std::vector<rdmdl::PairSample> pairs;
  pairs.reserve(bench.pairs.size());
  for (auto& pair : bench.pairs) {
    if (pair.x.size() < opt.common.min_n) {
      bench.skipped.push_back(
          {pair.id, "fewer than " + std::to_string(opt.common.min_n) + " samples (" +
                        std::to_string(pair.x.size()) + ")"});
    } else {
      pairs.push_back(std::move(pair));
    }
  }
  if (pairs.empty()) {
    throw rdmdl::DatasetError(opt.dir + ": no pairs with at least " +
                              std::to_string(opt.common.min_n) + " samples");
  }

  const auto config = build_config(opt.common);
  const auto scored = score_all(pairs, config, opt.jobs);

  fs::create_directories(opt.out);
  const fs::path out_dir(opt.out);

  {
    std::ofstream out(out_dir / "scores.csv");
    out << kScoresHeader << '\n';
    for (const auto& sp : scored) write_score_row(out, sp);
  }
  {
    std::ofstream out(out_dir / "skipped.csv");
    out << "id,reason\n";
    for (const auto& skip : bench.skipped) {
      out << skip.id << ',' << quote_csv(skip.reason) << '\n';
    }
  }

  const auto report = rdmdl::evaluate(scored);
  {
    std::ofstream out(out_dir / "curve_audrc.csv");
    rdmdl::write_curve_csv(out, report.curve);
  }

  double total_weight = 0.0;
  for (const auto& pair : pairs) total_weight += pair.weight;

  ordered_json manifest;
  manifest["tool"] = {{"name", "rdmdl"}, {"version", kVersion}};
  manifest["dataset"] = {{"name", bench.name},
                         {"hash", hash_hex(bench.source_hash)},
                         {"pairs", scored.size()},
                         {"skipped", bench.skipped.size()},
                         {"total_weight", total_weight}};
  manifest["config"] = config_echo(opt);
  manifest["metrics"] = metrics_section(scored);

  if (opt.unique_threshold) {
    rdmdl::BenchmarkSet retained;
    retained.name = bench.name;
    retained.pairs = pairs;
    const auto subset = rdmdl::subset_by_uniqueness(retained, *opt.unique_threshold);

    std::vector<rdmdl::ScoredPair> subset_scored;
    subset_scored.reserve(subset.pairs.size());
    for (const auto& sp : scored) {
      for (const auto& pair : subset.pairs) {
        if (pair.id == sp.id) {
          subset_scored.push_back(sp);
          break;
        }
      }
    }
    ordered_json section;
    section["unique_threshold"] = *opt.unique_threshold;
    section["pairs"] = subset_scored.size();
    section["retained_weight_fraction"] =
        total_weight > 0.0 ? subset.total_weight() / total_weight : 0.0;
    if (!subset_scored.empty()) {
      section["metrics"] = metrics_section(subset_scored);
    } else {
      section["metrics"] = nullptr;
    }
    manifest["subset"] = std::move(section);
  }

  {
    std::ofstream out(out_dir / "metrics.json");
    out << manifest.dump(2) << '\n';
  }

  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cout << "scored " << scored.size() << " pairs (" << bench.skipped.size()
            << " skipped) in " << rdmdl::format_sig9(elapsed) << "s\n";
  std::cout << "accuracy=" << rdmdl::format_sig9(report.accuracy);
  if (report.auroc) std::cout << " auroc=" << rdmdl::format_sig9(*report.auroc);
  std::cout << " audrc=" << rdmdl::format_sig9(report.audrc) << '\n';
  std::cout << "wrote " << (out_dir / "scores.csv").string() << ", "
            << (out_dir / "metrics.json").string() << ", "
            << (out_dir / "curve_audrc.csv").string() << ", "
            << (out_dir / "skipped.csv").string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string kind;
  std::string out;
  std::size_t n = 500;
  std::uint64_t seed = 0;
  double noise = 0.05;
};

int run_generate(const GenerateOptions& opt) {
  rdmdl::AnmMechanism mechanism;
  try {
    mechanism = rdmdl::anm_mechanism_from_name(opt.kind);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opt.n < rdmdl::kMinSamples) {
    std::cerr << "error: --n must be >= " << rdmdl::kMinSamples << '\n';
    return kExitUsage;
  }
  if (!(opt.noise > 0.0)) {
    std::cerr << "error: --noise must be > 0\n";
    return kExitUsage;
  }

  const auto pair = rdmdl::generate_anm_pair(mechanism, opt.noise, opt.n, opt.seed);
  {
    std::ofstream out(opt.out);
    if (!out) {
      std::cerr << "error: cannot write " << opt.out << '\n';
      return kExitDataset;
    }
    for (std::size_t i = 0; i < pair.x.size(); ++i) {
      out << format_full(pair.x[i]) << ' ' << format_full(pair.y[i]) << '\n';
    }
  }
  {
    std::ofstream meta(opt.out + ".meta");
    meta << pair.id << " 1 1 2 2 1\n";
  }
  std::cout << "wrote " << pair.x.size() << " samples to " << opt.out << '\n';
  return kExitOk;
}

void add_common_options(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--rule", common.rule, "Distortion rule: fd, sturges, scott, rice")
      ->envname("RDMDL_RULE")
      ->check(CLI::IsMember({"fd", "sturges", "scott", "rice"}));
  cmd->add_option("--scaling", common.scaling, "Scaling mode: minmax, zscore")
      ->envname("RDMDL_SCALING")
      ->check(CLI::IsMember({"minmax", "zscore"}));
  cmd->add_option("--min-n", common.min_n, "Minimum samples per pair")
      ->envname("RDMDL_MIN_N")
      ->check(CLI::Range(rdmdl::kMinSamples, std::numeric_limits<std::size_t>::max()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RDMDL bivariate causal direction scoring"};
  app.set_version_flag("--version", std::string("rdmdl ") + kVersion);
  app.require_subcommand(1);

  ScoreOptions score_opt;
  auto* score_cmd = app.add_subcommand("score", "Score a single pair file");
  score_cmd->add_option("file", score_opt.file, "Whitespace-separated sample file")
      ->required();
  add_common_options(score_cmd, score_opt.common);
  score_cmd->add_option("--x-col", score_opt.x_col, "1-based x column")
      ->envname("RDMDL_X_COL")
      ->check(CLI::PositiveNumber);
  score_cmd->add_option("--y-col", score_opt.y_col, "1-based y column")
      ->envname("RDMDL_Y_COL")
      ->check(CLI::PositiveNumber);
  score_cmd->add_option("--id", score_opt.id, "Pair id for the output row")
      ->envname("RDMDL_ID");

  BenchOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("bench", "Score a benchmark directory");
  bench_cmd->add_option("dir", bench_opt.dir, "Directory with pairmeta.txt")->required();
  bench_cmd->add_option("--out", bench_opt.out, "Output directory")
      ->envname("RDMDL_OUT");
  add_common_options(bench_cmd, bench_opt.common);
  double unique_threshold = 0.0;
  auto* unique_flag =
      bench_cmd
          ->add_option("--unique-threshold", unique_threshold,
                       "Also evaluate the subset with unique(v)/N >= threshold")
          ->envname("RDMDL_UNIQUE_THRESHOLD")
          ->check(CLI::Range(1e-9, 1.0));
  bench_cmd->add_option("--jobs", bench_opt.jobs, "Worker threads for scoring")
      ->envname("RDMDL_JOBS")
      ->check(CLI::PositiveNumber);

  GenerateOptions gen_opt;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic pair file");
  gen_cmd->add_option("kind", gen_opt.kind,
                      "Mechanism: quadratic, cubic, exp, log-shifted")
      ->required();
  gen_cmd->add_option("--out", gen_opt.out, "Output pair file")->required();
  gen_cmd->add_option("--n", gen_opt.n, "Sample count")->envname("RDMDL_N");
  gen_cmd->add_option("--seed", gen_opt.seed, "Generator seed")->envname("RDMDL_SEED");
  gen_cmd->add_option("--noise", gen_opt.noise, "Noise standard deviation")
      ->envname("RDMDL_NOISE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (score_cmd->parsed()) return run_score(score_opt);
    if (bench_cmd->parsed()) {
      if (unique_flag->count() > 0) bench_opt.unique_threshold = unique_threshold;
      return run_bench(bench_opt);
    }
    if (gen_cmd->parsed()) return run_generate(gen_opt);
  } catch (const rdmdl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return score_cmd->parsed() ? kExitUsage : kExitDataset;
  } catch (const rdmdl::DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataset;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataset;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
