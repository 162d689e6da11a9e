// Copyright 2026 The DyNo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end. Subcommands:
//
//   train   end-to-end encrypted training run; writes model.txt,
//           transcript.log, report.txt into --out
//   bench   scheme micro-benchmarks over random data; writes bench.csv
//   eval    accuracy of a saved model on a dataset
//
// Exit codes: 0 success, 1 configuration or data error, 2 budget refusal.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dyno/config.h"
#include "dyno/errors.h"
#include "dyno/logreg.h"
#include "dyno/nmife_ot.h"
#include "dyno/protocol.h"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct FlagOverrides {
  std::string config_path;
  std::string dataset;
  std::string out_dir;
  double eps = -1.0;
  double delta = -1.0;
  long iters = -1;
  double alpha = -1.0;
  int bits = -1;
  long scale = -1;
  long seed = -1;
  std::string noise;
};

dyno::RunConfig assemble_config(const FlagOverrides& flags) {
  dyno::RunConfig config;
  if (!flags.config_path.empty()) {
    config = dyno::load_config_file(flags.config_path);
  }
  if (!flags.dataset.empty()) config.dataset_path = flags.dataset;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.eps >= 0.0) config.eps_max = flags.eps;
  if (flags.delta >= 0.0) config.delta_max = flags.delta;
  if (flags.iters >= 0) config.iters = static_cast<std::size_t>(flags.iters);
  if (flags.alpha >= 0.0) config.alpha = flags.alpha;
  if (flags.bits > 0) config.bits = flags.bits;
  if (flags.scale > 0) {
    config.scale_x = static_cast<std::uint64_t>(flags.scale);
    config.scale_y = config.scale_x;
  }
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (!flags.noise.empty()) {
    dyno::apply_config_line(config, "noise", flags.noise);
  }
  return config;
}

void write_model(const std::string& path, const std::vector<double>& theta) {
  std::ofstream out(path);
  if (!out) throw dyno::ConfigError("cannot write model file: " + path);
  char line[40];
  for (const double t : theta) {
    std::snprintf(line, sizeof(line), "%.17g\n", t);
    out << line;
  }
}

std::vector<double> read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dyno::ConfigError("cannot read model file: " + path);
  std::vector<double> theta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      theta.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw dyno::ParseError("model file has non-numeric line: " + line);
    }
  }
  if (theta.empty()) throw dyno::ParseError("model file is empty");
  return theta;
}

int cmd_train(const FlagOverrides& flags) {
  const auto start = Clock::now();
  const dyno::RunConfig config = assemble_config(flags);
  if (config.dataset_path.empty()) {
    throw dyno::ConfigError("train needs --dataset or a config entry");
  }
  const dyno::Dataset data = dyno::load_csv(config.dataset_path);
  dyno::validate_config(config, data.size(), data.m);

  const std::size_t expanded = dyno::expansion_size(data.m);
  dyno::Authority authority(expanded,
                            dyno::to_protocol_config(config, data.size()));
  dyno::Analyst analyst(data.m, config.alpha);
  dyno::Transcript transcript;

  dyno::StudySchema schema;
  schema.normalization_note = "features clamped to [0,1] on load";
  dyno::Study& study = authority.open_study(schema, data.m);
  for (std::size_t i = 0; i < data.size(); ++i) {
    dyno::submit_data(authority, analyst, study, i + 1, data.records[i],
                      transcript);
  }

  const dyno::PrivacyParams budget{
      config.eps_max, dyno::effective_delta(config, data.size())};
  dyno::TrainingResult result = dyno::run_training(
      authority, analyst, study, config.iters, budget);

  std::filesystem::create_directories(config.out_dir);
  const std::string model_path = config.out_dir + "/model.txt";
  write_model(model_path, result.theta);
  for (const std::string& line : result.transcript.lines()) {
    transcript.note(line);
  }
  transcript.write_file(config.out_dir + "/transcript.log");

  const double accuracy = dyno::predict_accuracy(result.theta, data);
  const double total_ms = ms_since(start);

  std::ofstream report(config.out_dir + "/report.txt");
  if (!report) throw dyno::ConfigError("cannot write report.txt");
  report << "dataset " << config.dataset_path << "\n"
         << "records " << data.size() << "\n"
         << "features " << data.m << "\n"
         << "expanded " << expanded << "\n"
         << "iterations_requested " << config.iters << "\n"
         << "iterations_run " << result.iterations_run << "\n"
         << "status "
         << (result.status == dyno::RunStatus::kCompleted ? "completed"
                                                          : "refused")
         << "\n"
         << "training_accuracy " << accuracy << "\n"
         << "analyst_to_authority_bytes "
         << result.transcript.total_bytes("analyst->authority") << "\n"
         << "authority_to_analyst_bytes "
         << result.transcript.total_bytes("authority->analyst") << "\n"
         << "total_runtime_ms " << total_ms << "\n";

  std::cout << "status: "
            << (result.status == dyno::RunStatus::kCompleted ? "completed"
                                                             : "refused")
            << "\niterations: " << result.iterations_run
            << "\ntraining accuracy: " << accuracy
            << "\nruntime: " << total_ms << " ms\nmodel: " << model_path
            << "\n";

  if (result.status == dyno::RunStatus::kRefused) {
    std::cout << "depleted clients:";
    for (const std::uint64_t c : result.depleted) std::cout << " " << c;
    std::cout << "\n";
    return 2;
  }
  return 0;
}

int cmd_bench(const FlagOverrides& flags, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0 || n * m > 10000000) {
    throw dyno::ConfigError("bench needs n, m >= 1 with n*m <= 1e7");
  }
  const dyno::RunConfig config = assemble_config(flags);
  dyno::validate_config(config, 0, 0);
  const dyno::Modulus mod(config.bits);
  dyno::Rng rng(config.seed);

  // Random inputs over the published measurement ranges: data words are
  // 16-bit, coefficient words 7-bit.
  const auto setup_start = Clock::now();
  dyno::MasterSecret msk =
      dyno::setup(dyno::SchemeParams(m, n, mod));
  std::vector<dyno::PrfKey> keys;
  keys.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    keys.push_back(dyno::ekeygen(msk, i, rng));
  }
  const double setup_ms = ms_since(setup_start);

  std::vector<dyno::RingVector> plaintexts;
  plaintexts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<dyno::u128> x(m);
    for (auto& v : x) v = rng.next_u64() & 0xffff;
    plaintexts.emplace_back(std::move(x), mod);
  }
  const dyno::Label label("bench");

  const auto enc_start = Clock::now();
  std::vector<dyno::Ciphertext> cts;
  cts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cts.push_back(dyno::encrypt(keys[i], plaintexts[i], label, i + 1,
                                msk.params()));
  }
  const double enc_ms = ms_since(enc_start);

  std::vector<std::uint64_t> subset(n);
  std::vector<dyno::RingVector> y;
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    subset[i] = i + 1;
    std::vector<dyno::u128> y_i(m);
    for (auto& v : y_i) v = rng.next_u64() & 0x7f;
    y.emplace_back(std::move(y_i), mod);
  }

  const auto keygen_start = Clock::now();
  const dyno::DecryptionKey dk =
      dyno::keygen(msk, subset, y, label, dyno::PointMass{0}, rng);
  const double keygen_ms = ms_since(keygen_start);

  const auto dec_start = Clock::now();
  const dyno::i128 value = dyno::decrypt(dk, cts);
  const double dec_ms = ms_since(dec_start);

  char row[160];
  std::string csv = "phase,n,m,millis\n";
  const auto add = [&](const char* phase, double ms) {
    std::snprintf(row, sizeof(row), "%s,%zu,%zu,%.3f\n", phase, n, m, ms);
    csv += row;
  };
  add("setup", setup_ms);
  add("enc", enc_ms);
  add("keygen", keygen_ms);
  add("dec", dec_ms);

  std::filesystem::create_directories(config.out_dir);
  std::ofstream out(config.out_dir + "/bench.csv");
  if (!out) throw dyno::ConfigError("cannot write bench.csv");
  out << csv;
  std::cout << csv << "decrypted check value: "
            << dyno::i128_to_string(value) << "\n";
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& dataset_path) {
  const std::vector<double> theta = read_model(model_path);
  const dyno::Dataset data = dyno::load_csv(dataset_path);
  if (theta.size() != data.m + 1) {
    throw dyno::ConfigError(
        "model has " + std::to_string(theta.size()) + " coordinates but the "
        "dataset needs " + std::to_string(data.m + 1));
  }
  char line[64];
  std::snprintf(line, sizeof(line), "accuracy %.6f\n",
                dyno::predict_accuracy(theta, data));
  std::cout << line;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encrypted differentially-private logistic regression"};
  app.require_subcommand(1);
  // Let global flags appear after the subcommand name.
  app.fallthrough();

  FlagOverrides flags;
  app.add_option("--config", flags.config_path, "key=value config file");
  app.add_option("--dataset", flags.dataset, "dataset CSV path");
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--eps", flags.eps, "total epsilon budget per client");
  app.add_option("--delta", flags.delta, "total delta budget per client");
  app.add_option("--iters", flags.iters, "training iterations");
  app.add_option("--alpha", flags.alpha, "learning rate");
  app.add_option("--bits", flags.bits, "modulus bits (q = 2^bits)");
  app.add_option("--scale", flags.scale, "fixed-point scale for data and "
                                         "coefficients");
  app.add_option("--seed", flags.seed, "deterministic run seed");
  app.add_option("--noise", flags.noise, "on|off (off embeds zero noise)");

  auto* train = app.add_subcommand("train", "run encrypted training");
  auto* bench = app.add_subcommand("bench", "micro-benchmark the scheme");
  std::size_t bench_n = 100;
  std::size_t bench_m = 100;
  bench->add_option("-n", bench_n, "client count");
  bench->add_option("-m", bench_m, "vector length per client");
  auto* eval = app.add_subcommand("eval", "evaluate a saved model");
  std::string eval_model;
  std::string eval_dataset;
  eval->add_option("--model", eval_model, "model.txt path")->required();
  eval->add_option("--eval-dataset", eval_dataset, "dataset CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(flags);
    if (bench->parsed()) return cmd_bench(flags, bench_n, bench_m);
    if (eval->parsed()) {
      const std::string data_path =
          !eval_dataset.empty() ? eval_dataset : flags.dataset;
      if (data_path.empty()) {
        throw dyno::ConfigError("eval needs --eval-dataset or --dataset");
      }
      return cmd_eval(eval_model, data_path);
    }
  } catch (const dyno::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
