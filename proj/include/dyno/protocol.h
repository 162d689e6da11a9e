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
// In-process orchestration of the three parties:
//
//   authority    owns the master secret, the per-client budget ledger, and
//                the study registry; registers data holders, charges
//                budgets, calibrates noise, issues decryption keys
//   data holder  expands a record into monomials, encodes, encrypts, and
//                submits one ciphertext per study
//   analyst      collects ciphertexts, sends per-iteration coefficient
//                vectors with a budget bid, decrypts key by key, and
//                updates the model
//
// Messages are explicit structs exchanged by function call; a transcript
// records one line per message with direction, type, and byte counts, plus
// one line per iteration with the charged budget and calibrated noise, so
// a run can be audited (and its budget accounting replayed) from text
// alone. No network layer.

#ifndef DYNO_PROTOCOL_H_
#define DYNO_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyno/dp.h"
#include "dyno/logreg.h"
#include "dyno/mcfe.h"
#include "dyno/serialize.h"

namespace dyno {

class Transcript {
 public:
  void message(const std::string& direction, const std::string& type,
               std::size_t payload_bytes, std::size_t header_bytes);
  void note(const std::string& line);

  const std::vector<std::string>& lines() const { return lines_; }
  std::string text() const;
  void write_file(const std::string& path) const;

  std::size_t total_bytes(const std::string& direction) const;

 private:
  std::vector<std::string> lines_;
};

struct StudySchema {
  std::vector<std::string> feature_names;
  std::string normalization_note;
};

struct Study {
  Label label;
  std::size_t m = 0;              // raw feature count
  std::size_t expanded_size = 0;  // expansion_size(m)
  StudySchema schema;
  std::vector<std::uint64_t> participants;  // ascending, filled by submission
};

// The analyst's request opening iteration t. theta rides along because the
// authority calibrates noise to the sensitivity bound at the current model;
// the model is the analyst's own output and not private.
struct FunctionRequest {
  Label study_label;
  std::size_t t = 0;
  PrivacyParams bid;
  std::vector<std::vector<i128>> scaled_coefficients;  // m+1 vectors of m~
  std::vector<double> theta;
  double alpha = 0.1;
};

struct ProtocolConfig {
  int bits = 64;
  std::uint64_t scale_x = 1000000;
  std::uint64_t scale_y = 1000000;
  PrivacyParams client_budget{1.0, 1e-5};
  double alpha = 0.1;
  double ratio = kDefaultScheduleRatio;
  std::uint64_t seed = 1;
  bool noise_off = false;  // embed PointMass(0) instead of Gaussian noise
  std::uint64_t n_max = std::uint64_t{1} << 34;
};

class Authority {
 public:
  Authority(std::size_t m_max, const ProtocolConfig& config);

  const ProtocolConfig& config() const { return config_; }
  const MasterSecret& master_secret() const { return msk_; }
  const BudgetLedger& ledger() const { return ledger_; }
  BudgetLedger& mutable_ledger() { return ledger_; }
  Rng& rng() { return rng_; }

  // Registers the holder on first contact: encryption key plus a fresh
  // budget entry. Returns the (existing) key afterwards.
  const PrfKey& ensure_registered(std::uint64_t holder);

  Study& open_study(const StudySchema& schema, std::size_t m);
  Study& study(const Label& label);

 private:
  ProtocolConfig config_;
  MasterSecret msk_;
  BudgetLedger ledger_;
  std::map<std::string, Study> studies_;
  std::uint64_t next_label_ = 0;
  Rng rng_;
};

class Analyst {
 public:
  Analyst(std::size_t m, double alpha);

  const std::vector<double>& theta() const { return model_.theta; }
  const ModelParams& model() const { return model_; }

  void store_ciphertext(const Ciphertext& ct);
  bool has_ciphertext(std::uint64_t slot, const Label& label) const;
  // Ciphertexts of one study in ascending slot order.
  std::vector<Ciphertext> ciphertexts(const Label& label) const;

  void apply_update(std::size_t j, double decoded);

 private:
  ModelParams model_;
  std::map<std::pair<std::uint64_t, std::string>, Ciphertext> store_;
};

// Expands, encodes at scale_x, encrypts, and delivers one ciphertext;
// registers the holder on first contact. A second submission for the same
// (holder, study) raises ResubmissionError.
void submit_data(Authority& authority, Analyst& analyst, Study& study,
                 std::uint64_t holder, const Record& record,
                 Transcript& transcript);

struct IterationOutcome {
  bool ok = false;
  std::vector<std::uint64_t> depleted;  // non-empty on refusal
  double sigma = 0.0;
};

// One training round: coefficient upload, all-or-nothing budget charge,
// noise calibration at the current sensitivity bound, m+1 keys with
// independent noise coordinates, decryption, model update. On refusal the
// model is untouched and the depleted clients are surfaced.
IterationOutcome train_iteration(Authority& authority, Analyst& analyst,
                                 Study& study, std::size_t t,
                                 const Schedule& schedule,
                                 Transcript& transcript);

enum class RunStatus { kCompleted, kRefused };

struct TrainingResult {
  std::vector<double> theta;
  Transcript transcript;
  RunStatus status = RunStatus::kCompleted;
  std::size_t iterations_run = 0;
  std::vector<std::uint64_t> depleted;
  std::vector<double> sigmas;  // one per completed iteration
};

// allocate_schedule + T train_iterations, stopping early on the first
// refusal. Deterministic given the authority's seed and the submission
// order. T = 0 returns the initial model with an empty transcript.
TrainingResult run_training(Authority& authority, Analyst& analyst,
                            Study& study, std::size_t T,
                            const PrivacyParams& p_max);

// Parses a transcript and re-runs every client's budget subtraction chain
// exactly as the ledger performed it; throws Error if any remainder dips
// below zero or a refused iteration left a trace. Returns the number of
// charged iterations.
std::size_t replay_budget_audit(const Transcript& transcript,
                                const PrivacyParams& p_max);

}  // namespace dyno

#endif  // DYNO_PROTOCOL_H_
