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

#include "dyno/protocol.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dyno/errors.h"
#include "dyno/noise.h"

namespace dyno {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join_u64(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

// Parses "key=value" tokens of a transcript line into a map.
std::map<std::string, std::string> parse_fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream tokens(line);
  std::string token;
  tokens >> token;  // line kind
  while (tokens >> token) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos) continue;
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

i128 round_scaled(double value, std::uint64_t scale) {
  const double scaled = std::round(value * static_cast<double>(scale));
  if (std::abs(scaled) >= ldexp(1.0, 126)) {
    throw RangeError("scaled coefficient overflows 128-bit range");
  }
  return static_cast<i128>(scaled);
}

}  // namespace

void Transcript::message(const std::string& direction,
                         const std::string& type, std::size_t payload_bytes,
                         std::size_t header_bytes) {
  lines_.push_back("msg dir=" + direction + " type=" + type +
                   " payload=" + std::to_string(payload_bytes) +
                   " header=" + std::to_string(header_bytes));
}

void Transcript::note(const std::string& line) { lines_.push_back(line); }

std::string Transcript::text() const {
  std::string out;
  for (const std::string& line : lines_) {
    out += line;
    out += '\n';
  }
  return out;
}

void Transcript::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write transcript: " + path);
  out << text();
}

std::size_t Transcript::total_bytes(const std::string& direction) const {
  std::size_t total = 0;
  for (const std::string& line : lines_) {
    if (line.rfind("msg ", 0) != 0) continue;
    const auto fields = parse_fields(line);
    if (fields.at("dir") != direction) continue;
    total += std::stoull(fields.at("payload")) +
             std::stoull(fields.at("header"));
  }
  return total;
}

Authority::Authority(std::size_t m_max, const ProtocolConfig& config)
    : config_(config),
      msk_(SchemeParams(m_max, config.n_max, Modulus(config.bits))),
      rng_(config.seed) {
  validate_privacy_params(config.client_budget);
  const Modulus& mod = msk_.params().modulus;
  if (static_cast<u128>(config.scale_x) * 2 >= mod.q() ||
      static_cast<u128>(config.scale_y) * 2 >= mod.q()) {
    throw ConfigError("scales violate 2s < q");
  }
}

const PrfKey& Authority::ensure_registered(std::uint64_t holder) {
  if (!msk_.registered(holder)) {
    ekeygen(msk_, holder, rng_);
    // Joining the system exchanges the client's budget for a key.
    ledger_.register_client(holder, config_.client_budget);
  }
  return msk_.key(holder);
}

Study& Authority::open_study(const StudySchema& schema, std::size_t m) {
  const std::size_t expanded = expansion_size(m);
  if (expanded > msk_.params().m_max) {
    throw CapacityError("study needs " + std::to_string(expanded) +
                        " slots, scheme caps at " +
                        std::to_string(msk_.params().m_max));
  }
  Label label(std::to_string(next_label_++));
  Study study;
  study.label = label;
  study.m = m;
  study.expanded_size = expanded;
  study.schema = schema;
  const auto [it, fresh] = studies_.emplace(label.bytes(), std::move(study));
  if (!fresh) throw Error("label allocator reissued a label");
  return it->second;
}

Study& Authority::study(const Label& label) {
  const auto it = studies_.find(label.bytes());
  if (it == studies_.end()) {
    throw DomainError("no study under label '" + label.bytes() + "'");
  }
  return it->second;
}

Analyst::Analyst(std::size_t m, double alpha) {
  model_.theta.assign(m + 1, 0.0);
  model_.alpha = alpha;
}

void Analyst::store_ciphertext(const Ciphertext& ct) {
  const auto key = std::make_pair(ct.slot, ct.label.bytes());
  if (store_.find(key) != store_.end()) {
    throw ResubmissionError("ciphertext for slot " + std::to_string(ct.slot) +
                            " under this label already stored");
  }
  store_.emplace(key, ct);
}

bool Analyst::has_ciphertext(std::uint64_t slot, const Label& label) const {
  return store_.count(std::make_pair(slot, label.bytes())) != 0;
}

std::vector<Ciphertext> Analyst::ciphertexts(const Label& label) const {
  std::vector<Ciphertext> out;
  for (const auto& [key, ct] : store_) {
    if (key.second == label.bytes()) out.push_back(ct);
  }
  return out;  // map order makes this ascending by slot
}

void Analyst::apply_update(std::size_t j, double decoded) {
  if (j >= model_.theta.size()) throw DomainError("update index exceeds m");
  model_.theta[j] += decoded;
}

void submit_data(Authority& authority, Analyst& analyst, Study& study,
                 std::uint64_t holder, const Record& record,
                 Transcript& transcript) {
  validate_record(record, study.m);
  const auto at = std::lower_bound(study.participants.begin(),
                                   study.participants.end(), holder);
  if (at != study.participants.end() && *at == holder) {
    throw ResubmissionError("holder " + std::to_string(holder) +
                            " already submitted to this study");
  }

  const PrfKey& key = authority.ensure_registered(holder);
  const SchemeParams& params = authority.master_secret().params();
  const FixedPointCodec codec(authority.config().scale_x, params.modulus);

  const std::vector<double> expanded = monomial_expand(record, study.m);
  std::vector<u128> elems(expanded.size());
  for (std::size_t i = 0; i < expanded.size(); ++i) {
    elems[i] = encode_fixed(expanded[i], codec);
  }
  const Ciphertext ct = encrypt(
      key, RingVector(std::move(elems), params.modulus), study.label, holder,
      params);

  transcript.message("holder->analyst", "ciphertext",
                     ciphertext_payload_bytes(ct),
                     ciphertext_header_bytes(ct));
  analyst.store_ciphertext(ct);
  study.participants.insert(at, holder);
}

IterationOutcome train_iteration(Authority& authority, Analyst& analyst,
                                 Study& study, std::size_t t,
                                 const Schedule& schedule,
                                 Transcript& transcript) {
  if (t >= schedule.steps.size()) {
    throw DomainError("iteration index beyond schedule");
  }
  const std::size_t n = study.participants.size();
  if (n == 0) throw DomainError("study has no participants");

  const ProtocolConfig& config = authority.config();
  const std::size_t m = study.m;
  const std::size_t expanded = study.expanded_size;
  const Modulus& mod = authority.master_secret().params().modulus;
  const PrivacyParams& bid = schedule.steps[t];

  // Analyst: fresh coefficient vectors for the current model.
  FunctionRequest request;
  request.study_label = study.label;
  request.t = t;
  request.bid = bid;
  request.theta = analyst.theta();
  request.alpha = analyst.model().alpha;
  bool coefficient_bound_exceeded = false;
  const std::size_t slot_bytes = coefficient_slot_bytes(config.scale_y);
  std::size_t fn_payload = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    const std::vector<double> coeffs =
        update_coefficients(analyst.model(), j, n);
    std::vector<i128> scaled(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (std::abs(coeffs[k]) > 5.0) coefficient_bound_exceeded = true;
      scaled[k] = round_scaled(coeffs[k], config.scale_y);
    }
    // The upload is produced for real: a model driven outside the wire
    // slot range (a diverged run) fails here rather than shipping
    // unrepresentable coefficients.
    try {
      fn_payload += serialize_coefficients(scaled, slot_bytes).size();
    } catch (const RangeError&) {
      transcript.note("warn t=" + std::to_string(t) +
                      " training diverged: coefficient outside the wire "
                      "slot range");
      throw;
    }
    request.scaled_coefficients.push_back(std::move(scaled));
  }
  if (coefficient_bound_exceeded) {
    transcript.note("warn t=" + std::to_string(t) +
                    " coefficient magnitude exceeded 5; wire slots may "
                    "overflow");
  }
  // Label, vector count, vector length, slot width, bid, iteration index,
  // alpha, and the m+1 model coordinates.
  const std::size_t fn_header = 2 + study.label.bytes().size() + 4 + 4 + 1 +
                                8 + 8 + 8 + 8 + 8 * (m + 1);
  transcript.message("analyst->authority", "function_request", fn_payload,
                     fn_header);

  // Authority: all-or-nothing budget charge before any key material moves.
  const auto charge =
      authority.mutable_ledger().charge(study.participants, bid);
  if (!charge.ok) {
    transcript.note("refusal label=" + study.label.bytes() +
                    " t=" + std::to_string(t) +
                    " depleted=" + join_u64(charge.depleted));
    IterationOutcome outcome;
    outcome.depleted = charge.depleted;
    return outcome;
  }

  double sigma = 0.0;
  if (!config.noise_off) {
    const double sens = sensitivity_bound(request.theta, request.alpha, n, m);
    sigma = gm_calibrate(bid, sens);
  }

  // Signed decryption bound: |S| * m~ * (s_x X) * (5 s_y) plus a 6-sigma
  // noise allowance must stay below q/2 or decrypted sums may wrap.
  const double scale_product = static_cast<double>(config.scale_x) *
                               static_cast<double>(config.scale_y);
  const double reach =
      static_cast<double>(n) * static_cast<double>(expanded) *
          static_cast<double>(config.scale_x) * 5.0 *
          static_cast<double>(config.scale_y) +
      6.0 * sigma * scale_product;
  if (reach >= ldexp(1.0, mod.bits() - 1)) {
    transcript.note("warn t=" + std::to_string(t) +
                    " correctness bound at risk: payload+noise reach " +
                    g17(reach) + " vs q/2");
  }

  transcript.note("iter label=" + study.label.bytes() +
                  " t=" + std::to_string(t) + " eps=" + g17(bid.epsilon) +
                  " delta=" + g17(bid.delta) + " sigma=" + g17(sigma));

  // One independent noise coordinate per model coordinate, embedded in that
  // coordinate's key.
  const NoiseSpec noise =
      config.noise_off
          ? NoiseSpec(PointMass{0})
          : NoiseSpec(RoundedGaussian{
                sigma, static_cast<u128>(config.scale_x) * config.scale_y});

  const std::vector<Ciphertext> cts = analyst.ciphertexts(study.label);
  std::size_t keys_payload = 0;
  std::size_t keys_header = 0;
  std::vector<double> updates(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    std::vector<u128> elems(expanded);
    for (std::size_t k = 0; k < expanded; ++k) {
      elems[k] = lift_signed(request.scaled_coefficients[j][k], mod);
    }
    const RingVector y_j(std::move(elems), mod);
    const std::vector<RingVector> per_slot(n, y_j);

    const DecryptionKey dk =
        keygen(authority.master_secret(), study.participants, per_slot,
               study.label, noise, authority.rng());
    keys_payload += decryption_key_payload_bytes(dk);
    keys_header += decryption_key_header_bytes(dk);

    const i128 raw = decrypt(dk, cts);
    updates[j] = static_cast<double>(raw) / scale_product;
  }
  transcript.message("authority->analyst", "decryption_keys", keys_payload,
                     keys_header);

  for (std::size_t j = 0; j <= m; ++j) {
    analyst.apply_update(j, updates[j]);
  }

  IterationOutcome outcome;
  outcome.ok = true;
  outcome.sigma = sigma;
  return outcome;
}

TrainingResult run_training(Authority& authority, Analyst& analyst,
                            Study& study, std::size_t T,
                            const PrivacyParams& p_max) {
  TrainingResult result;
  if (T == 0) {
    result.theta = analyst.theta();
    return result;
  }
  const Schedule schedule =
      allocate_schedule(p_max, T, authority.config().ratio);

  result.transcript.note(
      "study label=" + study.label.bytes() + " m=" + std::to_string(study.m) +
      " expanded=" + std::to_string(study.expanded_size) +
      " participants=" + join_u64(study.participants));
  result.transcript.note("budget label=" + study.label.bytes() +
                         " eps_max=" + g17(p_max.epsilon) +
                         " delta_max=" + g17(p_max.delta));

  for (std::size_t t = 0; t < T; ++t) {
    const IterationOutcome outcome = train_iteration(
        authority, analyst, study, t, schedule, result.transcript);
    if (!outcome.ok) {
      result.status = RunStatus::kRefused;
      result.depleted = outcome.depleted;
      break;
    }
    result.sigmas.push_back(outcome.sigma);
    ++result.iterations_run;
  }
  result.theta = analyst.theta();
  return result;
}

std::size_t replay_budget_audit(const Transcript& transcript,
                                const PrivacyParams& p_max) {
  struct Chain {
    double eps_left;
    double delta_left;
    bool refused = false;
  };
  std::map<std::string, Chain> chains;
  std::size_t charged = 0;

  for (const std::string& line : transcript.lines()) {
    if (line.rfind("study ", 0) == 0) {
      const auto fields = parse_fields(line);
      chains.emplace(fields.at("label"),
                     Chain{p_max.epsilon, p_max.delta, false});
    } else if (line.rfind("iter ", 0) == 0) {
      const auto fields = parse_fields(line);
      Chain& chain = chains.at(fields.at("label"));
      if (chain.refused) {
        throw Error("audit: charge recorded after a refusal");
      }
      // Same subtraction order as the ledger, so the comparison is exact,
      // with no float-reassociation slack.
      chain.eps_left -= std::stod(fields.at("eps"));
      chain.delta_left -= std::stod(fields.at("delta"));
      if (chain.eps_left < 0.0 || chain.delta_left < 0.0) {
        throw Error("audit: client budget overdrawn at " + line);
      }
      ++charged;
    } else if (line.rfind("refusal ", 0) == 0) {
      const auto fields = parse_fields(line);
      chains.at(fields.at("label")).refused = true;
    }
  }
  return charged;
}

}  // namespace dyno
