// Copyright 2026 The qecw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// qecw — batch front door for the error-correction workbench.  Subcommand
// style, JSON/CSV output, one master seed for every random choice.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qecw/analytic.hpp"
#include "qecw/codes.hpp"
#include "qecw/correct.hpp"
#include "qecw/fttrack.hpp"
#include "qecw/montecarlo.hpp"
#include "qecw/noise.hpp"
#include "qecw/rng.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qecw;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Options shared across subcommands, filled by CLI flags first and then by
// the optional JSON config file (CLI wins; unknown config keys are errors).
// ---------------------------------------------------------------------------

struct Options {
  // code selection
  std::string code_name;
  std::string code_file;
  bool trust_d = false;
  // positional arguments
  std::string action;
  std::string formula;
  // noise selection
  std::string noise;
  std::optional<double> p;
  std::optional<double> epsilon;
  // run shape
  std::optional<uint64_t> trials;
  std::optional<uint64_t> seed;
  uint32_t workers = 1;
  bool hadamard_trick = false;
  std::string values;
  // analytic inputs
  std::optional<uint32_t> n_qubits;
  std::optional<uint32_t> t_weight;
  std::optional<double> p_threshold;
  std::optional<uint32_t> levels;
  std::string mode;
  // track inputs
  std::string circuit_file;
  std::string alphabet = "xyz";
  uint32_t max_faults = 2;
  uint64_t pair_budget = 200000;
  std::optional<uint32_t> budget;
  // output
  std::string format = "json";
  std::string out;
  std::string config_path;
};

double as_number(const json &v, const std::string &key) {
  if (!v.is_number())
    throw std::invalid_argument("config: key '" + key + "' must be a number");
  return v.get<double>();
}

uint64_t as_count(const json &v, const std::string &key) {
  double d = as_number(v, key);
  if (d < 0 || d != d || d > 1.8e19)
    throw std::invalid_argument("config: key '" + key +
                                "' must be a non-negative count");
  return static_cast<uint64_t>(d);
}

std::string as_string(const json &v, const std::string &key) {
  if (!v.is_string())
    throw std::invalid_argument("config: key '" + key + "' must be a string");
  return v.get<std::string>();
}

bool as_bool(const json &v, const std::string &key) {
  if (!v.is_boolean())
    throw std::invalid_argument("config: key '" + key + "' must be a boolean");
  return v.get<bool>();
}

// Maps config keys (long option names without dashes) onto the same slots
// the CLI flags fill, skipping any option the command line already set.
class ConfigKeys {
 public:
  void add(CLI::Option *opt, std::function<void(const json &)> apply) {
    slots_[opt->get_lnames().at(0)] = {opt, std::move(apply)};
  }

  void merge(const json &cfg) const {
    if (!cfg.is_object())
      throw std::invalid_argument("config: top level must be a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      auto found = slots_.find(it.key());
      if (found == slots_.end())
        throw std::invalid_argument("config: unknown key '" + it.key() + "'");
      if (found->second.opt->count() > 0) continue;  // flag overrides config
      found->second.apply(it.value());
    }
  }

 private:
  struct Slot {
    CLI::Option *opt;
    std::function<void(const json &)> apply;
  };
  std::map<std::string, Slot> slots_;
};

// ---------------------------------------------------------------------------
// Option registration helpers (one per shared flag group)
// ---------------------------------------------------------------------------

void add_output_opts(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option("--format", o.format, "output format: json or csv"),
         [&o](const json &v) { o.format = as_string(v, "format"); });
  ck.add(s->add_option("--out", o.out, "write output to this file"),
         [&o](const json &v) { o.out = as_string(v, "out"); });
  s->add_option("--config", o.config_path,
                "JSON file supplying defaults for this command's flags");
}

void add_code_opts(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option("--code", o.code_name,
                       "built-in code name: repetition3 or steane"),
         [&o](const json &v) { o.code_name = as_string(v, "code"); });
  ck.add(s->add_option("--code-file", o.code_file, "stabilizer file path"),
         [&o](const json &v) { o.code_file = as_string(v, "code-file"); });
  ck.add(s->add_flag("--trust-d", o.trust_d,
                     "accept the distance field of the code file"),
         [&o](const json &v) { o.trust_d = as_bool(v, "trust-d"); });
}

void add_noise_opts(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option(
             "--noise", o.noise,
             "channel name (bitflip, phase, projective, depolarizing) or "
             "inline JSON like {\"channel\":\"bitflip\",\"p\":0.1}"),
         [&o](const json &v) { o.noise = as_string(v, "noise"); });
  ck.add(s->add_option("--p", o.p, "error probability"),
         [&o](const json &v) { o.p = as_number(v, "p"); });
  ck.add(s->add_option("--epsilon", o.epsilon, "channel strength"),
         [&o](const json &v) { o.epsilon = as_number(v, "epsilon"); });
}

void add_trials_opt(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option("--trials", o.trials, "number of trials"),
         [&o](const json &v) { o.trials = as_count(v, "trials"); });
}

void add_seed_opt(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option("--seed", o.seed,
                       "master seed (omitted: drawn from entropy and printed)"),
         [&o](const json &v) { o.seed = as_count(v, "seed"); });
}

void add_workers_opt(CLI::App *s, Options &o, ConfigKeys &ck) {
  ck.add(s->add_option("--workers", o.workers,
                       "Monte Carlo worker threads (results do not depend "
                       "on the count)"),
         [&o](const json &v) {
           o.workers = static_cast<uint32_t>(as_count(v, "workers"));
         });
}

// ---------------------------------------------------------------------------
// Resolution of codes, noise models, seeds, and output sinks
// ---------------------------------------------------------------------------

StabilizerCode resolve_code(const Options &o) {
  if (!o.code_file.empty()) {
    if (!o.code_name.empty())
      throw std::invalid_argument("give either --code or --code-file, not both");
    return load_stabilizer_file(o.code_file, o.trust_d);
  }
  if (o.code_name == "repetition3") return repetition_code();
  if (o.code_name == "steane") return steane_code();
  if (o.code_name.empty())
    throw std::invalid_argument(
        "a code is required: pass --code NAME or --code-file PATH");
  throw std::invalid_argument("unknown code '" + o.code_name +
                              "' (known: repetition3, steane)");
}

std::string code_label(const Options &o) {
  return o.code_file.empty() ? o.code_name : o.code_file;
}

NoiseModel bare_model(const std::string &name, double value) {
  if (name == "bitflip") return BitFlip{value};
  if (name == "phase") return PhaseRotation{value, false};
  if (name == "projective") return ProjectiveCoupling{value};
  if (name == "depolarizing") return Depolarizing{value};
  throw std::invalid_argument(
      "unknown channel '" + name +
      "' (known: bitflip, phase, projective, depolarizing; iid needs the "
      "inline JSON form)");
}

// Which flag parameterizes each named channel; rejects unknown names.
bool channel_takes_p(const std::string &name) {
  if (name == "bitflip" || name == "depolarizing") return true;
  if (name == "phase" || name == "projective") return false;
  throw std::invalid_argument(
      "unknown channel '" + name +
      "' (known: bitflip, phase, projective, depolarizing; iid needs the "
      "inline JSON form)");
}

NoiseModel model_from_json(const std::string &text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw std::invalid_argument("--noise: not a JSON object: " + text);
  if (!j.contains("channel"))
    throw std::invalid_argument("--noise: missing \"channel\" key");
  std::string channel = as_string(j["channel"], "channel");
  auto want = [&](std::initializer_list<const char *> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "channel") continue;
      bool known = false;
      for (const char *k : keys)
        if (it.key() == k) known = true;
      if (!known)
        throw std::invalid_argument("--noise: unknown key '" + it.key() +
                                    "' for channel " + channel);
    }
  };
  auto num = [&](const char *key, double fallback,
                 bool required = false) -> double {
    if (!j.contains(key)) {
      if (required)
        throw std::invalid_argument("--noise: channel " + channel +
                                    " needs \"" + key + "\"");
      return fallback;
    }
    return as_number(j[key], key);
  };
  if (channel == "bitflip") {
    want({"p"});
    return BitFlip{num("p", 0, true)};
  }
  if (channel == "phase") {
    want({"epsilon", "coherent_phi"});
    bool coherent =
        j.contains("coherent_phi") && as_bool(j["coherent_phi"], "coherent_phi");
    return PhaseRotation{num("epsilon", 0, true), coherent};
  }
  if (channel == "projective") {
    want({"epsilon"});
    return ProjectiveCoupling{num("epsilon", 0, true)};
  }
  if (channel == "depolarizing") {
    want({"p"});
    return Depolarizing{num("p", 0, true)};
  }
  if (channel == "iid") {
    want({"px", "py", "pz"});
    return IidPauli{num("px", 0), num("py", 0), num("pz", 0)};
  }
  throw std::invalid_argument("--noise: unknown channel '" + channel + "'");
}

NoiseModel resolve_noise(const Options &o) {
  if (o.noise.empty())
    throw std::invalid_argument("a channel is required: pass --noise");
  NoiseModel model = BitFlip{0};
  if (o.noise.front() == '{') {
    if (o.p || o.epsilon)
      throw std::invalid_argument(
          "--p/--epsilon conflict with inline JSON --noise; put the "
          "parameters inside the JSON");
    model = model_from_json(o.noise);
  } else {
    bool takes_p = channel_takes_p(o.noise);
    double value;
    if (takes_p) {
      if (!o.p) throw std::invalid_argument("--noise " + o.noise +
                                            " needs --p");
      if (o.epsilon)
        throw std::invalid_argument("--noise " + o.noise +
                                    " takes --p, not --epsilon");
      value = *o.p;
    } else {
      if (!o.epsilon)
        throw std::invalid_argument("--noise " + o.noise + " needs --epsilon");
      if (o.p)
        throw std::invalid_argument("--noise " + o.noise +
                                    " takes --epsilon, not --p");
      value = *o.epsilon;
    }
    model = bare_model(o.noise, value);
  }
  validate_model(model);
  return model;
}

json noise_json(const NoiseModel &model) {
  json j;
  j["channel"] = model_name(model);
  if (const auto *b = std::get_if<BitFlip>(&model)) {
    j["p"] = b->p;
  } else if (const auto *r = std::get_if<PhaseRotation>(&model)) {
    j["epsilon"] = r->epsilon;
    j["coherent_phi"] = r->coherent_phi;
  } else if (const auto *c = std::get_if<ProjectiveCoupling>(&model)) {
    j["epsilon"] = c->epsilon;
  } else if (const auto *d = std::get_if<Depolarizing>(&model)) {
    j["p"] = d->p;
  } else if (const auto *i = std::get_if<IidPauli>(&model)) {
    j["px"] = i->px;
    j["py"] = i->py;
    j["pz"] = i->pz;
  }
  return j;
}

double primary_param(const NoiseModel &model) {
  if (const auto *b = std::get_if<BitFlip>(&model)) return b->p;
  if (const auto *r = std::get_if<PhaseRotation>(&model)) return r->epsilon;
  if (const auto *c = std::get_if<ProjectiveCoupling>(&model))
    return c->epsilon;
  if (const auto *d = std::get_if<Depolarizing>(&model)) return d->p;
  const auto &i = std::get<IidPauli>(model);
  return i.px + i.py + i.pz;
}

uint64_t resolve_seed(const Options &o) {
  if (o.seed) return *o.seed;
  std::random_device rd;
  uint64_t s = (uint64_t(rd()) << 32) ^ rd();
  std::fprintf(stderr, "seed %llu\n", static_cast<unsigned long long>(s));
  return s;
}

uint64_t require_trials(const Options &o) {
  if (!o.trials || *o.trials == 0)
    throw std::invalid_argument("--trials (>= 1) is required");
  return *o.trials;
}

void check_format(const Options &o, bool csv_ok) {
  if (o.format == "json") return;
  if (o.format == "csv") {
    if (csv_ok) return;
    throw std::invalid_argument("this command only supports --format json");
  }
  throw std::invalid_argument("--format must be json or csv");
}

void emit(const Options &o, const std::string &text) {
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  detail::write_text_file(o.out, text);
}

void emit_json(const Options &o, const json &doc) {
  emit(o, doc.dump(2) + "\n");
}

void emit_csv(const Options &o, const std::string &body) {
  emit(o, "# schema_version=" + std::to_string(kSchemaVersion) + "\n" + body);
}

json header(const char *command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string ket_string(uint32_t n, size_t idx) {
  std::string s(n, '0');
  for (uint32_t q = 0; q < n; ++q)
    if ((idx >> (n - 1 - q)) & 1) s[q] = '1';
  return s;
}

std::vector<std::string> pauli_strings(const std::vector<PauliOp> &ops) {
  std::vector<std::string> out;
  out.reserve(ops.size());
  for (const PauliOp &p : ops) out.push_back(p.str());
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand implementations
// ---------------------------------------------------------------------------

int cmd_code(const Options &o) {
  check_format(o, /*csv_ok=*/false);
  StabilizerCode code = resolve_code(o);

  if (o.action == "export") {
    emit(o, stabilizer_text(code));
    return 0;
  }

  if (o.action == "show") {
    json j = header("code show");
    j["name"] = code_label(o);
    j["n"] = code.n;
    j["k"] = code.k;
    j["d"] = code.d ? json(*code.d) : json(nullptr);
    j["stabilizers"] = pauli_strings(code.stabilizers);
    j["logical_x"] = pauli_strings(code.logical_x);
    j["logical_z"] = pauli_strings(code.logical_z);
    if (code.encoder && code.n <= 20 && code.k == 1) {
      Rng rng(0);  // encoder circuits are unitary; never consulted
      auto expand = [&](bool one) {
        std::vector<cdouble> amps(size_t(1) << code.n, 0);
        amps[one ? size_t(1) << (code.n - 1) : 0] = 1;
        StateVector s = StateVector::from_amplitudes(code.n, std::move(amps));
        run_circuit(s, *code.encoder, rng);
        json kets = json::array();
        for (size_t idx = 0; idx < (size_t(1) << code.n); ++idx) {
          cdouble a = s.data()[idx];
          if (std::abs(a) < 1e-12) continue;
          json k;
          k["ket"] = ket_string(code.n, idx);
          k["re"] = a.real();
          k["im"] = a.imag();
          kets.push_back(std::move(k));
        }
        return kets;
      };
      j["basis_kets"] = json{{"zero", expand(false)}, {"one", expand(true)}};
    } else {
      j["basis_kets"] = nullptr;
    }
    emit_json(o, j);
    return 0;
  }

  if (o.action == "distance") {
    uint32_t budget = o.budget ? *o.budget : code.n;
    json j = header("code distance");
    j["name"] = code_label(o);
    j["n"] = code.n;
    j["k"] = code.k;
    j["budget"] = budget;
    auto entry = [&](PauliFilter f) -> json {
      std::optional<uint32_t> d = min_distance_bruteforce(code, budget, f);
      return d ? json(*d) : json(nullptr);
    };
    j["distance"] =
        json{{"any", entry(PauliFilter::kAny)},
             {"x_only", entry(PauliFilter::kXOnly)},
             {"z_only", entry(PauliFilter::kZOnly)}};
    emit_json(o, j);
    return 0;
  }

  throw std::invalid_argument("unknown code action '" + o.action +
                              "' (show, distance, export)");
}

int cmd_simulate(const Options &o) {
  check_format(o, /*csv_ok=*/true);
  StabilizerCode code = resolve_code(o);
  if (!code.encoder)
    throw std::invalid_argument(
        "simulate needs a code with an encoder circuit");
  NoiseModel model = resolve_noise(o);
  uint64_t trials = o.trials.value_or(1);
  if (trials == 0) throw std::invalid_argument("--trials must be >= 1");
  uint64_t seed = resolve_seed(o);
  SyndromeTable table = build_decoder(code);
  PipelineOptions popts;
  popts.hadamard_trick = o.hadamard_trick;

  std::vector<PipelineResult> records;
  records.reserve(trials);
  double fidelity_sum = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    Rng rng = derive_stream(seed, t);
    records.push_back(run_pipeline_exact(code, model, table, rng, popts));
    fidelity_sum += records.back().fidelity;
  }
  double mean = fidelity_sum / double(trials);

  if (o.format == "csv") {
    std::string body = "trial,fidelity,syndrome,correction,corrected\n";
    char line[160];
    for (uint64_t t = 0; t < trials; ++t) {
      const PipelineResult &r = records[size_t(t)];
      std::snprintf(line, sizeof line, "%llu,%.17g,",
                    static_cast<unsigned long long>(t), r.fidelity);
      body += line;
      body += r.syndrome.str() + "," + r.correction.str() + "," +
              (r.corrected ? "1" : "0") + "\n";
    }
    emit_csv(o, body);
    return 0;
  }

  json j = header("simulate");
  j["code"] = code_label(o);
  j["noise"] = noise_json(model);
  j["trials"] = trials;
  j["seed"] = seed;
  j["hadamard_trick"] = o.hadamard_trick;
  j["mean_fidelity"] = mean;
  json recs = json::array();
  for (uint64_t t = 0; t < trials; ++t) {
    const PipelineResult &r = records[size_t(t)];
    json e;
    e["trial"] = t;
    e["fidelity"] = r.fidelity;
    e["syndrome"] = r.syndrome.str();
    e["correction"] = r.correction.str();
    e["corrected"] = r.corrected;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  emit_json(o, j);
  return 0;
}

json estimate_json(const FailureEstimate &e) {
  json j;
  j["failures"] = e.failures;
  j["trials"] = e.trials;
  j["p_hat"] = e.p_hat;
  j["ci_low"] = e.ci_low;
  j["ci_high"] = e.ci_high;
  j["seed"] = e.seed;
  return j;
}

int cmd_montecarlo(const Options &o) {
  check_format(o, /*csv_ok=*/true);
  TrialConfig cfg;
  cfg.code = resolve_code(o);
  cfg.model = resolve_noise(o);
  cfg.trials = require_trials(o);
  cfg.master_seed = resolve_seed(o);
  cfg.workers = o.workers < 1 ? 1 : o.workers;
  FailureEstimate est = estimate_failure(cfg);

  if (o.format == "csv") {
    emit_csv(o, sweep_csv({SweepPoint{primary_param(cfg.model), est}}));
    return 0;
  }
  json j = header("montecarlo");
  j["code"] = code_label(o);
  j["noise"] = noise_json(cfg.model);
  j["workers"] = cfg.workers;
  j["estimate"] = estimate_json(est);
  emit_json(o, j);
  return 0;
}

std::vector<double> parse_values(const std::string &text) {
  if (text.empty())
    throw std::invalid_argument("--values is required (e.g. 0.05,0.1,0.2)");
  std::vector<double> out;
  size_t at = 0;
  while (at <= text.size()) {
    size_t comma = text.find(',', at);
    std::string tok = text.substr(
        at, comma == std::string::npos ? std::string::npos : comma - at);
    size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception &) {
      throw std::invalid_argument("--values: bad number '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("--values: bad number '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    at = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("--values must be non-empty");
  return out;
}

int cmd_sweep(const Options &o) {
  check_format(o, /*csv_ok=*/true);
  StabilizerCode code = resolve_code(o);
  if (o.noise.empty() || o.noise.front() == '{')
    throw std::invalid_argument(
        "sweep varies one channel parameter; pass a bare channel name via "
        "--noise");
  if (o.p || o.epsilon)
    throw std::invalid_argument("sweep takes --values, not --p/--epsilon");
  std::string channel = o.noise;
  ModelFamily family = [channel](double v) {
    NoiseModel m = bare_model(channel, v);
    validate_model(m);
    return m;
  };
  std::vector<double> grid = parse_values(o.values);
  uint64_t trials = require_trials(o);
  uint64_t seed = resolve_seed(o);
  uint32_t workers = o.workers < 1 ? 1 : o.workers;
  std::vector<SweepPoint> points = sweep(code, family, grid, trials, seed,
                                         workers);
  if (o.format == "csv") {
    emit_csv(o, sweep_csv(points));
    return 0;
  }
  json j = header("sweep");
  j["code"] = code_label(o);
  j["channel"] = channel;
  j["trials"] = trials;
  j["seed"] = seed;
  j["workers"] = workers;
  json arr = json::array();
  for (const SweepPoint &pt : points) {
    json e;
    e["param"] = pt.param;
    e["estimate"] = estimate_json(pt.estimate);
    arr.push_back(std::move(e));
  }
  j["points"] = std::move(arr);
  emit_json(o, j);
  return 0;
}

int cmd_analytic(const Options &o) {
  check_format(o, /*csv_ok=*/false);
  if (!o.noise.empty())
    throw std::invalid_argument(
        "analytic takes --p/--epsilon directly, not --noise");
  json inputs;
  double value = 0;
  std::optional<bool> clamped;

  auto need_p = [&]() {
    if (!o.p) throw std::invalid_argument(o.formula + " needs --p");
    inputs["p"] = *o.p;
    return *o.p;
  };
  auto need_eps = [&]() {
    if (!o.epsilon)
      throw std::invalid_argument(o.formula + " needs --epsilon");
    inputs["epsilon"] = *o.epsilon;
    return *o.epsilon;
  };
  auto need_n = [&]() {
    if (!o.n_qubits) throw std::invalid_argument(o.formula + " needs --n");
    inputs["n"] = *o.n_qubits;
    return *o.n_qubits;
  };
  auto need_t = [&]() {
    if (!o.t_weight) throw std::invalid_argument(o.formula + " needs --t");
    inputs["t"] = *o.t_weight;
    return *o.t_weight;
  };

  if (o.formula == "three_bit_failure") {
    value = three_bit_failure(need_p());
  } else if (o.formula == "phase_channel_p") {
    value = phase_channel_p(need_eps());
  } else if (o.formula == "phase_fidelity") {
    value = phase_fidelity(need_eps());
  } else if (o.formula == "p_uncorrectable") {
    uint32_t n = need_n(), t = need_t();
    double eps = need_eps();
    AddMode mode;
    if (o.mode == "coherent") {
      mode = AddMode::kCoherent;
    } else if (o.mode == "incoherent") {
      mode = AddMode::kIncoherent;
    } else {
      throw std::invalid_argument(
          "p_uncorrectable needs --mode coherent|incoherent");
    }
    inputs["mode"] = o.mode;
    ClampedValue cv = p_uncorrectable(n, t, eps, mode);
    value = cv.value;
    clamped = cv.clamped;
  } else if (o.formula == "large_code_example") {
    uint32_t n = need_n();
    double p = need_p();
    value = large_code_example(n, p, need_t());
  } else if (o.formula == "concatenation_failure") {
    double p = need_p();
    if (!o.p_threshold)
      throw std::invalid_argument("concatenation_failure needs --p-th");
    if (!o.levels)
      throw std::invalid_argument("concatenation_failure needs --levels");
    inputs["p_th"] = *o.p_threshold;
    inputs["levels"] = *o.levels;
    value = concatenation_failure(p, *o.p_threshold, *o.levels);
  } else {
    throw std::invalid_argument(
        "unknown formula '" + o.formula +
        "' (three_bit_failure, phase_channel_p, phase_fidelity, "
        "p_uncorrectable, large_code_example, concatenation_failure)");
  }

  json j = header("analytic");
  j["formula"] = o.formula;
  j["inputs"] = std::move(inputs);
  j["value"] = value;
  if (clamped) j["clamped"] = *clamped;
  emit_json(o, j);
  return 0;
}

json tally_json(const OutcomeTally &t) {
  json j;
  j["clean"] = t.clean;
  j["detectable"] = t.detectable;
  j["logical"] = t.logical;
  return j;
}

int cmd_track(const Options &o) {
  check_format(o, /*csv_ok=*/true);
  StabilizerCode code = resolve_code(o);
  CliffordCircuit circuit;
  if (!o.circuit_file.empty()) {
    circuit = CliffordCircuit::parse(detail::read_text_file(o.circuit_file),
                                     code.n);
  } else {
    circuit = build_extraction_circuit(code, code.n);
  }
  PathCountOptions opts;
  opts.max_faults = o.max_faults;
  opts.pair_budget = o.pair_budget;
  if (o.alphabet == "xyz") {
    opts.alphabet = FaultAlphabet::kXYZ;
  } else if (o.alphabet == "x") {
    opts.alphabet = FaultAlphabet::kXOnly;
  } else if (o.alphabet == "z") {
    opts.alphabet = FaultAlphabet::kZOnly;
  } else {
    throw std::invalid_argument("--alphabet must be xyz, x, or z");
  }
  SyndromeTable table = build_decoder(code);
  PathCounts counts = count_failure_paths(circuit, code, table, opts);

  if (o.format == "csv") {
    emit_csv(o, failure_paths_csv(counts));
    return 0;
  }
  json j = header("track");
  j["code"] = code_label(o);
  if (!o.circuit_file.empty()) j["circuit_file"] = o.circuit_file;
  j["gates"] = circuit.gates.size();
  j["qubits"] = circuit.n_qubits;
  j["alphabet"] = o.alphabet;
  j["max_faults"] = o.max_faults;
  j["singles"] = tally_json(counts.singles);
  j["pairs"] = tally_json(counts.pairs);
  json paths = json::array();
  for (const FailurePath &p : counts.logical_paths) {
    json e;
    e["weight"] = p.n_faults;
    e["locations"] = p.locations;
    e["residual"] = p.residual;
    paths.push_back(std::move(e));
  }
  j["logical_paths"] = std::move(paths);
  emit_json(o, j);
  return 0;
}

// ---------------------------------------------------------------------------
// Entry
// ---------------------------------------------------------------------------

int run(int argc, char **argv) {
  Options o;
  CLI::App app{"qecw — stabilizer code workbench (JSON/CSV batch tool)"};
  app.require_subcommand(1);
  std::map<const CLI::App *, ConfigKeys> keys;

  CLI::App *code = app.add_subcommand(
      "code", "show, brute-force, or export a stabilizer code");
  code->add_option("action", o.action, "show | distance | export")->required();
  code->add_option("name", o.code_name, "built-in code name");
  add_code_opts(code, o, keys[code]);
  keys[code].add(
      code->add_option("--budget", o.budget,
                       "maximum operator weight tried by `distance`"),
      [&o](const json &v) {
        o.budget = static_cast<uint32_t>(as_count(v, "budget"));
      });
  add_output_opts(code, o, keys[code]);

  CLI::App *simulate = app.add_subcommand(
      "simulate", "exact state-vector pipeline runs with per-trial records");
  add_code_opts(simulate, o, keys[simulate]);
  add_noise_opts(simulate, o, keys[simulate]);
  add_trials_opt(simulate, o, keys[simulate]);
  add_seed_opt(simulate, o, keys[simulate]);
  keys[simulate].add(
      simulate->add_flag("--hadamard-trick", o.hadamard_trick,
                         "rotate data qubits so phase noise reads as flips"),
      [&o](const json &v) { o.hadamard_trick = as_bool(v, "hadamard-trick"); });
  add_output_opts(simulate, o, keys[simulate]);

  CLI::App *montecarlo = app.add_subcommand(
      "montecarlo", "Pauli-frame Monte Carlo failure estimate");
  add_code_opts(montecarlo, o, keys[montecarlo]);
  add_noise_opts(montecarlo, o, keys[montecarlo]);
  add_trials_opt(montecarlo, o, keys[montecarlo]);
  add_seed_opt(montecarlo, o, keys[montecarlo]);
  add_workers_opt(montecarlo, o, keys[montecarlo]);
  add_output_opts(montecarlo, o, keys[montecarlo]);

  CLI::App *sweep_cmd = app.add_subcommand(
      "sweep", "Monte Carlo failure estimates over a parameter grid");
  add_code_opts(sweep_cmd, o, keys[sweep_cmd]);
  add_noise_opts(sweep_cmd, o, keys[sweep_cmd]);
  keys[sweep_cmd].add(
      sweep_cmd->add_option("--values", o.values,
                            "comma-separated channel parameters"),
      [&o](const json &v) { o.values = as_string(v, "values"); });
  add_trials_opt(sweep_cmd, o, keys[sweep_cmd]);
  add_seed_opt(sweep_cmd, o, keys[sweep_cmd]);
  add_workers_opt(sweep_cmd, o, keys[sweep_cmd]);
  add_output_opts(sweep_cmd, o, keys[sweep_cmd]);

  CLI::App *analytic = app.add_subcommand(
      "analytic", "evaluate a closed-form failure estimate");
  analytic->add_option("formula", o.formula, "formula name")->required();
  add_noise_opts(analytic, o, keys[analytic]);  // reuses --p/--epsilon
  keys[analytic].add(analytic->add_option("--n", o.n_qubits, "qubit count"),
                     [&o](const json &v) {
                       o.n_qubits = static_cast<uint32_t>(as_count(v, "n"));
                     });
  keys[analytic].add(
      analytic->add_option("--t", o.t_weight, "correctable weight"),
      [&o](const json &v) {
        o.t_weight = static_cast<uint32_t>(as_count(v, "t"));
      });
  keys[analytic].add(
      analytic->add_option("--mode", o.mode, "coherent | incoherent"),
      [&o](const json &v) { o.mode = as_string(v, "mode"); });
  keys[analytic].add(
      analytic->add_option("--p-th", o.p_threshold, "threshold probability"),
      [&o](const json &v) { o.p_threshold = as_number(v, "p-th"); });
  keys[analytic].add(
      analytic->add_option("--levels", o.levels, "concatenation levels"),
      [&o](const json &v) {
        o.levels = static_cast<uint32_t>(as_count(v, "levels"));
      });
  add_output_opts(analytic, o, keys[analytic]);

  CLI::App *track = app.add_subcommand(
      "track", "enumerate fault locations that defeat one extraction round");
  add_code_opts(track, o, keys[track]);
  keys[track].add(
      track->add_option("--circuit-file", o.circuit_file,
                        "gate list file (default: the code's own extraction "
                        "circuit)"),
      [&o](const json &v) { o.circuit_file = as_string(v, "circuit-file"); });
  keys[track].add(
      track->add_option("--alphabet", o.alphabet, "fault letters: xyz, x, z"),
      [&o](const json &v) { o.alphabet = as_string(v, "alphabet"); });
  keys[track].add(
      track->add_option("--max-faults", o.max_faults, "1 or 2"),
      [&o](const json &v) {
        o.max_faults = static_cast<uint32_t>(as_count(v, "max-faults"));
      });
  keys[track].add(
      track->add_option("--pair-budget", o.pair_budget,
                        "refuse to enumerate more pairs than this"),
      [&o](const json &v) { o.pair_budget = as_count(v, "pair-budget"); });
  add_output_opts(track, o, keys[track]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App *active = app.get_subcommands().at(0);
  if (!o.config_path.empty()) {
    json cfg = json::parse(detail::read_text_file(o.config_path), nullptr,
                           /*allow_exceptions=*/false);
    if (cfg.is_discarded())
      throw std::invalid_argument("config: not valid JSON: " + o.config_path);
    keys[active].merge(cfg);
  }

  if (active == code) return cmd_code(o);
  if (active == simulate) return cmd_simulate(o);
  if (active == montecarlo) return cmd_montecarlo(o);
  if (active == sweep_cmd) return cmd_sweep(o);
  if (active == analytic) return cmd_analytic(o);
  return cmd_track(o);
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
