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
// Pauli-frame Monte Carlo estimation of the uncorrectable-error
// probability. Errors, corrections, and residual classification are all
// group-theoretic, so trials run on integers: a syndrome index and a
// logical pairing word per trial, no state vectors. Every trial draws its
// own counter-derived RNG stream, which makes results bit-identical for
// any worker count.

#ifndef QECW_MONTECARLO_HPP_
#define QECW_MONTECARLO_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qecw/codes.hpp"
#include "qecw/correct.hpp"
#include "qecw/noise.hpp"
#include "qecw/rng.hpp"

namespace qecw {

struct TrialConfig {
  StabilizerCode code;
  NoiseModel model = BitFlip{0};
  uint64_t trials = 1;
  uint64_t master_seed = 0;
  uint32_t workers = 1;
};

struct FailureEstimate {
  uint64_t failures = 0;
  uint64_t trials = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  uint64_t seed = 0;
};

// 95% Wilson score interval; exact endpoints at the empty and full counts.
inline void wilson_interval(uint64_t failures, uint64_t trials, double *low,
                            double *high) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double z = 1.959963984540054;
  double n = double(trials);
  double ph = double(failures) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (ph + z2 / (2 * n)) / denom;
  double half = z / denom * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
  *low = failures == 0 ? 0.0 : std::max(0.0, center - half);
  *high = failures == trials ? 1.0 : std::min(1.0, center + half);
}

namespace detail {

// Everything a trial needs, flattened to integer tables: per-qubit
// per-type syndrome masks and logical pairing words, plus the pairing
// word of each table correction.
struct FrameTables {
  uint32_t n = 0;
  double thx = 0, thy = 0, thz = 0;  // cumulative type thresholds
  std::vector<std::array<uint32_t, 3>> syn;   // [qubit][X,Y,Z]
  std::vector<std::array<uint32_t, 3>> pair;  // [qubit][X,Y,Z]
  std::vector<uint32_t> corr_pair;            // [syndrome index]
};

inline FrameTables build_frame_tables(const StabilizerCode &code,
                                      const NoiseModel &model) {
  validate_model(model);
  PauliRates rates = pauli_rates(model);
  SyndromeTable table = build_decoder(code);
  ResidualClassifier cls(code);
  FrameTables ft;
  ft.n = code.n;
  ft.thx = rates.px;
  ft.thy = rates.px + rates.py;
  ft.thz = rates.px + rates.py + rates.pz;
  ft.syn.resize(code.n);
  ft.pair.resize(code.n);
  for (uint32_t q = 0; q < code.n; ++q) {
    for (int t = 0; t < 3; ++t) {
      PauliOp e = PauliOp::identity(code.n);
      if (t != 2) e.u.set(q, true);
      if (t != 0) e.v.set(q, true);
      ft.syn[q][t] = uint32_t(syndrome_index(e, code));
      ft.pair[q][t] = cls.pair_word(e);
    }
  }
  ft.corr_pair.resize(table.entries.size());
  for (size_t idx = 0; idx < table.entries.size(); ++idx)
    ft.corr_pair[idx] = cls.pair_word(table.entries[idx]);
  return ft;
}

inline uint64_t run_trials(const FrameTables &ft, uint64_t master_seed,
                           uint64_t begin, uint64_t end) {
  uint64_t failures = 0;
  for (uint64_t t = begin; t < end; ++t) {
    Rng rng = derive_stream(master_seed, t);
    uint32_t syn = 0, pw = 0;
    for (uint32_t q = 0; q < ft.n; ++q) {
      double u = rng.uniform();
      if (u >= ft.thz) continue;
      int type = u < ft.thx ? 0 : (u < ft.thy ? 1 : 2);
      syn ^= ft.syn[q][type];
      pw ^= ft.pair[q][type];
    }
    if ((pw ^ ft.corr_pair[syn]) != 0) ++failures;
  }
  return failures;
}

}  // namespace detail

inline FailureEstimate estimate_failure(const TrialConfig &cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("estimate_failure: need at least one trial");
  detail::FrameTables ft = detail::build_frame_tables(cfg.code, cfg.model);

  uint32_t workers = std::max(1u, cfg.workers);
  workers = uint32_t(std::min<uint64_t>(workers, cfg.trials));
  std::vector<uint64_t> partials(workers, 0);
  if (workers == 1) {
    partials[0] = detail::run_trials(ft, cfg.master_seed, 0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t w = 0; w < workers; ++w) {
      uint64_t begin = cfg.trials * w / workers;
      uint64_t end = cfg.trials * (w + 1) / workers;
      pool.emplace_back([&, begin, end, w] {
        partials[w] = detail::run_trials(ft, cfg.master_seed, begin, end);
      });
    }
    for (std::thread &th : pool) th.join();
  }

  FailureEstimate est;
  est.trials = cfg.trials;
  for (uint64_t f : partials) est.failures += f;
  est.p_hat = double(est.failures) / double(est.trials);
  wilson_interval(est.failures, est.trials, &est.ci_low, &est.ci_high);
  est.seed = cfg.master_seed;
  return est;
}

// Exact failure probability by enumerating every Pauli pattern with its
// i.i.d. probability. Exponential in n; oracle for small codes.
inline double exhaustive_failure_probability(const StabilizerCode &code,
                                             const NoiseModel &model) {
  if (code.n > 10)
    throw std::invalid_argument(
        "exhaustive_failure_probability: 4^n enumeration needs n <= 10");
  detail::FrameTables ft = detail::build_frame_tables(code, model);
  PauliRates rates = pauli_rates(model);
  double pi = 1 - rates.px - rates.py - rates.pz;
  double type_p[4] = {pi, rates.px, rates.py, rates.pz};
  double failure = 0;
  std::vector<int> types(code.n, 0);  // 0=I, 1=X, 2=Y, 3=Z
  while (true) {
    double weight = 1;
    uint32_t syn = 0, pw = 0;
    for (uint32_t q = 0; q < code.n; ++q) {
      weight *= type_p[types[q]];
      if (types[q] != 0) {
        syn ^= ft.syn[q][types[q] - 1];
        pw ^= ft.pair[q][types[q] - 1];
      }
    }
    if ((pw ^ ft.corr_pair[syn]) != 0) failure += weight;
    uint32_t bump = 0;
    while (bump < code.n && ++types[bump] == 4) types[bump++] = 0;
    if (bump == code.n) break;
  }
  return failure;
}

using ModelFamily = std::function<NoiseModel(double)>;

struct SweepPoint {
  double param = 0;
  FailureEstimate estimate;
};

// One estimate per grid value; each point gets its own derived seed so
// grids can be re-partitioned without changing results.
inline std::vector<SweepPoint> sweep(const StabilizerCode &code,
                                     const ModelFamily &family,
                                     const std::vector<double> &grid,
                                     uint64_t trials, uint64_t master_seed,
                                     uint32_t workers = 1) {
  if (grid.empty()) throw std::invalid_argument("sweep: empty parameter grid");
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    TrialConfig cfg;
    cfg.code = code;
    cfg.model = family(grid[i]);
    cfg.trials = trials;
    cfg.master_seed = derive_seed(master_seed, uint64_t(i));
    cfg.workers = workers;
    out.push_back({grid[i], estimate_failure(cfg)});
  }
  return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint> &points) {
  std::string out = "param,p_hat,ci_low,ci_high,failures,trials,seed\n";
  char line[256];
  for (const SweepPoint &pt : points) {
    std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%llu,%llu,%llu\n",
                  pt.param, pt.estimate.p_hat, pt.estimate.ci_low,
                  pt.estimate.ci_high,
                  static_cast<unsigned long long>(pt.estimate.failures),
                  static_cast<unsigned long long>(pt.estimate.trials),
                  static_cast<unsigned long long>(pt.estimate.seed));
    out += line;
  }
  return out;
}

}  // namespace qecw

#endif  // QECW_MONTECARLO_HPP_
