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
// Closed-form failure-rate predictions: the exact three-qubit bit-flip
// failure polynomial, the dephasing-channel flip weight and fidelity,
// order-of-magnitude uncorrectable-error estimates for distance-d codes
// under coherent or incoherent accumulation, and the concatenation
// recursion. These serve both as a standalone calculator and as oracles
// for the Monte Carlo estimators.

#ifndef QECW_ANALYTIC_HPP_
#define QECW_ANALYTIC_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qecw/noise.hpp"

namespace qecw {

// Code-family parameters for the estimate formulas. t is the guaranteed
// correctable weight, t = (d - 1) / 2 for distance d.
struct CodeParams {
  uint32_t n = 0;
  uint32_t k = 0;
  uint32_t t = 0;
  double strength = 0;  // per-qubit noise strength (p or epsilon)
};

// A probability that may have been clamped into [0, 1]. The raw formulas
// are perturbative and exceed 1 outside their validity regime.
struct ClampedValue {
  double value = 0;
  bool clamped = false;
};

enum class AddMode { kCoherent, kIncoherent };

namespace detail {

inline double binomial(uint32_t n, uint32_t m) {
  if (m > n) return 0;
  if (m > n - m) m = n - m;
  double acc = 1;
  for (uint32_t i = 1; i <= m; ++i) acc *= double(n - m + i) / double(i);
  return acc;
}

inline ClampedValue clamp_probability(double raw) {
  if (raw < 0) return {0.0, true};
  if (raw > 1) return {1.0, true};
  return {raw, false};
}

}  // namespace detail

// Failure probability of majority-vote correction on three bits with
// independent flip probability p: two or three flips defeat the vote,
// 3p^2(1-p) + p^3 = 3p^2 - 2p^3.
inline double three_bit_failure(double p) {
  if (!(p >= 0 && p <= 1))
    throw std::invalid_argument("three_bit_failure: p outside [0, 1]");
  return 3 * p * p - 2 * p * p * p;
}

// Digitized flip probability of the random-phase channel, exact closed
// form of <sin^2(epsilon phi)> over one phase period.
inline double phase_channel_p(double epsilon) {
  if (!(epsilon >= 0))
    throw std::invalid_argument("phase_channel_p: epsilon must be >= 0");
  return phase_flip_weight(epsilon);
}

// Leading-order fidelity of the corrected three-qubit phase code when the
// per-qubit flip weight is p: double faults dominate, f = 1 - 3p^2.
inline double phase_fidelity(double epsilon) {
  double p = phase_channel_p(epsilon);
  return 1 - 3 * p * p;
}

// Probability that noise of per-qubit amplitude epsilon produces an error
// of weight t+1 (beyond the code's guarantee) on n qubits. Each qubit
// offers three Pauli directions, hence the 3^(t+1) count. Coherent
// accumulation sums amplitudes before squaring; incoherent sums
// probabilities. Order-of-magnitude estimates, clamped into [0, 1].
inline ClampedValue p_uncorrectable(uint32_t n, uint32_t t, double epsilon,
                                    AddMode mode) {
  if (t + 1 > n)
    throw std::invalid_argument("p_uncorrectable: need t + 1 <= n");
  if (!(epsilon >= 0))
    throw std::invalid_argument("p_uncorrectable: epsilon must be >= 0");
  double paths = std::pow(3.0, double(t) + 1) * detail::binomial(n, t + 1);
  double raw;
  if (mode == AddMode::kCoherent) {
    double amp = paths * std::pow(epsilon, double(t) + 1);
    raw = amp * amp;
  } else {
    raw = paths * std::pow(epsilon, 2.0 * (double(t) + 1));
  }
  return detail::clamp_probability(raw);
}

// Large-n shorthand for the same estimate with per-qubit error
// probability p: (3np)^(t+1) / (t+1)!. Valid only for 3np << 1.
inline double large_code_example(uint32_t n, double p, uint32_t t) {
  if (t + 1 > n)
    throw std::invalid_argument("large_code_example: need t + 1 <= n");
  if (!(p >= 0)) throw std::invalid_argument("large_code_example: p < 0");
  if (p == 0) return 0;
  double x = 3.0 * double(n) * p;
  return std::exp((double(t) + 1) * std::log(x) - std::lgamma(double(t) + 2));
}

// Standard concatenation recursion: each level squares the ratio to the
// threshold, p_L = p_th * (p / p_th)^(2^L). Decreases with level iff
// p < p_th; the threshold itself is a fixed point.
inline double concatenation_failure(double p_phys, double p_threshold,
                                    uint32_t levels) {
  if (!(p_phys >= 0) || !(p_threshold > 0))
    throw std::invalid_argument(
        "concatenation_failure: need p_phys >= 0 and p_threshold > 0");
  if (p_phys == 0) return 0;
  return p_threshold *
         std::pow(p_phys / p_threshold, std::ldexp(1.0, int(levels)));
}

}  // namespace qecw

#endif  // QECW_ANALYTIC_HPP_
