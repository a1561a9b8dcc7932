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

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qecw/pauli.hpp"
#include "qecw/rng.hpp"
#include "qecw/statevec.hpp"

namespace qecw {

// Independent bit flips: X with probability p on each qubit.
struct BitFlip {
  double p = 0;
};

// Small random phase rotation diag(e^{i e phi}, e^{-i e phi}) with phi drawn
// uniform on (0, 2pi).  A fresh phi per qubit by default; `coherent_phi`
// shares one draw across a whole channel application.
struct PhaseRotation {
  double epsilon = 0;
  bool coherent_phi = false;
};

// Entangling coupling to a fresh environment qubit: |0>|e> stays put,
// |1>|e> drags the environment to a state overlapping the original by
// 1 - epsilon.
struct ProjectiveCoupling {
  double epsilon = 0;
};

// X, Y, Z each with probability p/3.
struct Depolarizing {
  double p = 0;
};

// Independent per-qubit Pauli noise with explicit marginals.
struct IidPauli {
  double px = 0;
  double py = 0;
  double pz = 0;
};

using NoiseModel =
    std::variant<BitFlip, PhaseRotation, ProjectiveCoupling, Depolarizing,
                 IidPauli>;

inline void validate_model(const NoiseModel &model) {
  auto bad = [](const std::string &msg) {
    throw std::invalid_argument("noise model: " + msg);
  };
  if (const auto *b = std::get_if<BitFlip>(&model)) {
    if (!(b->p >= 0 && b->p <= 1)) bad("bit-flip p must be in [0,1]");
  } else if (const auto *r = std::get_if<PhaseRotation>(&model)) {
    if (!(r->epsilon >= 0)) bad("phase epsilon must be >= 0");
  } else if (const auto *c = std::get_if<ProjectiveCoupling>(&model)) {
    if (!(c->epsilon >= 0 && c->epsilon <= 1))
      bad("projective epsilon must be in [0,1]");
  } else if (const auto *d = std::get_if<Depolarizing>(&model)) {
    if (!(d->p >= 0 && d->p <= 1)) bad("depolarizing p must be in [0,1]");
  } else if (const auto *i = std::get_if<IidPauli>(&model)) {
    if (!(i->px >= 0 && i->py >= 0 && i->pz >= 0 &&
          i->px + i->py + i->pz <= 1))
      bad("iid rates must be non-negative and sum to at most 1");
  }
}

inline std::string model_name(const NoiseModel &model) {
  if (std::holds_alternative<BitFlip>(model)) return "bitflip";
  if (std::holds_alternative<PhaseRotation>(model)) return "phase";
  if (std::holds_alternative<ProjectiveCoupling>(model)) return "projective";
  if (std::holds_alternative<Depolarizing>(model)) return "depolarizing";
  return "iid";
}

// Average weight <sin^2(e phi)> of the flipped component for a uniform
// phase draw: 1/2 - sin(4 pi e) / (8 pi e), evaluated by series when the
// argument is small enough to cancel catastrophically.
inline double phase_flip_weight(double epsilon) {
  double x = 4 * M_PI * epsilon;
  if (std::abs(x) < 1e-3) return x * x / 12.0 - x * x * x * x / 240.0;
  return 0.5 - std::sin(x) / (2 * x);
}

// Digitized per-qubit error probability of the models that admit one.
inline double effective_p(const NoiseModel &model) {
  if (const auto *b = std::get_if<BitFlip>(&model)) return b->p;
  if (const auto *r = std::get_if<PhaseRotation>(&model))
    return phase_flip_weight(r->epsilon);
  if (const auto *c = std::get_if<ProjectiveCoupling>(&model))
    return c->epsilon / 2;  // (1 - Re<a|b>)/2, the exact branch weight
  throw std::invalid_argument(
      "effective_p: model has no single effective probability");
}

// Quadratic form (1 - Re<a|b>)^2 / 2 = epsilon^2/2 for the projective
// coupling.  Kept alongside effective_p because the two disagree; tests pin
// the state-vector-derived value and flag this one as the divergent claim.
inline double effective_p_quadratic(const NoiseModel &model) {
  if (const auto *c = std::get_if<ProjectiveCoupling>(&model))
    return c->epsilon * c->epsilon / 2;
  throw std::invalid_argument(
      "effective_p_quadratic: defined for the projective coupling only");
}

struct PauliRates {
  double px = 0;
  double py = 0;
  double pz = 0;
};

// Per-qubit marginals of the digitized (Pauli-sampled) form of the model.
inline PauliRates pauli_rates(const NoiseModel &model) {
  validate_model(model);
  if (const auto *b = std::get_if<BitFlip>(&model)) return {b->p, 0, 0};
  if (const auto *d = std::get_if<Depolarizing>(&model))
    return {d->p / 3, d->p / 3, d->p / 3};
  if (const auto *i = std::get_if<IidPauli>(&model))
    return {i->px, i->py, i->pz};
  // Phase-type models digitize to pure Z noise at their effective rate.
  return {0, 0, effective_p(model)};
}

// One i.i.d. per-qubit Pauli draw from the digitized model.
inline PauliOp sample_error(const NoiseModel &model, uint32_t n, Rng &rng) {
  PauliRates r = pauli_rates(model);
  PauliOp e = PauliOp::identity(n);
  for (uint32_t q = 0; q < n; ++q) {
    double u = rng.uniform();
    if (u < r.px) {
      e.u.set(q, true);
    } else if (u < r.px + r.py) {
      e.u.set(q, true);
      e.v.set(q, true);
    } else if (u < r.px + r.py + r.pz) {
      e.v.set(q, true);
    }
  }
  return e;
}

namespace detail {

inline void apply_phase_rotation(StateVector &s, uint32_t q, double epsilon,
                                 double phi) {
  double t = epsilon * phi;
  cdouble up = std::polar(1.0, t), down = std::polar(1.0, -t);
  s.apply_unitary({q}, {up, 0, 0, down});
}

inline uint32_t apply_projective_coupling(StateVector &s, uint32_t q,
                                          double epsilon) {
  uint32_t env = s.append_qubit();
  double c = 1 - epsilon;
  double t = std::sqrt(std::max(0.0, 2 * epsilon - epsilon * epsilon));
  // Controlled on the data qubit: the environment moves from |0> to a state
  // with overlap 1 - epsilon.  The last column is the unitary completion and
  // is never exercised (the environment starts in |0>).
  s.apply_unitary({q, env}, {1, 0, 0, 0,  //
                             0, 1, 0, 0,  //
                             0, 0, c, -t,  //
                             0, 0, t, c});
  return env;
}

}  // namespace detail

// Exact (trajectory-level) action of the model on one qubit.  Pauli-type
// models sample and apply a Pauli; the phase rotation applies its diagonal
// unitary with a fresh phi; the projective coupling appends an environment
// qubit and returns its index.
inline std::optional<uint32_t> apply_exact(const NoiseModel &model,
                                           StateVector &s, uint32_t q,
                                           Rng &rng) {
  validate_model(model);
  if (const auto *r = std::get_if<PhaseRotation>(&model)) {
    detail::apply_phase_rotation(s, q, r->epsilon, 2 * M_PI * rng.uniform());
    return std::nullopt;
  }
  if (const auto *c = std::get_if<ProjectiveCoupling>(&model))
    return detail::apply_projective_coupling(s, q, c->epsilon);
  PauliOp e = sample_error(model, 1, rng);
  if (e.u.get(0) || e.v.get(0)) {
    PauliOp full = PauliOp::identity(s.n());
    if (e.u.get(0)) full.u.set(q, true);
    if (e.v.get(0)) full.v.set(q, true);
    s.apply_pauli(full);
  }
  return std::nullopt;
}

// Applies the channel to every listed qubit.  For the coherent-phi phase
// rotation a single phi is drawn and shared; otherwise this is apply_exact
// per qubit.  Returns the appended environment-qubit indices, in order.
inline std::vector<uint32_t> apply_channel(const NoiseModel &model,
                                           StateVector &s,
                                           const std::vector<uint32_t> &qubits,
                                           Rng &rng) {
  validate_model(model);
  std::vector<uint32_t> envs;
  if (const auto *r = std::get_if<PhaseRotation>(&model)) {
    if (r->coherent_phi) {
      double phi = 2 * M_PI * rng.uniform();
      for (uint32_t q : qubits)
        detail::apply_phase_rotation(s, q, r->epsilon, phi);
      return envs;
    }
  }
  for (uint32_t q : qubits) {
    std::optional<uint32_t> env = apply_exact(model, s, q, rng);
    if (env) envs.push_back(*env);
  }
  return envs;
}

}  // namespace qecw
