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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecw/pauli.hpp"
#include "qecw/rng.hpp"

namespace qecw {

using cdouble = std::complex<double>;

struct MeasureResult {
  uint64_t outcome = 0;     // bit j = result for the j-th listed qubit
  double probability = 0;   // Born probability of the observed branch
};

// Dense state-vector simulator.  Qubit 0 is the leftmost label in ket
// notation, i.e. the most significant bit of the amplitude index.  Global
// phase is physical here: no operation renormalizes it away.
class StateVector {
 public:
  static constexpr uint32_t kMaxQubits = 24;

  explicit StateVector(uint32_t n) : n_(n) {
    if (n == 0 || n > kMaxQubits)
      throw std::invalid_argument("StateVector: qubit count must be in [1, 24]");
    amp_.assign(size_t(1) << n, cdouble(0, 0));
    amp_[0] = 1.0;
  }

  static StateVector from_amplitudes(uint32_t n, std::vector<cdouble> amps) {
    StateVector s(n);
    if (amps.size() != s.amp_.size())
      throw std::invalid_argument("StateVector: wrong amplitude count");
    s.amp_ = std::move(amps);
    return s;
  }

  // Single-qubit state a|0> + b|1>, normalized by the caller.
  static StateVector qubit(cdouble a, cdouble b) {
    return from_amplitudes(1, {a, b});
  }

  uint32_t n() const { return n_; }
  size_t dim() const { return amp_.size(); }
  const std::vector<cdouble> &data() const { return amp_; }
  std::vector<cdouble> &data() { return amp_; }
  cdouble amp(size_t idx) const { return amp_[idx]; }

  // Index bit carrying qubit q (leftmost label = most significant bit).
  uint64_t qubit_mask(uint32_t q) const {
    check_qubit(q);
    return uint64_t(1) << (n_ - 1 - q);
  }

  double norm() const {
    double s = 0;
    for (const cdouble &a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  // Applies sign * X_u Z_v: |x> -> sign * (-1)^(v.x) |x ^ u>.
  void apply_pauli(const PauliOp &p) {
    if (p.n() != n_)
      throw std::invalid_argument("apply_pauli: operator size mismatch");
    uint64_t xmask = 0, zmask = 0;
    for (uint32_t q = 0; q < n_; ++q) {
      if (p.u.get(q)) xmask |= qubit_mask(q);
      if (p.v.get(q)) zmask |= qubit_mask(q);
    }
    cdouble s = p.sign();
    if (xmask == 0) {
      for (size_t x = 0; x < amp_.size(); ++x) {
        double ph = (std::popcount(x & zmask) & 1) ? -1.0 : 1.0;
        amp_[x] *= s * ph;
      }
      return;
    }
    for (size_t x = 0; x < amp_.size(); ++x) {
      size_t t = x ^ xmask;
      if (x >= t) continue;
      double phx = (std::popcount(x & zmask) & 1) ? -1.0 : 1.0;
      double pht = (std::popcount(t & zmask) & 1) ? -1.0 : 1.0;
      cdouble ax = amp_[x], at = amp_[t];
      amp_[t] = s * phx * ax;  // |x> -> |t> picks up Z phase evaluated at x
      amp_[x] = s * pht * at;
    }
  }

  void apply_h(uint32_t q) {
    uint64_t mask = qubit_mask(q);
    const double inv_sqrt2 = 0.7071067811865475244;
    for (size_t x = 0; x < amp_.size(); ++x) {
      if (x & mask) continue;
      cdouble a0 = amp_[x], a1 = amp_[x | mask];
      amp_[x] = (a0 + a1) * inv_sqrt2;
      amp_[x | mask] = (a0 - a1) * inv_sqrt2;
    }
  }

  void apply_cnot(uint32_t control, uint32_t target) {
    if (control == target)
      throw std::invalid_argument("apply_cnot: control equals target");
    uint64_t cm = qubit_mask(control), tm = qubit_mask(target);
    for (size_t x = 0; x < amp_.size(); ++x) {
      if ((x & cm) && !(x & tm)) std::swap(amp_[x], amp_[x | tm]);
    }
  }

  // General 1- or 2-qubit unitary, row-major over the listed qubits with
  // qubits[0] as the more significant local bit.  Rejects non-unitary input.
  void apply_unitary(const std::vector<uint32_t> &qubits,
                     const std::vector<cdouble> &m) {
    size_t nq = qubits.size();
    if (nq < 1 || nq > 2)
      throw std::invalid_argument("apply_unitary: supports 1 or 2 qubits");
    size_t d = size_t(1) << nq;
    if (m.size() != d * d)
      throw std::invalid_argument("apply_unitary: matrix size mismatch");
    for (size_t i = 0; i < nq; ++i) {
      check_qubit(qubits[i]);
      for (size_t j = i + 1; j < nq; ++j)
        if (qubits[i] == qubits[j])
          throw std::invalid_argument("apply_unitary: repeated qubit");
    }
    // Unitarity: rows orthonormal within 1e-10.
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) {
        cdouble acc = 0;
        for (size_t k = 0; k < d; ++k) acc += m[i * d + k] * std::conj(m[j * d + k]);
        cdouble want = (i == j) ? cdouble(1, 0) : cdouble(0, 0);
        if (std::abs(acc - want) > 1e-10)
          throw std::invalid_argument("apply_unitary: matrix is not unitary");
      }
    }
    std::vector<uint64_t> off(d, 0);
    for (size_t l = 0; l < d; ++l) {
      for (size_t j = 0; j < nq; ++j) {
        if ((l >> (nq - 1 - j)) & 1) off[l] |= qubit_mask(qubits[j]);
      }
    }
    uint64_t sel = 0;
    for (uint32_t q : qubits) sel |= qubit_mask(q);
    std::vector<cdouble> in(d);
    for (size_t base = 0; base < amp_.size(); ++base) {
      if (base & sel) continue;
      for (size_t l = 0; l < d; ++l) in[l] = amp_[base | off[l]];
      for (size_t r = 0; r < d; ++r) {
        cdouble acc = 0;
        for (size_t c = 0; c < d; ++c) acc += m[r * d + c] * in[c];
        amp_[base | off[r]] = acc;
      }
    }
  }

  // Appends one qubit in |0> at the rightmost ket position (index n()).
  uint32_t append_qubit() {
    if (n_ + 1 > kMaxQubits)
      throw std::invalid_argument("append_qubit: qubit budget of 24 exceeded");
    std::vector<cdouble> na(amp_.size() * 2, cdouble(0, 0));
    for (size_t i = 0; i < amp_.size(); ++i) na[i << 1] = amp_[i];
    amp_ = std::move(na);
    return n_++;
  }

  // Measures the listed qubits in the Z basis; collapses and renormalizes.
  MeasureResult measure(const std::vector<uint32_t> &qubits, Rng &rng) {
    std::vector<double> probs = outcome_probs(qubits);
    double r = rng.uniform();
    uint64_t pick = probs.size() - 1;
    double acc = 0;
    for (uint64_t o = 0; o < probs.size(); ++o) {
      acc += probs[o];
      if (r < acc) {
        pick = o;
        break;
      }
    }
    double p = collapse(qubits, pick);
    return {pick, p};
  }

  // Deterministic branch selection; returns the branch probability.
  // Throws when the requested branch has (numerically) zero weight.
  double measure_postselect(const std::vector<uint32_t> &qubits,
                            uint64_t outcome) {
    std::vector<double> probs = outcome_probs(qubits);
    if (outcome >= probs.size())
      throw std::invalid_argument("measure_postselect: outcome out of range");
    if (probs[outcome] < 1e-30)
      throw std::invalid_argument(
          "measure_postselect: zero-probability branch");
    return collapse(qubits, outcome);
  }

  // One line per non-negligible amplitude: "bitstring re im", sorted by
  // bitstring (equivalently by index, since qubit 0 is the leading bit).
  std::string dump() const {
    std::string out;
    char buf[80];
    for (size_t idx = 0; idx < amp_.size(); ++idx) {
      if (std::abs(amp_[idx]) <= 1e-12) continue;
      std::string bits(n_, '0');
      for (uint32_t q = 0; q < n_; ++q)
        if (idx & qubit_mask(q)) bits[q] = '1';
      std::snprintf(buf, sizeof buf, " %.12g %.12g\n", amp_[idx].real(),
                    amp_[idx].imag());
      out += bits + buf;
    }
    return out;
  }

 private:
  void check_qubit(uint32_t q) const {
    if (q >= n_) throw std::invalid_argument("qubit index out of range");
  }

  std::vector<double> outcome_probs(const std::vector<uint32_t> &qubits) const {
    if (qubits.empty() || qubits.size() > n_)
      throw std::invalid_argument("measure: bad qubit list");
    for (size_t i = 0; i < qubits.size(); ++i) {
      check_qubit(qubits[i]);
      for (size_t j = i + 1; j < qubits.size(); ++j)
        if (qubits[i] == qubits[j])
          throw std::invalid_argument("measure: repeated qubit");
    }
    std::vector<double> probs(size_t(1) << qubits.size(), 0.0);
    for (size_t idx = 0; idx < amp_.size(); ++idx) {
      double w = std::norm(amp_[idx]);
      if (w == 0) continue;
      probs[gather(idx, qubits)] += w;
    }
    return probs;
  }

  uint64_t gather(size_t idx, const std::vector<uint32_t> &qubits) const {
    uint64_t o = 0;
    for (size_t j = 0; j < qubits.size(); ++j) {
      if (idx & (uint64_t(1) << (n_ - 1 - qubits[j]))) o |= uint64_t(1) << j;
    }
    return o;
  }

  double collapse(const std::vector<uint32_t> &qubits, uint64_t outcome) {
    double p = 0;
    for (size_t idx = 0; idx < amp_.size(); ++idx) {
      if (gather(idx, qubits) == outcome) {
        p += std::norm(amp_[idx]);
      } else {
        amp_[idx] = 0;
      }
    }
    double scale = 1.0 / std::sqrt(p);
    for (cdouble &a : amp_) a *= scale;
    return p;
  }

  uint32_t n_;
  std::vector<cdouble> amp_;
};

inline cdouble inner_product(const StateVector &a, const StateVector &b) {
  if (a.n() != b.n())
    throw std::invalid_argument("inner_product: size mismatch");
  cdouble acc = 0;
  for (size_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a.amp(i)) * b.amp(i);
  return acc;
}

// |<a|b>|^2.
inline double fidelity(const StateVector &a, const StateVector &b) {
  return std::norm(inner_product(a, b));
}

// <ref| rho_keep |ref> where rho_keep traces out every qubit not listed in
// `keep`.  keep[j] becomes qubit j of the reference state.
inline double partial_trace_fidelity(const StateVector &s,
                                     const std::vector<uint32_t> &keep,
                                     const StateVector &ref) {
  if (keep.empty() || ref.n() != keep.size())
    throw std::invalid_argument(
        "partial_trace_fidelity: reference size must match kept qubits");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= s.n())
      throw std::invalid_argument("partial_trace_fidelity: qubit out of range");
    for (size_t j = i + 1; j < keep.size(); ++j)
      if (keep[i] == keep[j])
        throw std::invalid_argument("partial_trace_fidelity: repeated qubit");
  }
  uint32_t m = static_cast<uint32_t>(keep.size());
  std::vector<bool> kept(s.n(), false);
  for (uint32_t q : keep) kept[q] = true;
  std::vector<uint32_t> env;
  for (uint32_t q = 0; q < s.n(); ++q)
    if (!kept[q]) env.push_back(q);

  std::vector<cdouble> acc(size_t(1) << env.size(), cdouble(0, 0));
  for (size_t idx = 0; idx < s.dim(); ++idx) {
    cdouble a = s.amp(idx);
    if (a == cdouble(0, 0)) continue;
    size_t k = 0;
    for (uint32_t j = 0; j < m; ++j) {
      if (idx & (uint64_t(1) << (s.n() - 1 - keep[j])))
        k |= size_t(1) << (m - 1 - j);
    }
    size_t e = 0;
    for (size_t j = 0; j < env.size(); ++j) {
      if (idx & (uint64_t(1) << (s.n() - 1 - env[j]))) e |= size_t(1) << j;
    }
    acc[e] += std::conj(ref.amp(k)) * a;
  }
  double f = 0;
  for (const cdouble &c : acc) f += std::norm(c);
  // A probability by construction; shave the rounding excess above 1 so
  // noise-free pipelines report exactly 1.
  return f > 1.0 ? 1.0 : f;
}

}  // namespace qecw
