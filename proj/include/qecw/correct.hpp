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
// Syndrome extraction, minimum-weight lookup decoding, and the exact
// encode -> noise -> extract -> correct -> decode pipeline on state
// vectors. Syndromes are read by appending one ancilla per stabilizer,
// copying the parity checks in with controlled gates and measuring the
// ancilla register once at the end.

#ifndef QECW_CORRECT_HPP_
#define QECW_CORRECT_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecw/bitvec.hpp"
#include "qecw/circuit.hpp"
#include "qecw/codes.hpp"
#include "qecw/noise.hpp"
#include "qecw/pauli.hpp"
#include "qecw/rng.hpp"
#include "qecw/statevec.hpp"

namespace qecw {

// Commutation pattern with the stabilizer generators: bit i is set iff the
// operator anticommutes with generator i.
inline BitVec syndrome_of(const PauliOp &error, const StabilizerCode &code) {
  if (error.u.size() != code.n)
    throw std::invalid_argument("syndrome_of: operator width != code n");
  BitVec syn(uint32_t(code.stabilizers.size()));
  for (uint32_t i = 0; i < code.stabilizers.size(); ++i)
    if (symplectic(error, code.stabilizers[i])) syn.set(i, true);
  return syn;
}

// Same pattern packed little-endian into a table index (bit i = generator i).
inline size_t syndrome_index(const PauliOp &error, const StabilizerCode &code) {
  return size_t(syndrome_of(error, code).low64());
}

// Exhaustive coset-leader decoder: one minimum-weight correction per
// syndrome, ties broken lexicographically on the concatenated (u, v) bits.
struct SyndromeTable {
  uint32_t n = 0;
  uint32_t n_checks = 0;
  std::vector<PauliOp> entries;  // indexed by little-endian syndrome bits

  const PauliOp &lookup(size_t index) const {
    if (index >= entries.size())
      throw std::invalid_argument("SyndromeTable: syndrome index out of range");
    return entries[index];
  }

  const PauliOp &lookup(const BitVec &syndrome) const {
    if (syndrome.size() != n_checks)
      throw std::invalid_argument("SyndromeTable: syndrome width mismatch");
    return lookup(size_t(syndrome.low64()));
  }
};

inline SyndromeTable build_decoder(const StabilizerCode &code) {
  uint32_t r = uint32_t(code.stabilizers.size());
  if (r > 20)
    throw std::invalid_argument(
        "build_decoder: more than 20 checks, table would not fit");
  size_t size = size_t(1) << r;
  SyndromeTable table;
  table.n = code.n;
  table.n_checks = r;
  table.entries.assign(size, PauliOp::identity(code.n));
  std::vector<uint32_t> weight_of(size, 0);
  std::vector<uint8_t> have(size, 0);
  have[0] = 1;  // identity owns the zero syndrome
  size_t filled = 1;

  // Walk weight classes in order; finish each class before stopping so the
  // lexicographic tie-break sees every same-weight candidate.
  for (uint32_t w = 1; w <= code.n && filled < size; ++w) {
    std::vector<uint32_t> supp(w);
    std::iota(supp.begin(), supp.end(), 0);
    while (true) {
      std::vector<int> types(w, 0);  // 0 = X, 1 = Y, 2 = Z on supp[j]
      while (true) {
        PauliOp cand = PauliOp::identity(code.n);
        for (uint32_t j = 0; j < w; ++j) {
          if (types[j] != 2) cand.u.set(supp[j], true);
          if (types[j] != 0) cand.v.set(supp[j], true);
        }
        size_t idx = syndrome_index(cand, code);
        if (!have[idx]) {
          table.entries[idx] = cand;
          weight_of[idx] = w;
          have[idx] = 1;
          ++filled;
        } else if (idx != 0 && weight_of[idx] == w) {
          BitVec cand_key = BitVec::concat(cand.u, cand.v);
          BitVec old_key = BitVec::concat(table.entries[idx].u,
                                          table.entries[idx].v);
          if (cand_key.lex_less(old_key)) table.entries[idx] = cand;
        }
        uint32_t bump = 0;
        while (bump < w && ++types[bump] == 3) types[bump++] = 0;
        if (bump == w) break;
      }
      // Next support combination in lexicographic order.
      uint32_t j = w;
      while (j > 0 && supp[j - 1] == code.n - (w - (j - 1))) --j;
      if (j == 0) break;
      ++supp[j - 1];
      for (uint32_t i = j; i < w; ++i) supp[i] = supp[i - 1] + 1;
    }
  }
  if (filled != size)
    throw std::logic_error("build_decoder: some syndromes unreachable");
  return table;
}

// "syndrome,correction" rows, one per table entry, syndromes in index order
// with bit 0 (generator 0) leftmost.
inline std::string decoder_csv(const SyndromeTable &table) {
  std::string out = "syndrome,correction\n";
  for (size_t idx = 0; idx < table.entries.size(); ++idx) {
    BitVec syn(table.n_checks);
    for (uint32_t i = 0; i < table.n_checks; ++i)
      if (idx & (size_t(1) << i)) syn.set(i, true);
    out += syn.str();
    out += ',';
    out += table.entries[idx].str();
    out += '\n';
  }
  return out;
}

enum class ResidualClass { kStabilizer, kLogical };

// Classifies error * correction when both share a syndrome: membership in
// the stabilizer row space means success, anything else acts on the coded
// information.
inline ResidualClass residual_class(const PauliOp &error,
                                    const PauliOp &correction,
                                    const StabilizerCode &code) {
  if (syndrome_of(error, code) != syndrome_of(correction, code))
    throw std::invalid_argument(
        "residual_class: error and correction have different syndromes");
  PauliOp residual = error * correction;
  return PauliSpan(code.stabilizers).contains(residual)
             ? ResidualClass::kStabilizer
             : ResidualClass::kLogical;
}

// Fast residual test for zero-syndrome operators: the logical pairing
// word is nonzero exactly when the residual acts on the coded qubits.
// Bit j is the commutation with logical Z_j (an X-type action), bit k+j
// the commutation with logical X_j (a Z-type action).
class ResidualClassifier {
 public:
  explicit ResidualClassifier(const StabilizerCode &code)
      : logical_x_(code.logical_x), logical_z_(code.logical_z) {}

  uint32_t pair_word(const PauliOp &residual) const {
    uint32_t word = 0;
    uint32_t k = uint32_t(logical_z_.size());
    for (uint32_t j = 0; j < k; ++j)
      if (symplectic(residual, logical_z_[j])) word |= 1u << j;
    for (uint32_t j = 0; j < logical_x_.size(); ++j)
      if (symplectic(residual, logical_x_[j])) word |= 1u << (k + j);
    return word;
  }

  bool is_failure(const PauliOp &residual) const {
    return pair_word(residual) != 0;
  }

 private:
  std::vector<PauliOp> logical_x_;
  std::vector<PauliOp> logical_z_;
};

// One ancilla per generator starting at ancilla_start: Z-checks copy
// parity onto the ancilla with CNOTs, checks with X components use a
// Hadamard-conjugated ancilla as the control (Z letters become controlled
// phases via basis rotation). Every ancilla is measured at the very end.
inline CliffordCircuit build_extraction_circuit(const StabilizerCode &code,
                                                uint32_t ancilla_start) {
  if (ancilla_start < code.n)
    throw std::invalid_argument(
        "build_extraction_circuit: ancillas overlap the data register");
  uint32_t r = uint32_t(code.stabilizers.size());
  CliffordCircuit c;
  c.n_qubits = ancilla_start + r;
  for (uint32_t i = 0; i < r; ++i) {
    uint32_t a = ancilla_start + i;
    const PauliOp &s = code.stabilizers[i];
    c.prep0(a);
    if (!s.u.any()) {
      for (uint32_t q = 0; q < code.n; ++q)
        if (s.v.get(q)) c.cnot(q, a);
    } else {
      c.h(a);
      for (uint32_t q = 0; q < code.n; ++q) {
        bool x = s.u.get(q), z = s.v.get(q);
        if (x && z)
          throw std::invalid_argument(
              "build_extraction_circuit: Y components need gates outside "
              "H/CNOT");
        if (x) {
          c.cnot(a, q);
        } else if (z) {
          c.h(q);
          c.cnot(a, q);
          c.h(q);
        }
      }
      c.h(a);
    }
  }
  for (uint32_t i = 0; i < r; ++i) c.measz(ancilla_start + i);
  return c;
}

// Appends and measures the check ancillas in place; bit i of the result is
// the outcome for generator i. Environment qubits past the data register
// are left untouched.
inline BitVec extract_syndrome_exact(StateVector &state,
                                     const StabilizerCode &code, Rng &rng) {
  if (state.n() < code.n)
    throw std::invalid_argument("extract_syndrome_exact: state too narrow");
  uint32_t a0 = state.n();
  uint32_t r = uint32_t(code.stabilizers.size());
  for (uint32_t i = 0; i < r; ++i) state.append_qubit();
  std::vector<int> bits = run_circuit(state, build_extraction_circuit(code, a0),
                                      rng);
  BitVec syn(r);
  for (uint32_t i = 0; i < r; ++i)
    if (bits[i]) syn.set(i, true);
  return syn;
}

struct PipelineOptions {
  cdouble a = cdouble(0.7071067811865475244, 0);
  cdouble b = cdouble(0.7071067811865475244, 0);
  // Rotate every data qubit with H before and after the channel so that
  // phase noise is read in the flip basis.
  bool hadamard_trick = false;
};

struct PipelineResult {
  double fidelity = 0;
  BitVec syndrome;
  PauliOp correction;
  bool corrected = false;  // a nonzero correction was applied
};

namespace detail {

inline PauliOp widen(const PauliOp &p, uint32_t width) {
  PauliOp wide = PauliOp::identity(width);
  p.u.for_each_set([&](uint32_t i) { wide.u.set(i, true); });
  p.v.for_each_set([&](uint32_t i) { wide.v.set(i, true); });
  wide.phase_k = p.phase_k;
  return wide;
}

inline StateVector encoded_input(const StabilizerCode &code, cdouble a,
                                 cdouble b, Rng &rng) {
  if (!code.encoder)
    throw std::invalid_argument("pipeline: code has no encoder circuit");
  if (std::abs(std::norm(a) + std::norm(b) - 1) > 1e-9)
    throw std::invalid_argument("pipeline: |a|^2 + |b|^2 must be 1");
  std::vector<cdouble> amps(size_t(1) << code.n, cdouble(0, 0));
  amps[0] = a;
  amps[size_t(1) << (code.n - 1)] = b;  // qubit 0 set, others |0>
  StateVector s = StateVector::from_amplitudes(code.n, std::move(amps));
  run_circuit(s, *code.encoder, rng);
  return s;
}

inline PipelineResult finish_pipeline(StateVector &s,
                                      const StabilizerCode &code,
                                      const SyndromeTable &table, Rng &rng,
                                      cdouble a, cdouble b) {
  PipelineResult res;
  res.syndrome = extract_syndrome_exact(s, code, rng);
  res.correction = table.lookup(res.syndrome);
  res.corrected = !res.correction.is_identity();
  if (res.corrected) s.apply_pauli(widen(res.correction, s.n()));
  run_circuit(s, code.encoder->inverted(), rng);
  res.fidelity = partial_trace_fidelity(s, {0}, StateVector::qubit(a, b));
  return res;
}

}  // namespace detail

// Encodes a|0..0> + b|10..0>, damages the listed data qubits with the
// channel, extracts the syndrome, applies the table correction, undoes the
// encoder and reports the fidelity of data qubit 0 against (a, b) with
// everything else traced out.
inline PipelineResult run_pipeline_on_qubits(const StabilizerCode &code,
                                             const NoiseModel &model,
                                             const std::vector<uint32_t> &qubits,
                                             const SyndromeTable &table,
                                             Rng &rng,
                                             const PipelineOptions &opts = {}) {
  for (uint32_t q : qubits)
    if (q >= code.n)
      throw std::invalid_argument("run_pipeline_on_qubits: qubit out of range");
  StateVector s = detail::encoded_input(code, opts.a, opts.b, rng);
  if (opts.hadamard_trick)
    for (uint32_t q = 0; q < code.n; ++q) s.apply_h(q);
  apply_channel(model, s, qubits, rng);
  if (opts.hadamard_trick)
    for (uint32_t q = 0; q < code.n; ++q) s.apply_h(q);
  return detail::finish_pipeline(s, code, table, rng, opts.a, opts.b);
}

// Same pipeline with the channel on every data qubit.
inline PipelineResult run_pipeline_exact(const StabilizerCode &code,
                                         const NoiseModel &model,
                                         const SyndromeTable &table, Rng &rng,
                                         const PipelineOptions &opts = {}) {
  std::vector<uint32_t> data(code.n);
  std::iota(data.begin(), data.end(), 0);
  return run_pipeline_on_qubits(code, model, data, table, rng, opts);
}

// Same pipeline with one fixed injected error instead of sampled noise.
inline PipelineResult run_pipeline_with_error(const StabilizerCode &code,
                                              const PauliOp &error,
                                              const SyndromeTable &table,
                                              Rng &rng,
                                              const PipelineOptions &opts = {}) {
  if (error.u.size() != code.n)
    throw std::invalid_argument("run_pipeline_with_error: width mismatch");
  StateVector s = detail::encoded_input(code, opts.a, opts.b, rng);
  s.apply_pauli(error);
  return detail::finish_pipeline(s, code, table, rng, opts.a, opts.b);
}

// Applies an arbitrary single-qubit operator followed by an entangling
// channel on one chosen qubit, then corrects. Used to demonstrate that
// syndrome projection digitizes any one-qubit disturbance.
inline PipelineResult run_pipeline_with_unitary(
    const StabilizerCode &code, const std::vector<cdouble> &u2, uint32_t qubit,
    const SyndromeTable &table, Rng &rng, const PipelineOptions &opts = {}) {
  StateVector s = detail::encoded_input(code, opts.a, opts.b, rng);
  s.apply_unitary({qubit}, u2);
  return detail::finish_pipeline(s, code, table, rng, opts.a, opts.b);
}

}  // namespace qecw

#endif  // QECW_CORRECT_HPP_
