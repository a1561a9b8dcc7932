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
// Pauli-frame fault tracking through Clifford networks: conjugate errors
// gate by gate, collect measurement flips, and exhaustively enumerate the
// single faults and fault pairs that defeat a syndrome-extraction circuit.

#ifndef QECW_FTTRACK_HPP_
#define QECW_FTTRACK_HPP_

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecw/bitvec.hpp"
#include "qecw/circuit.hpp"
#include "qecw/codes.hpp"
#include "qecw/correct.hpp"
#include "qecw/pauli.hpp"

namespace qecw {

// g P g^-1 for the unitary gates. H swaps X and Z on its qubit (taking
// Y to -Y); CNOT copies X from control to target and Z from target to
// control. Signs are tracked exactly.
inline PauliOp conjugate_pauli(const Gate &g, PauliOp p) {
  switch (g.kind) {
    case GateKind::kH: {
      if (g.q0 >= p.u.size())
        throw std::invalid_argument("conjugate_pauli: qubit out of range");
      bool x = p.u.get(g.q0), z = p.v.get(g.q0);
      if (x && z) p.phase_k = uint8_t((p.phase_k + 2) & 3);
      p.u.set(g.q0, z);
      p.v.set(g.q0, x);
      return p;
    }
    case GateKind::kCnot: {
      if (g.q0 >= p.u.size() || g.q1 >= p.u.size())
        throw std::invalid_argument("conjugate_pauli: qubit out of range");
      if (p.u.get(g.q0)) p.u.flip(g.q1);
      if (p.v.get(g.q1)) p.v.flip(g.q0);
      return p;
    }
    default:
      throw std::invalid_argument("conjugate_pauli: gate is not unitary");
  }
}

// A Pauli fault injected after gate `after_gate` (-1 = before the first
// gate). The fault operator spans all circuit qubits.
struct FaultSite {
  int after_gate = -1;
  PauliOp fault;
};

struct PropagationResult {
  PauliOp final_error;      // residual frame on all circuit qubits
  BitVec measurement_flips;  // one bit per MEASZ gate, program order
};

// Walks the circuit once, conjugating the accumulated frame through each
// unitary gate. PREP0 discards any error on its qubit; MEASZ records
// whether the frame's X component flips the outcome, then discards the
// qubit's error.
inline PropagationResult propagate(const CliffordCircuit &circuit,
                                   const std::vector<FaultSite> &faults) {
  int m = int(circuit.gates.size());
  for (const FaultSite &f : faults) {
    if (f.after_gate < -1 || f.after_gate >= m)
      throw std::invalid_argument("propagate: fault location out of range");
    if (f.fault.u.size() != circuit.n_qubits)
      throw std::invalid_argument("propagate: fault width != circuit width");
  }
  PropagationResult res;
  res.final_error = PauliOp::identity(circuit.n_qubits);
  res.measurement_flips = BitVec(uint32_t(circuit.count_measurements()));
  uint32_t meas_i = 0;
  auto inject = [&](int loc) {
    for (const FaultSite &f : faults)
      if (f.after_gate == loc) res.final_error = f.fault * res.final_error;
  };
  inject(-1);
  for (int g = 0; g < m; ++g) {
    const Gate &gate = circuit.gates[g];
    switch (gate.kind) {
      case GateKind::kH:
      case GateKind::kCnot:
        res.final_error = conjugate_pauli(gate, res.final_error);
        break;
      case GateKind::kPrep0:
        res.final_error.u.set(gate.q0, false);
        res.final_error.v.set(gate.q0, false);
        break;
      case GateKind::kMeasZ:
        if (res.final_error.u.get(gate.q0))
          res.measurement_flips.set(meas_i, true);
        ++meas_i;
        res.final_error.u.set(gate.q0, false);
        res.final_error.v.set(gate.q0, false);
        break;
    }
    inject(g);
  }
  return res;
}

enum class FaultOutcome { kClean, kDetectable, kLogical };

/// Single-round verdict on what one extraction pass leaves behind: the
// residual after applying the correction chosen by the (possibly faulty)
// measured syndrome. A nonzero true syndrome is detectable by a later
// round; a zero-syndrome residual is either harmless or silently logical.
inline FaultOutcome classify_extraction_residual(
    const PropagationResult &pr, const StabilizerCode &code,
    const SyndromeTable &table, const ResidualClassifier &cls) {
  PauliOp data = PauliOp::from_bits(pr.final_error.u.slice(0, code.n),
                                    pr.final_error.v.slice(0, code.n));
  const PauliOp &corr = table.lookup(size_t(pr.measurement_flips.low64()));
  PauliOp residual = data * corr;
  if (syndrome_of(residual, code).any()) return FaultOutcome::kDetectable;
  return cls.is_failure(residual) ? FaultOutcome::kLogical
                                  : FaultOutcome::kClean;
}

enum class FaultAlphabet { kXYZ, kXOnly, kZOnly };

struct PathCountOptions {
  uint32_t max_faults = 2;  // 1 = singles only, 2 = singles and pairs
  FaultAlphabet alphabet = FaultAlphabet::kXYZ;
  uint64_t pair_budget = 200000;  // enumeration guard
};

struct OutcomeTally {
  uint64_t clean = 0;
  uint64_t detectable = 0;
  uint64_t logical = 0;
  uint64_t total() const { return clean + detectable + logical; }
};

struct FailurePath {
  uint32_t n_faults = 0;
  std::string locations;  // e.g. "g4[X0] g9[Z3 X10]"
  std::string residual;   // letter form of the post-correction data error
};

struct PathCounts {
  OutcomeTally singles;
  OutcomeTally pairs;
  std::vector<FailurePath> logical_paths;
};

namespace detail {

struct FaultCandidate {
  uint32_t gate = 0;
  FaultSite site;
  std::string label;
};

// One candidate per gate and per non-identity Pauli pattern on the gate's
// qubits. MEASZ faults are injected before the measurement (a readout
// flip); everything else corrupts the gate's output.
inline std::vector<FaultCandidate> enumerate_fault_candidates(
    const CliffordCircuit &circuit, FaultAlphabet alphabet) {
  std::vector<char> letters;
  switch (alphabet) {
    case FaultAlphabet::kXYZ: letters = {'X', 'Y', 'Z'}; break;
    case FaultAlphabet::kXOnly: letters = {'X'}; break;
    case FaultAlphabet::kZOnly: letters = {'Z'}; break;
  }
  auto apply_letter = [](PauliOp &p, uint32_t q, char letter) {
    if (letter != 'Z') p.u.set(q, true);
    if (letter != 'X') p.v.set(q, true);
  };
  std::vector<FaultCandidate> out;
  for (uint32_t g = 0; g < circuit.gates.size(); ++g) {
    const Gate &gate = circuit.gates[g];
    std::vector<uint32_t> touched = {gate.q0};
    if (gate.kind == GateKind::kCnot) touched.push_back(gate.q1);
    int inject_at = gate.kind == GateKind::kMeasZ ? int(g) - 1 : int(g);
    size_t options = letters.size() + 1;  // identity included, skipped below
    size_t combos = touched.size() == 2 ? options * options : options;
    for (size_t c = 1; c < combos; ++c) {
      FaultCandidate cand;
      cand.gate = g;
      cand.site.after_gate = inject_at;
      cand.site.fault = PauliOp::identity(circuit.n_qubits);
      char buf[64];
      std::snprintf(buf, sizeof buf, "g%u[", g);
      cand.label = buf;
      size_t rem = c;
      bool first = true;
      for (uint32_t qi = 0; qi < touched.size(); ++qi) {
        size_t pick = rem % options;
        rem /= options;
        if (pick == 0) continue;
        char letter = letters[pick - 1];
        apply_letter(cand.site.fault, touched[qi], letter);
        std::snprintf(buf, sizeof buf, "%s%c%u", first ? "" : " ", letter,
                      touched[qi]);
        cand.label += buf;
        first = false;
      }
      cand.label += ']';
      out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace detail

// Exhaustively runs every single fault (and, when max_faults = 2, every
// pair of faults at distinct gates) through the extraction circuit,
// corrects with the measured syndrome and tallies the outcomes.
inline PathCounts count_failure_paths(const CliffordCircuit &circuit,
                                      const StabilizerCode &code,
                                      const SyndromeTable &table,
                                      const PathCountOptions &opts = {}) {
  if (opts.max_faults < 1 || opts.max_faults > 2)
    throw std::invalid_argument("count_failure_paths: max_faults must be 1-2");
  if (circuit.count_measurements() != code.stabilizers.size())
    throw std::invalid_argument(
        "count_failure_paths: circuit does not measure one ancilla per "
        "stabilizer");
  std::vector<detail::FaultCandidate> cands =
      detail::enumerate_fault_candidates(circuit, opts.alphabet);
  ResidualClassifier cls(code);
  PathCounts counts;

  auto tally = [&](const std::vector<FaultSite> &faults, OutcomeTally *bucket,
                   const std::string &label) {
    PropagationResult pr = propagate(circuit, faults);
    FaultOutcome out = classify_extraction_residual(pr, code, table, cls);
    switch (out) {
      case FaultOutcome::kClean: ++bucket->clean; break;
      case FaultOutcome::kDetectable: ++bucket->detectable; break;
      case FaultOutcome::kLogical: {
        ++bucket->logical;
        PauliOp data = PauliOp::from_bits(pr.final_error.u.slice(0, code.n),
                                          pr.final_error.v.slice(0, code.n));
        const PauliOp &corr = table.lookup(
            size_t(pr.measurement_flips.low64()));
        FailurePath path;
        path.n_faults = uint32_t(faults.size());
        path.locations = label;
        PauliOp res = data * corr;
        res.phase_k = 0;  // report the error class; sign is convention noise
        path.residual = res.str();
        counts.logical_paths.push_back(std::move(path));
        break;
      }
    }
  };

  for (const detail::FaultCandidate &c : cands)
    tally({c.site}, &counts.singles, c.label);

  if (opts.max_faults >= 2) {
    uint64_t n_pairs = 0;
    for (size_t i = 0; i < cands.size(); ++i)
      for (size_t j = i + 1; j < cands.size(); ++j)
        if (cands[i].gate != cands[j].gate) ++n_pairs;
    if (n_pairs > opts.pair_budget) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "count_failure_paths: %llu pairs exceed budget %llu",
                    static_cast<unsigned long long>(n_pairs),
                    static_cast<unsigned long long>(opts.pair_budget));
      throw std::invalid_argument(msg);
    }
    for (size_t i = 0; i < cands.size(); ++i) {
      for (size_t j = i + 1; j < cands.size(); ++j) {
        if (cands[i].gate == cands[j].gate) continue;
        tally({cands[i].site, cands[j].site}, &counts.pairs,
              cands[i].label + " " + cands[j].label);
      }
    }
  }
  return counts;
}

/// Failure report: one row per silently-logical fault combination.
inline std::string failure_paths_csv(const PathCounts &counts) {
  std::string out = "weight,locations,residual\n";
  for (const FailurePath &p : counts.logical_paths) {
    char head[16];
    std::snprintf(head, sizeof head, "%u,", p.n_faults);
    out += head;
    out += p.locations;
    out += ',';
    out += p.residual;
    out += '\n';
  }
  return out;
}

}  // namespace qecw

#endif  // QECW_FTTRACK_HPP_
