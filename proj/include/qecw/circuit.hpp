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
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecw/rng.hpp"
#include "qecw/statevec.hpp"

namespace qecw {

enum class GateKind : uint8_t { kH, kCnot, kPrep0, kMeasZ };

struct Gate {
  GateKind kind = GateKind::kH;
  uint32_t q0 = 0;  // H/PREP0/MEASZ target, CNOT control
  uint32_t q1 = 0;  // CNOT target only

  static Gate h(uint32_t q) { return {GateKind::kH, q, 0}; }
  static Gate cnot(uint32_t c, uint32_t t) { return {GateKind::kCnot, c, t}; }
  static Gate prep0(uint32_t q) { return {GateKind::kPrep0, q, 0}; }
  static Gate measz(uint32_t q) { return {GateKind::kMeasZ, q, 0}; }

  bool touches(uint32_t q) const {
    return q == q0 || (kind == GateKind::kCnot && q == q1);
  }

  std::string str() const {
    char buf[48];
    switch (kind) {
      case GateKind::kH:
        std::snprintf(buf, sizeof buf, "H %u", q0);
        break;
      case GateKind::kCnot:
        std::snprintf(buf, sizeof buf, "CNOT %u %u", q0, q1);
        break;
      case GateKind::kPrep0:
        std::snprintf(buf, sizeof buf, "PREP0 %u", q0);
        break;
      case GateKind::kMeasZ:
        std::snprintf(buf, sizeof buf, "MEASZ %u", q0);
        break;
    }
    return buf;
  }

  bool operator==(const Gate &o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1;
  }
};

// Ordered H/CNOT/PREP0/MEASZ network on a fixed qubit register.
struct CliffordCircuit {
  uint32_t n_qubits = 0;
  std::vector<Gate> gates;

  CliffordCircuit() = default;
  explicit CliffordCircuit(uint32_t n) : n_qubits(n) {}

  CliffordCircuit &add(Gate g) {
    check_gate(g);
    gates.push_back(g);
    return *this;
  }
  CliffordCircuit &h(uint32_t q) { return add(Gate::h(q)); }
  CliffordCircuit &cnot(uint32_t c, uint32_t t) { return add(Gate::cnot(c, t)); }
  CliffordCircuit &prep0(uint32_t q) { return add(Gate::prep0(q)); }
  CliffordCircuit &measz(uint32_t q) { return add(Gate::measz(q)); }

  size_t size() const { return gates.size(); }

  size_t count_measurements() const {
    size_t c = 0;
    for (const Gate &g : gates)
      if (g.kind == GateKind::kMeasZ) ++c;
    return c;
  }

  // Reverse of a purely unitary circuit (H and CNOT are involutions).
  CliffordCircuit inverted() const {
    CliffordCircuit inv(n_qubits);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      if (it->kind != GateKind::kH && it->kind != GateKind::kCnot)
        throw std::invalid_argument(
            "inverted: circuit contains non-unitary gates");
      inv.gates.push_back(*it);
    }
    return inv;
  }

  std::string str() const {
    std::string out;
    for (const Gate &g : gates) {
      out += g.str();
      out += '\n';
    }
    return out;
  }

  // One gate per line ("H 3", "CNOT 0 4", "PREP0 5", "MEASZ 5").  Blank
  // lines and '#' comments are skipped.  The register size is the smallest
  // one covering every index, or `min_qubits` if that is larger.
  static CliffordCircuit parse(const std::string &text,
                               uint32_t min_qubits = 0) {
    CliffordCircuit c(min_qubits);
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::string op;
      if (!(ls >> op)) continue;
      auto fail = [&](const char *what) {
        throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                    ": " + what);
      };
      auto read_qubit = [&]() -> uint32_t {
        long long q = -1;
        if (!(ls >> q) || q < 0 || q >= (1 << 24)) fail("expected qubit index");
        return static_cast<uint32_t>(q);
      };
      Gate g;
      if (op == "H") {
        g = Gate::h(read_qubit());
      } else if (op == "CNOT") {
        uint32_t a = read_qubit(), b = read_qubit();
        if (a == b) fail("CNOT control equals target");
        g = Gate::cnot(a, b);
      } else if (op == "PREP0") {
        g = Gate::prep0(read_qubit());
      } else if (op == "MEASZ") {
        g = Gate::measz(read_qubit());
      } else {
        fail("unknown gate (expected H, CNOT, PREP0, or MEASZ)");
      }
      std::string extra;
      if (ls >> extra) fail("trailing tokens");
      uint32_t top = std::max(g.q0, g.kind == GateKind::kCnot ? g.q1 : g.q0);
      c.n_qubits = std::max(c.n_qubits, top + 1);
      c.gates.push_back(g);
    }
    return c;
  }

  void check_gate(const Gate &g) const {
    if (g.q0 >= n_qubits ||
        (g.kind == GateKind::kCnot && (g.q1 >= n_qubits || g.q0 == g.q1)))
      throw std::invalid_argument("gate indices out of range: " + g.str());
  }
};

// Executes the circuit on a state vector.  PREP0 measures the qubit and
// flips it back to |0> when needed; MEASZ outcomes are appended to the
// returned list in program order.
inline std::vector<int> run_circuit(StateVector &state,
                                    const CliffordCircuit &circuit, Rng &rng) {
  if (circuit.n_qubits > state.n())
    throw std::invalid_argument("run_circuit: circuit wider than state");
  std::vector<int> measurements;
  for (const Gate &g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kH:
        state.apply_h(g.q0);
        break;
      case GateKind::kCnot:
        state.apply_cnot(g.q0, g.q1);
        break;
      case GateKind::kPrep0: {
        MeasureResult r = state.measure({g.q0}, rng);
        if (r.outcome & 1) state.apply_pauli(PauliOp::x(state.n(), g.q0));
        break;
      }
      case GateKind::kMeasZ: {
        MeasureResult r = state.measure({g.q0}, rng);
        measurements.push_back(static_cast<int>(r.outcome & 1));
        break;
      }
    }
  }
  return measurements;
}

}  // namespace qecw
