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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qecw/bitvec.hpp"

namespace qecw {

// n-qubit Pauli operator in binary-symplectic form:
//
//   P = i^phase_k * X_u * Z_v
//
// where X_u flips the qubits set in u and Z_v applies sign flips on the
// qubits set in v.  The single-qubit letter Y denotes the REAL product XZ
// (i.e. -i sigma_y), so Y*Y = -I and all letter-form operators have real
// matrix entries.  Qubit 0 is the leftmost letter in the string form.
struct PauliOp {
  BitVec u;  // X part
  BitVec v;  // Z part
  uint8_t phase_k = 0;  // power of i, 0..3

  PauliOp() = default;

  explicit PauliOp(uint32_t n) : u(n), v(n) {}

  uint32_t n() const { return u.size(); }

  static PauliOp identity(uint32_t n) { return PauliOp(n); }

  static PauliOp x(uint32_t n, uint32_t q) {
    PauliOp p(n);
    p.u.set(q, true);
    return p;
  }

  static PauliOp z(uint32_t n, uint32_t q) {
    PauliOp p(n);
    p.v.set(q, true);
    return p;
  }

  static PauliOp y(uint32_t n, uint32_t q) {
    PauliOp p(n);
    p.u.set(q, true);
    p.v.set(q, true);
    return p;
  }

  // X and Z supports as bit strings, sign +1.
  static PauliOp from_bits(const BitVec &u_bits, const BitVec &v_bits) {
    if (u_bits.size() != v_bits.size())
      throw std::invalid_argument("PauliOp: X and Z supports differ in length");
    PauliOp p;
    p.u = u_bits;
    p.v = v_bits;
    return p;
  }

  // Number of qubits acted on non-trivially.
  uint32_t weight() const {
    uint32_t c = 0;
    for (uint32_t i = 0; i < n(); ++i)
      if (u.get(i) || v.get(i)) ++c;
    return c;
  }

  bool is_identity() const { return !u.any() && !v.any() && phase_k == 0; }

  bool acts_trivially() const { return !u.any() && !v.any(); }

  std::complex<double> sign() const {
    switch (phase_k & 3) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }

  // Parses either the letter form ("XIZYX") or the support form
  // ("X_10011 Z_00110"), with an optional sign prefix +, -, i, +i, -i.
  static PauliOp from_string(std::string_view text);

  // Canonical letter form; a sign prefix appears only when the sign is not +1.
  std::string str() const {
    std::string s;
    switch (phase_k & 3) {
      case 1: s = "i"; break;
      case 2: s = "-"; break;
      case 3: s = "-i"; break;
      default: break;
    }
    for (uint32_t q = 0; q < n(); ++q) {
      bool xu = u.get(q), zv = v.get(q);
      s += xu ? (zv ? 'Y' : 'X') : (zv ? 'Z' : 'I');
    }
    return s;
  }

  // Support form "X_... Z_...".
  std::string str_support() const {
    std::string s;
    switch (phase_k & 3) {
      case 1: s = "i"; break;
      case 2: s = "-"; break;
      case 3: s = "-i"; break;
      default: break;
    }
    return s + "X_" + u.str() + " Z_" + v.str();
  }

  // 2n-bit wire form: u then v, little-endian bit order within each half,
  // packed into ceil(2n/8) bytes.  The phase is not serialized.
  std::vector<uint8_t> to_bytes() const {
    std::vector<uint8_t> out((2 * n() + 7) / 8, 0);
    u.for_each_set([&](uint32_t i) { out[i >> 3] |= 1u << (i & 7); });
    v.for_each_set([&](uint32_t i) {
      uint32_t b = n() + i;
      out[b >> 3] |= 1u << (b & 7);
    });
    return out;
  }

  static PauliOp from_bytes(uint32_t n, const std::vector<uint8_t> &bytes) {
    if (bytes.size() != (2 * static_cast<size_t>(n) + 7) / 8)
      throw std::invalid_argument("PauliOp::from_bytes: wrong byte count");
    PauliOp p(n);
    for (uint32_t b = 0; b < 2 * n; ++b) {
      if ((bytes[b >> 3] >> (b & 7)) & 1) {
        if (b < n) {
          p.u.set(b, true);
        } else {
          p.v.set(b - n, true);
        }
      }
    }
    return p;
  }

  bool operator==(const PauliOp &o) const {
    return u == o.u && v == o.v && phase_k == o.phase_k;
  }

  bool operator!=(const PauliOp &o) const { return !(*this == o); }
};

// True iff P and Q commute: the symplectic inner product
// (P.u . Q.v) + (P.v . Q.u) vanishes mod 2.
inline bool commutes(const PauliOp &p, const PauliOp &q) {
  if (p.n() != q.n())
    throw std::invalid_argument("commutes: operator sizes differ");
  return !(p.u.dot(q.v) ^ p.v.dot(q.u));
}

// Group product.  Moving Q's X part left through P's Z part contributes
// (-1)^(P.v . Q.u), accumulated into the power-of-i phase.
inline PauliOp operator*(const PauliOp &p, const PauliOp &q) {
  if (p.n() != q.n())
    throw std::invalid_argument("PauliOp product: operator sizes differ");
  PauliOp r;
  r.u = p.u ^ q.u;
  r.v = p.v ^ q.v;
  r.phase_k = static_cast<uint8_t>(
      (p.phase_k + q.phase_k + (p.v.dot(q.u) ? 2 : 0)) & 3);
  return r;
}

inline PauliOp multiply(const PauliOp &p, const PauliOp &q) { return p * q; }

namespace detail {

inline void parse_support_token(std::string_view tok, std::string &u_bits,
                                std::string &v_bits) {
  if (tok.size() < 2 || tok[1] != '_' || (tok[0] != 'X' && tok[0] != 'Z'))
    throw std::invalid_argument("Pauli parse: bad support token '" +
                                std::string(tok) + "'");
  std::string &dst = (tok[0] == 'X') ? u_bits : v_bits;
  if (!dst.empty())
    throw std::invalid_argument(std::string("Pauli parse: duplicate ") +
                                tok[0] + "_ support");
  dst = std::string(tok.substr(2));
  if (dst.empty())
    throw std::invalid_argument("Pauli parse: empty support bit string");
  for (char c : dst) {
    if (c != '0' && c != '1')
      throw std::invalid_argument(
          "Pauli parse: support bits may contain only 0 and 1");
  }
}

}  // namespace detail

inline PauliOp PauliOp::from_string(std::string_view text) {
  // Trim surrounding whitespace.
  size_t b = text.find_first_not_of(" \t\r\n");
  size_t e = text.find_last_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    throw std::invalid_argument("Pauli parse: empty string");
  text = text.substr(b, e - b + 1);

  bool neg = false, imag = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  if (!text.empty() && text[0] == 'i') {
    imag = true;
    text.remove_prefix(1);
    if (!text.empty() && text[0] == ' ') text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("Pauli parse: no operator body");

  uint8_t k = static_cast<uint8_t>((neg ? 2 : 0) + (imag ? 1 : 0));

  if (text.find('_') != std::string_view::npos) {
    // Support form: whitespace-separated X_/Z_ tokens.
    std::string u_bits, v_bits;
    size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
      if (pos >= text.size()) break;
      size_t end = pos;
      while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
      detail::parse_support_token(text.substr(pos, end - pos), u_bits, v_bits);
      pos = end;
    }
    if (u_bits.empty() && v_bits.empty())
      throw std::invalid_argument("Pauli parse: no support tokens");
    if (!u_bits.empty() && !v_bits.empty() && u_bits.size() != v_bits.size())
      throw std::invalid_argument(
          "Pauli parse: X and Z supports have different lengths (" +
          std::to_string(u_bits.size()) + " vs " + std::to_string(v_bits.size()) +
          ")");
    size_t n = u_bits.empty() ? v_bits.size() : u_bits.size();
    if (u_bits.empty()) u_bits.assign(n, '0');
    if (v_bits.empty()) v_bits.assign(n, '0');
    PauliOp p = from_bits(BitVec::from_string(u_bits), BitVec::from_string(v_bits));
    p.phase_k = k;
    return p;
  }

  PauliOp p(static_cast<uint32_t>(text.size()));
  for (uint32_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.u.set(q, true); break;
      case 'Z': p.v.set(q, true); break;
      case 'Y':
        p.u.set(q, true);
        p.v.set(q, true);
        break;
      default:
        throw std::invalid_argument(std::string("Pauli parse: unexpected '") +
                                    text[q] + "' at position " +
                                    std::to_string(q));
    }
  }
  p.phase_k = k;
  return p;
}

}  // namespace qecw
