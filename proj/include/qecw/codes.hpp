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
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qecw/bitvec.hpp"
#include "qecw/circuit.hpp"
#include "qecw/gf2.hpp"
#include "qecw/pauli.hpp"

namespace qecw {

// ---------------------------------------------------------------------------
// Classical linear codes
// ---------------------------------------------------------------------------

struct ClassicalCode {
  uint32_t n = 0;  // block length
  uint32_t k = 0;  // dimension
  std::vector<BitVec> gen;  // k x n generator rows
  std::vector<BitVec> chk;  // (n-k) x n parity-check rows
  std::optional<uint32_t> d;
};

namespace detail {

inline void check_matrix_width(const std::vector<BitVec> &rows, uint32_t n,
                               const char *what) {
  for (const BitVec &r : rows) {
    if (r.size() != n)
      throw std::invalid_argument(std::string(what) +
                                  ": row length does not match n");
  }
}

}  // namespace detail

inline ClassicalCode classical_from_generator(uint32_t n,
                                              std::vector<BitVec> gen_rows) {
  detail::check_matrix_width(gen_rows, n, "classical_from_generator");
  if (gf2_rank(gen_rows) != gen_rows.size())
    throw std::invalid_argument(
        "classical_from_generator: generator rows are not independent");
  ClassicalCode c;
  c.n = n;
  c.k = static_cast<uint32_t>(gen_rows.size());
  c.gen = std::move(gen_rows);
  c.chk = gf2_nullspace(c.gen, n);
  return c;
}

inline ClassicalCode classical_from_check(uint32_t n,
                                          std::vector<BitVec> chk_rows) {
  detail::check_matrix_width(chk_rows, n, "classical_from_check");
  if (gf2_rank(chk_rows) != chk_rows.size())
    throw std::invalid_argument(
        "classical_from_check: check rows are not independent");
  if (chk_rows.size() >= n)
    throw std::invalid_argument("classical_from_check: dimension would be 0");
  ClassicalCode c;
  c.n = n;
  c.k = n - static_cast<uint32_t>(chk_rows.size());
  c.chk = std::move(chk_rows);
  c.gen = gf2_nullspace(c.chk, n);
  return c;
}

// Minimum Hamming weight over the 2^k - 1 nonzero codewords.
inline uint32_t classical_min_distance(const ClassicalCode &c) {
  if (c.k > 24)
    throw std::invalid_argument("classical_min_distance: k too large");
  uint32_t best = c.n + 1;
  for (uint64_t msg = 1; msg < (uint64_t(1) << c.k); ++msg) {
    BitVec word(c.n);
    for (uint32_t i = 0; i < c.k; ++i)
      if ((msg >> i) & 1) word ^= c.gen[i];
    best = std::min(best, static_cast<uint32_t>(word.popcount()));
  }
  return best;
}

// The [7,4,3] single-error-correcting code with the standard parity checks.
inline ClassicalCode hamming74() {
  ClassicalCode c = classical_from_check(
      7, {BitVec::from_string("1010101"), BitVec::from_string("0110011"),
          BitVec::from_string("0001111")});
  c.d = 3;
  return c;
}

// ---------------------------------------------------------------------------
// Stabilizer codes
// ---------------------------------------------------------------------------

struct StabilizerCode {
  uint32_t n = 0;
  uint32_t k = 0;
  std::optional<uint32_t> d;  // unknown until computed or explicitly trusted
  std::vector<PauliOp> stabilizers;        // n-k commuting generators, sign +1
  std::vector<PauliOp> logical_x;          // k operators, paired with logical_z
  std::vector<PauliOp> logical_z;
  std::optional<CliffordCircuit> encoder;  // |psi>|0...0> -> logical state
};

// 0 when the operators commute, 1 when they anticommute.
inline int symplectic(const PauliOp &p, const PauliOp &q) {
  return commutes(p, q) ? 0 : 1;
}

// GF(2) row space of Pauli (u|v) words; membership is phase-blind.
class PauliSpan {
 public:
  explicit PauliSpan(const std::vector<PauliOp> &ops) {
    for (const PauliOp &p : ops) rows_.push_back(BitVec::concat(p.u, p.v));
    pivots_ = gf2_rref(rows_);
  }

  bool contains(const PauliOp &p) const {
    return gf2_in_span(rows_, pivots_, BitVec::concat(p.u, p.v));
  }

 private:
  std::vector<BitVec> rows_;
  std::vector<uint32_t> pivots_;
};

// True when every generator is purely X-type or purely Z-type.
inline bool is_css(const StabilizerCode &code) {
  for (const PauliOp &s : code.stabilizers)
    if (s.u.any() && s.v.any()) return false;
  return true;
}

// Checks every structural invariant; throws with the offending indices.
inline void validate_stabilizer_code(const StabilizerCode &code) {
  auto fail = [](const std::string &msg) {
    throw std::invalid_argument("stabilizer code: " + msg);
  };
  if (code.n == 0) fail("n must be positive");
  if (code.k == 0 || code.k > code.n) fail("k must be in [1, n]");
  if (code.stabilizers.size() != code.n - code.k)
    fail("expected " + std::to_string(code.n - code.k) + " generators, got " +
         std::to_string(code.stabilizers.size()));
  for (size_t i = 0; i < code.stabilizers.size(); ++i) {
    const PauliOp &s = code.stabilizers[i];
    if (s.n() != code.n) fail("generator " + std::to_string(i) + " has wrong length");
    if (s.phase_k != 0) fail("generator " + std::to_string(i) + " must have sign +1");
    if (s.is_identity()) fail("generator " + std::to_string(i) + " is the identity");
  }
  for (size_t i = 0; i < code.stabilizers.size(); ++i) {
    for (size_t j = i + 1; j < code.stabilizers.size(); ++j) {
      if (symplectic(code.stabilizers[i], code.stabilizers[j]))
        fail("generators " + std::to_string(i) + " and " + std::to_string(j) +
             " anticommute");
    }
  }
  {
    std::vector<BitVec> rows;
    for (const PauliOp &s : code.stabilizers)
      rows.push_back(BitVec::concat(s.u, s.v));
    if (gf2_rank(rows) != code.stabilizers.size())
      fail("generators are not independent");
  }
  if (code.logical_x.size() != code.k || code.logical_z.size() != code.k)
    fail("expected " + std::to_string(code.k) + " logical X/Z pairs");
  auto check_logical = [&](const PauliOp &l, const std::string &name) {
    if (l.n() != code.n) fail(name + " has wrong length");
    for (size_t s = 0; s < code.stabilizers.size(); ++s) {
      if (symplectic(l, code.stabilizers[s]))
        fail(name + " anticommutes with generator " + std::to_string(s));
    }
  };
  for (size_t i = 0; i < code.k; ++i) {
    check_logical(code.logical_x[i], "logical X " + std::to_string(i));
    check_logical(code.logical_z[i], "logical Z " + std::to_string(i));
  }
  for (size_t i = 0; i < code.k; ++i) {
    for (size_t j = 0; j < code.k; ++j) {
      int want = (i == j) ? 1 : 0;
      if (symplectic(code.logical_x[i], code.logical_z[j]) != want)
        fail("logical X " + std::to_string(i) + " / logical Z " +
             std::to_string(j) + " pairing is wrong");
      if (j > i) {
        if (symplectic(code.logical_x[i], code.logical_x[j]))
          fail("logical X operators " + std::to_string(i) + " and " +
               std::to_string(j) + " anticommute");
        if (symplectic(code.logical_z[i], code.logical_z[j]))
          fail("logical Z operators " + std::to_string(i) + " and " +
               std::to_string(j) + " anticommute");
      }
    }
  }
  if (code.encoder) {
    if (code.encoder->n_qubits != code.n) fail("encoder register size is wrong");
    for (const Gate &g : code.encoder->gates) {
      if (g.kind != GateKind::kH && g.kind != GateKind::kCnot)
        fail("encoder must be unitary (H/CNOT only)");
    }
  }
}

// CSS code from Z-type rows and X-type rows (stored verbatim, Z first).
// Logical operators and the encoding circuit come from a deterministic
// standard-form reduction; ties always resolve toward the lowest qubit index.
inline StabilizerCode build_css_code(uint32_t n, std::vector<BitVec> z_rows,
                                     std::vector<BitVec> x_rows) {
  detail::check_matrix_width(z_rows, n, "build_css_code z rows");
  detail::check_matrix_width(x_rows, n, "build_css_code x rows");
  for (size_t i = 0; i < z_rows.size(); ++i) {
    for (size_t j = 0; j < x_rows.size(); ++j) {
      if (z_rows[i].dot(x_rows[j]))
        throw std::invalid_argument("build_css_code: Z row " +
                                    std::to_string(i) + " and X row " +
                                    std::to_string(j) + " overlap oddly");
    }
  }
  std::vector<BitVec> gz = z_rows, gx = x_rows;
  std::vector<uint32_t> pz = gf2_rref(gz), px = gf2_rref(gx);
  if (gz.size() != z_rows.size())
    throw std::invalid_argument("build_css_code: Z rows are not independent");
  if (gx.size() != x_rows.size())
    throw std::invalid_argument("build_css_code: X rows are not independent");
  uint32_t r = static_cast<uint32_t>(gz.size() + gx.size());
  if (r >= n)
    throw std::invalid_argument("build_css_code: no logical qubits remain");
  uint32_t k = n - r;

  // Logical X representatives: X-type words orthogonal to every Z row,
  // reduced modulo the X-stabilizer row space, in RREF.
  std::vector<BitVec> lx = gf2_nullspace(gz, n);
  for (BitVec &v : lx) v = gf2_reduce(gx, px, v);
  std::vector<uint32_t> lx_piv = gf2_rref(lx);
  if (lx.size() != k)
    throw std::invalid_argument("build_css_code: logical X extraction failed");

  // Logical Z candidates: same construction on the other side.
  std::vector<BitVec> lzc = gf2_nullspace(gx, n);
  for (BitVec &v : lzc) v = gf2_reduce(gz, pz, v);
  gf2_rref(lzc);
  if (lzc.size() != k)
    throw std::invalid_argument("build_css_code: logical Z extraction failed");

  // Re-mix the Z side so that lx[i] and lz[j] overlap oddly exactly at i==j.
  std::vector<BitVec> mt(k, BitVec(k));  // mt[j] bit i = lx[i] . lzc[j]
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j)
      if (lx[i].dot(lzc[j])) mt[j].set(i, true);
  std::vector<BitVec> w;
  try {
    w = gf2_invert(mt);
  } catch (const std::invalid_argument &) {
    throw std::invalid_argument("build_css_code: logical pairing is singular");
  }
  std::vector<BitVec> lz(k, BitVec(n));
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j)
      if (w[i].get(j)) lz[i] ^= lzc[j];

  StabilizerCode code;
  code.n = n;
  code.k = k;
  for (const BitVec &row : z_rows)
    code.stabilizers.push_back(PauliOp::from_bits(BitVec(n), row));
  for (const BitVec &row : x_rows)
    code.stabilizers.push_back(PauliOp::from_bits(row, BitVec(n)));
  for (uint32_t i = 0; i < k; ++i) {
    code.logical_x.push_back(PauliOp::from_bits(lx[i], BitVec(n)));
    code.logical_z.push_back(PauliOp::from_bits(BitVec(n), lz[i]));
  }

  // Encoder, standard form.  Logical input i arrives on qubit i and is moved
  // to the pivot of its logical X row; the CNOT pair is safe because the
  // destination still holds |0>.  Then each logical row fans out from its
  // pivot, and each X-stabilizer row is superposed from its own pivot.
  CliffordCircuit enc(n);
  for (uint32_t ii = k; ii-- > 0;) {
    uint32_t q = lx_piv[ii];
    if (q != ii) {
      enc.cnot(ii, q);
      enc.cnot(q, ii);
    }
  }
  for (uint32_t i = 0; i < k; ++i) {
    lx[i].for_each_set([&](uint32_t t) {
      if (t != lx_piv[i]) enc.cnot(lx_piv[i], t);
    });
  }
  for (size_t g = 0; g < gx.size(); ++g) {
    enc.h(px[g]);
    gx[g].for_each_set([&](uint32_t t) {
      if (t != px[g]) enc.cnot(px[g], t);
    });
  }
  code.encoder = std::move(enc);
  validate_stabilizer_code(code);
  return code;
}

// Three-qubit bit-flip code with the parity checks on qubit pairs (0,1) and
// (0,2); encoder is the two-CNOT fanout.
inline StabilizerCode repetition_code() {
  StabilizerCode code;
  code.n = 3;
  code.k = 1;
  code.d = 1;  // a single phase flip already acts on the logical qubit
  code.stabilizers = {PauliOp::from_string("ZZI"),
                      PauliOp::from_string("ZIZ")};
  code.logical_x = {PauliOp::from_string("XXX")};
  code.logical_z = {PauliOp::from_string("ZII")};
  CliffordCircuit enc(3);
  enc.cnot(0, 1).cnot(0, 2);
  code.encoder = std::move(enc);
  validate_stabilizer_code(code);
  return code;
}

// CSS construction from a dual-containing classical code: Z checks and X
// checks are both the classical parity checks.  k = 2*k_C - n.
inline StabilizerCode css_from_classical(const ClassicalCode &c) {
  for (size_t i = 0; i < c.chk.size(); ++i) {
    for (size_t j = i; j < c.chk.size(); ++j) {
      if (c.chk[i].dot(c.chk[j]))
        throw std::invalid_argument(
            "css_from_classical: code is not dual-containing (check rows " +
            std::to_string(i) + " and " + std::to_string(j) +
            " overlap oddly)");
    }
  }
  return build_css_code(c.n, c.chk, c.chk);
}

// Z-checks-only variant: protects against bit flips alone, with the X side
// left empty (k = k_C).  The classical repetition code becomes the 3-qubit
// bit-flip code this way.
inline StabilizerCode css_from_classical_z_only(const ClassicalCode &c) {
  return build_css_code(c.n, c.chk, {});
}

// The [[7,1,3]] CSS code built on the single-error-correcting [7,4] code,
// with full-weight logical operators.
inline StabilizerCode steane_code() {
  StabilizerCode code = css_from_classical(hamming74());
  // Same logical classes as the construction's output (they differ by the
  // product of all three X checks / Z checks), so the encoder still matches.
  code.logical_x = {PauliOp::from_string("XXXXXXX")};
  code.logical_z = {PauliOp::from_string("ZZZZZZZ")};
  code.d = 3;
  validate_stabilizer_code(code);
  return code;
}

enum class PauliFilter { kAny, kXOnly, kZOnly };

// Smallest weight of an operator that commutes with every generator yet lies
// outside the generated group (phases ignored).  Returns nothing when every
// weight up to `budget` is clean.  Cost grows as C(n,w)*3^w, so keep budgets
// small for large n.
inline std::optional<uint32_t> min_distance_bruteforce(
    const StabilizerCode &code, uint32_t budget,
    PauliFilter filter = PauliFilter::kAny) {
  PauliSpan span(code.stabilizers);
  const uint32_t n = code.n;
  budget = std::min(budget, n);
  auto is_logical = [&](const PauliOp &cand) {
    for (const PauliOp &s : code.stabilizers)
      if (symplectic(cand, s)) return false;
    return !span.contains(cand);
  };
  for (uint32_t w = 1; w <= budget; ++w) {
    std::vector<uint32_t> supp(w);
    for (uint32_t i = 0; i < w; ++i) supp[i] = i;
    while (true) {
      if (filter == PauliFilter::kAny) {
        std::vector<int> types(w, 0);  // 0 = X, 1 = Z, 2 = Y per position
        while (true) {
          PauliOp cand = PauliOp::identity(n);
          for (uint32_t i = 0; i < w; ++i) {
            if (types[i] != 1) cand.u.set(supp[i], true);
            if (types[i] != 0) cand.v.set(supp[i], true);
          }
          if (is_logical(cand)) return w;
          uint32_t bump = 0;
          while (bump < w && ++types[bump] == 3) types[bump++] = 0;
          if (bump == w) break;
        }
      } else {
        PauliOp cand = PauliOp::identity(n);
        for (uint32_t i = 0; i < w; ++i) {
          if (filter == PauliFilter::kXOnly)
            cand.u.set(supp[i], true);
          else
            cand.v.set(supp[i], true);
        }
        if (is_logical(cand)) return w;
      }
      // next support combination (lexicographic)
      bool advanced = false;
      for (uint32_t i = w; i-- > 0;) {
        if (supp[i] < n - w + i) {
          ++supp[i];
          for (uint32_t j = i + 1; j < w; ++j) supp[j] = supp[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

// Logical X/Z pairs for an arbitrary commuting generator set, found by
// pairing centralizer cosets until the leftover symplectic form is used up.
inline std::pair<std::vector<PauliOp>, std::vector<PauliOp>> complete_logicals(
    uint32_t n, const std::vector<PauliOp> &stabs) {
  std::vector<BitVec> srows, swapped;
  for (const PauliOp &s : stabs) {
    srows.push_back(BitVec::concat(s.u, s.v));
    swapped.push_back(BitVec::concat(s.v, s.u));
  }
  std::vector<uint32_t> spiv = gf2_rref(srows);
  std::vector<BitVec> cand = gf2_nullspace(swapped, 2 * n);
  for (BitVec &c : cand) c = gf2_reduce(srows, spiv, c);
  gf2_rref(cand);

  auto sympl2 = [n](const BitVec &a, const BitVec &b) -> int {
    return (a.slice(0, n).dot(b.slice(n, n)) ^
            a.slice(n, n).dot(b.slice(0, n)))
               ? 1
               : 0;
  };
  std::vector<PauliOp> lx, lz;
  while (!cand.empty()) {
    BitVec a = cand.front();
    cand.erase(cand.begin());
    size_t bi = cand.size();
    for (size_t i = 0; i < cand.size(); ++i) {
      if (sympl2(a, cand[i])) {
        bi = i;
        break;
      }
    }
    if (bi == cand.size())
      throw std::invalid_argument(
          "complete_logicals: generators do not define a stabilizer code");
    BitVec b = cand[bi];
    cand.erase(cand.begin() + static_cast<ptrdiff_t>(bi));
    for (BitVec &c : cand) {
      int sb = sympl2(c, b), sa = sympl2(c, a);
      if (sb) c ^= a;
      if (sa) c ^= b;
    }
    lx.push_back(PauliOp::from_bits(a.slice(0, n), a.slice(n, n)));
    lz.push_back(PauliOp::from_bits(b.slice(0, n), b.slice(n, n)));
  }
  return {std::move(lx), std::move(lz)};
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------
//
// Stabilizer text: header "n k" (a third field, the distance, is honored
// only when the caller passes trust_d), then n-k generators in letter form,
// then optional "LX" / "LZ" sections with k logical operators each.  '#'
// starts a comment.  Matrix text: one row of 0/1 characters per line.

namespace detail {

struct NumberedLine {
  size_t no;
  std::string text;
};

inline std::vector<NumberedLine> content_lines(const std::string &text) {
  std::vector<NumberedLine> out;
  std::istringstream in(text);
  std::string line;
  size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t last = line.find_last_not_of(" \t\r");
    out.push_back({no, line.substr(first, last - first + 1)});
  }
  return out;
}

inline std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

}  // namespace detail

inline StabilizerCode parse_stabilizer_text(const std::string &text,
                                            bool trust_d = false) {
  auto lines = detail::content_lines(text);
  auto fail = [](size_t line_no, const std::string &msg) {
    throw std::invalid_argument("stabilizer file line " +
                                std::to_string(line_no) + ": " + msg);
  };
  if (lines.empty())
    throw std::invalid_argument("stabilizer file: empty input");

  size_t at = 0;
  std::istringstream head(lines[at].text);
  long long n = -1, k = -1, d = -1;
  head >> n >> k;
  if (n <= 0 || k <= 0 || k > n || n > 1024)
    fail(lines[at].no, "expected header \"n k\" with 1 <= k <= n");
  bool has_d = static_cast<bool>(head >> d);
  if (has_d && d < 0) fail(lines[at].no, "distance must be non-negative");
  {
    std::string extra;
    if (head >> extra) fail(lines[at].no, "trailing tokens in header");
  }
  ++at;

  size_t gen_count = static_cast<size_t>(n - k);
  std::vector<PauliOp> gens;
  std::vector<size_t> gen_lines;
  for (size_t i = 0; i < gen_count; ++i, ++at) {
    if (at >= lines.size())
      throw std::invalid_argument("stabilizer file: expected " +
                                  std::to_string(gen_count) +
                                  " generators, found " + std::to_string(i));
    PauliOp p;
    try {
      p = PauliOp::from_string(lines[at].text);
    } catch (const std::invalid_argument &e) {
      fail(lines[at].no, e.what());
    }
    if (p.n() != static_cast<uint32_t>(n))
      fail(lines[at].no, "generator length does not match n");
    if (p.phase_k != 0) fail(lines[at].no, "generator must have sign +1");
    gens.push_back(std::move(p));
    gen_lines.push_back(lines[at].no);
  }
  for (size_t i = 0; i < gens.size(); ++i) {
    for (size_t j = i + 1; j < gens.size(); ++j) {
      if (symplectic(gens[i], gens[j]))
        throw std::invalid_argument(
            "stabilizer file: generators at lines " +
            std::to_string(gen_lines[i]) + " and " +
            std::to_string(gen_lines[j]) + " anticommute");
    }
  }

  auto read_section = [&](const char *tag) -> std::vector<PauliOp> {
    std::vector<PauliOp> ops;
    if (at < lines.size() && lines[at].text == tag) {
      ++at;
      for (long long i = 0; i < k; ++i, ++at) {
        if (at >= lines.size())
          throw std::invalid_argument(std::string("stabilizer file: ") + tag +
                                      " section needs " + std::to_string(k) +
                                      " operators");
        PauliOp p;
        try {
          p = PauliOp::from_string(lines[at].text);
        } catch (const std::invalid_argument &e) {
          fail(lines[at].no, e.what());
        }
        if (p.n() != static_cast<uint32_t>(n))
          fail(lines[at].no, "operator length does not match n");
        ops.push_back(std::move(p));
      }
    }
    return ops;
  };
  std::vector<PauliOp> file_lx = read_section("LX");
  std::vector<PauliOp> file_lz = read_section("LZ");
  if (at < lines.size()) fail(lines[at].no, "unexpected content");
  if (file_lx.empty() != file_lz.empty())
    throw std::invalid_argument(
        "stabilizer file: LX and LZ sections must be given together");

  StabilizerCode code;
  code.n = static_cast<uint32_t>(n);
  code.k = static_cast<uint32_t>(k);
  code.stabilizers = gens;
  if (trust_d && has_d) code.d = static_cast<uint32_t>(d);

  bool css = true;
  for (const PauliOp &g : gens)
    if (g.u.any() && g.v.any()) css = false;

  if (css) {
    // Rebuild in canonical Z-first order; this also yields the encoder.
    std::vector<BitVec> z_rows, x_rows;
    for (const PauliOp &g : gens) {
      if (g.v.any())
        z_rows.push_back(g.v);
      else
        x_rows.push_back(g.u);
    }
    StabilizerCode canon = build_css_code(code.n, z_rows, x_rows);
    code.stabilizers = canon.stabilizers;
    if (file_lx.empty()) {
      code.logical_x = canon.logical_x;
      code.logical_z = canon.logical_z;
      code.encoder = canon.encoder;
    } else {
      code.logical_x = file_lx;
      code.logical_z = file_lz;
      // The standard-form encoder only fits logicals acting like its own on
      // the code space, i.e. equal up to a stabilizer.
      PauliSpan span(code.stabilizers);
      bool compatible = true;
      for (uint32_t i = 0; i < code.k && compatible; ++i) {
        if (!span.contains(code.logical_x[i] * canon.logical_x[i]) ||
            !span.contains(code.logical_z[i] * canon.logical_z[i]))
          compatible = false;
      }
      if (compatible) code.encoder = canon.encoder;
    }
  } else {
    if (file_lx.empty()) {
      auto pair = complete_logicals(code.n, gens);
      code.logical_x = std::move(pair.first);
      code.logical_z = std::move(pair.second);
    } else {
      code.logical_x = file_lx;
      code.logical_z = file_lz;
    }
  }
  validate_stabilizer_code(code);
  return code;
}

inline std::string stabilizer_text(const StabilizerCode &code) {
  std::string out = std::to_string(code.n) + " " + std::to_string(code.k);
  if (code.d) out += " " + std::to_string(*code.d);
  out += "\n";
  for (const PauliOp &s : code.stabilizers) out += s.str() + "\n";
  out += "LX\n";
  for (const PauliOp &l : code.logical_x) out += l.str() + "\n";
  out += "LZ\n";
  for (const PauliOp &l : code.logical_z) out += l.str() + "\n";
  return out;
}

inline StabilizerCode load_stabilizer_file(const std::string &path,
                                           bool trust_d = false) {
  return parse_stabilizer_text(detail::read_text_file(path), trust_d);
}

inline void save_stabilizer_file(const StabilizerCode &code,
                                 const std::string &path) {
  detail::write_text_file(path, stabilizer_text(code));
}

inline std::vector<BitVec> parse_matrix_text(const std::string &text) {
  auto lines = detail::content_lines(text);
  std::vector<BitVec> rows;
  for (const auto &l : lines) {
    for (char c : l.text) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("matrix file line " +
                                    std::to_string(l.no) +
                                    ": rows must be 0/1 characters");
    }
    rows.push_back(BitVec::from_string(l.text));
    if (rows.back().size() != rows.front().size())
      throw std::invalid_argument("matrix file line " + std::to_string(l.no) +
                                  ": rows have unequal lengths");
  }
  return rows;
}

inline std::vector<BitVec> load_matrix_file(const std::string &path) {
  return parse_matrix_text(detail::read_text_file(path));
}

inline std::string matrix_text(const std::vector<BitVec> &rows) {
  std::string out;
  for (const BitVec &r : rows) out += r.str() + "\n";
  return out;
}

inline void save_matrix_file(const std::vector<BitVec> &rows,
                             const std::string &path) {
  detail::write_text_file(path, matrix_text(rows));
}

}  // namespace qecw
