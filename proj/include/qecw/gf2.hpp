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

#include <cstdint>
#include <utility>
#include <vector>

#include "qecw/bitvec.hpp"

namespace qecw {

// GF(2) row operations on vectors of BitVec rows.  Everything here is
// deterministic: pivots are chosen at the lowest available column, and the
// first row holding a 1 there wins.

// Reduces rows in place to reduced row echelon form, drops zero rows, and
// returns the pivot column of each surviving row (strictly increasing).
inline std::vector<uint32_t> gf2_rref(std::vector<BitVec> &rows) {
  std::vector<uint32_t> pivots;
  if (rows.empty()) return pivots;
  uint32_t cols = rows[0].size();
  size_t rank = 0;
  for (uint32_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && !rows[sel].get(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

inline size_t gf2_rank(std::vector<BitVec> rows) {
  return gf2_rref(rows).size();
}

// Reduces x against RREF rows: XORs away every pivot bit.  The result is the
// canonical coset representative of x modulo the row space.
inline BitVec gf2_reduce(const std::vector<BitVec> &rref_rows,
                         const std::vector<uint32_t> &pivots, BitVec x) {
  for (size_t i = 0; i < rref_rows.size(); ++i) {
    if (x.get(pivots[i])) x ^= rref_rows[i];
  }
  return x;
}

inline bool gf2_in_span(const std::vector<BitVec> &rref_rows,
                        const std::vector<uint32_t> &pivots, const BitVec &x) {
  return !gf2_reduce(rref_rows, pivots, x).any();
}

// Basis of the null space {x : rows * x = 0}, one vector per free column,
// in increasing free-column order.  `cols` is the vector length (needed when
// rows is empty).
inline std::vector<BitVec> gf2_nullspace(std::vector<BitVec> rows,
                                         uint32_t cols) {
  std::vector<uint32_t> pivots = gf2_rref(rows);
  std::vector<bool> is_pivot(cols, false);
  for (uint32_t p : pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (uint32_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(cols);
    v.set(f, true);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].get(f)) v.set(pivots[i], true);
    }
    basis.push_back(v);
  }
  return basis;
}

// Inverse of a square k x k matrix given as rows of length k.  Throws if the
// matrix is singular.
inline std::vector<BitVec> gf2_invert(std::vector<BitVec> rows) {
  size_t k = rows.size();
  std::vector<BitVec> aug(k);
  for (size_t i = 0; i < k; ++i) {
    aug[i] = BitVec(static_cast<uint32_t>(2 * k));
    rows[i].for_each_set([&](uint32_t j) { aug[i].set(j, true); });
    aug[i].set(static_cast<uint32_t>(k + i), true);
  }
  for (uint32_t col = 0; col < k; ++col) {
    size_t sel = col;
    while (sel < k && !aug[sel].get(col)) ++sel;
    if (sel == k) throw std::invalid_argument("gf2_invert: singular matrix");
    std::swap(aug[col], aug[sel]);
    for (size_t r = 0; r < k; ++r) {
      if (r != col && aug[r].get(col)) aug[r] ^= aug[col];
    }
  }
  std::vector<BitVec> inv(k);
  for (size_t i = 0; i < k; ++i)
    inv[i] = aug[i].slice(static_cast<uint32_t>(k), static_cast<uint32_t>(k));
  return inv;
}

}  // namespace qecw
