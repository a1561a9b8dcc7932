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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qecw {

// Fixed-length bit vector packed into 64-bit words.  Bit i of the vector is
// bit (i % 64) of word (i / 64), so index 0 is the least significant bit of
// the first word.  Sized at construction; arithmetic requires equal lengths.
class BitVec {
 public:
  BitVec() = default;

  explicit BitVec(uint32_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  // Parses a left-to-right string of '0'/'1', bit 0 first.
  static BitVec from_string(const std::string &s) {
    BitVec v(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("bit string may contain only 0 and 1");
      }
    }
    return v;
  }

  uint32_t size() const { return bits_; }

  bool get(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void set(uint32_t i, bool value) {
    uint64_t mask = 1ull << (i & 63);
    if (value) {
      w_[i >> 6] |= mask;
    } else {
      w_[i >> 6] &= ~mask;
    }
  }

  void flip(uint32_t i) { w_[i >> 6] ^= 1ull << (i & 63); }

  BitVec &operator^=(const BitVec &o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec &b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVec &o) const {
    return bits_ == o.bits_ && w_ == o.w_;
  }

  bool operator!=(const BitVec &o) const { return !(*this == o); }

  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }

  uint32_t popcount() const {
    uint32_t c = 0;
    for (uint64_t x : w_) c += static_cast<uint32_t>(std::popcount(x));
    return c;
  }

  // Parity of the AND with another vector: the GF(2) inner product.
  bool dot(const BitVec &o) const {
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
  }

  // Orders by the bit string read from index 0: the first differing bit
  // decides, and the vector holding 0 there is the smaller.
  bool lex_less(const BitVec &o) const {
    for (size_t i = 0; i < w_.size(); ++i) {
      uint64_t diff = w_[i] ^ o.w_[i];
      if (diff) {
        int j = std::countr_zero(diff);
        return ((w_[i] >> j) & 1) == 0;
      }
    }
    return false;
  }

  std::string str() const {
    std::string s(bits_, '0');
    for (uint32_t i = 0; i < bits_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  // Low 64 bits as a machine word (all bits when size() <= 64).
  uint64_t low64() const { return w_.empty() ? 0 : w_[0]; }

  // Calls fn(index) for every set bit, in increasing index order.
  template <typename Fn>
  void for_each_set(Fn fn) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t x = w_[wi];
      while (x) {
        int j = std::countr_zero(x);
        fn(static_cast<uint32_t>(wi * 64 + j));
        x &= x - 1;
      }
    }
  }

  // Concatenation: a occupies bits [0, a.size()), b the rest.
  static BitVec concat(const BitVec &a, const BitVec &b) {
    BitVec v(a.size() + b.size());
    a.for_each_set([&](uint32_t i) { v.set(i, true); });
    b.for_each_set([&](uint32_t i) { v.set(a.size() + i, true); });
    return v;
  }

  // Bits [lo, lo + len) as a new vector.
  BitVec slice(uint32_t lo, uint32_t len) const {
    BitVec v(len);
    for (uint32_t i = 0; i < len; ++i) v.set(i, get(lo + i));
    return v;
  }

 private:
  uint32_t bits_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace qecw
