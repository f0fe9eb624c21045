// Copyright 2026 The Authors.
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
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "dataval/errors.hpp"

namespace dataval {

// Subset of [0, n) as a fixed-width bit vector. A single inline word covers
// n <= 64 without allocation; wider populations spill into extra words.
// Masks compare by the integer value of their bits, which fixes the
// deterministic iteration order used by the exact algorithms.
class SubsetMask {
 public:
  SubsetMask() = default;

  explicit SubsetMask(std::size_t n)
      : n_(n), rest_(n > 64 ? (n + 63) / 64 - 1 : 0, 0) {}

  // Low 64 bits given directly; requires n <= 64.
  static SubsetMask from_bits(std::uint64_t bits, std::size_t n) {
    if (n > 64) throw InvalidInput("SubsetMask::from_bits requires n <= 64");
    if (n < 64 && (bits >> n) != 0) {
      throw InvalidInput("SubsetMask::from_bits: bits set at or above n");
    }
    SubsetMask m(n);
    m.word0_ = bits;
    return m;
  }

  static SubsetMask full(std::size_t n) {
    SubsetMask m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i);
    return m;
  }

  static SubsetMask of(std::initializer_list<std::size_t> idx, std::size_t n) {
    SubsetMask m(n);
    for (std::size_t i : idx) m.set(i);
    return m;
  }

  // Population size n (the universe width, not the cardinality).
  std::size_t population() const { return n_; }

  std::size_t count() const {
    std::size_t c = static_cast<std::size_t>(std::popcount(word0_));
    for (std::uint64_t w : rest_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    if (word0_ != 0) return false;
    for (std::uint64_t w : rest_)
      if (w != 0) return false;
    return true;
  }

  bool test(std::size_t i) const {
    check_index(i);
    return (word(i / 64) >> (i % 64)) & 1u;
  }

  SubsetMask& set(std::size_t i) {
    check_index(i);
    word(i / 64) |= std::uint64_t{1} << (i % 64);
    return *this;
  }

  SubsetMask& reset(std::size_t i) {
    check_index(i);
    word(i / 64) &= ~(std::uint64_t{1} << (i % 64));
    return *this;
  }

  SubsetMask with(std::size_t i) const {
    SubsetMask m = *this;
    m.set(i);
    return m;
  }

  SubsetMask without(std::size_t i) const {
    SubsetMask m = *this;
    m.reset(i);
    return m;
  }

  // Bits [0, 64); the whole mask when n <= 64.
  std::uint64_t low_bits() const { return word0_; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  // Visits set bits in ascending index order.
  template <class F>
  void for_each(F&& f) const {
    const std::size_t nw = word_count();
    for (std::size_t wi = 0; wi < nw; ++wi) {
      std::uint64_t w = word(wi);
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  bool operator==(const SubsetMask& o) const {
    return n_ == o.n_ && word0_ == o.word0_ && rest_ == o.rest_;
  }

  // Integer-value order over equal populations.
  std::strong_ordering operator<=>(const SubsetMask& o) const {
    if (n_ != o.n_) return n_ <=> o.n_;
    for (std::size_t wi = word_count(); wi-- > 0;) {
      if (word(wi) != o.word(wi)) return word(wi) <=> o.word(wi);
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    const std::size_t nw = word_count();
    for (std::size_t wi = 0; wi < nw; ++wi) {
      h = (h ^ word(wi)) * 0xbf58476d1ce4e5b9ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t word_count() const { return 1 + rest_.size(); }

  std::uint64_t word(std::size_t wi) const { return wi == 0 ? word0_ : rest_[wi - 1]; }
  std::uint64_t& word(std::size_t wi) { return wi == 0 ? word0_ : rest_[wi - 1]; }

  void check_index(std::size_t i) const {
    if (i >= n_) throw InvalidInput("SubsetMask: bit index out of range");
  }

  std::size_t n_ = 0;
  std::uint64_t word0_ = 0;
  std::vector<std::uint64_t> rest_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const { return m.hash(); }
};

}  // namespace dataval
