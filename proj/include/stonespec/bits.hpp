#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace stonespec {

/// Fixed-width set of small indices (lattice elements, points, quasipoints).
using Mask = std::uint64_t;

/// Hard capacity of a Mask; lattices and point sets never exceed it.
inline constexpr int kMaxElements = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr bool has(Mask m, int i) { return ((m >> i) & Mask{1}) != 0; }

constexpr int count(Mask m) { return std::popcount(m); }

constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

constexpr int lowest(Mask m) { return std::countr_zero(m); }

template <class F>
constexpr void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  out.reserve(count(m));
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

/// Canonical order on masks: at the lowest differing index, the mask that
/// contains it sorts first.
constexpr bool lex_less(Mask a, Mask b) {
  const Mask d = a ^ b;
  if (d == 0) return false;
  return (a & d & (~d + 1)) != 0;
}

}  // namespace stonespec
