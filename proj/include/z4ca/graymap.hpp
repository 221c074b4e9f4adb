#pragma once

// Gray map Z4 -> F^2 (0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10) and the liftings of binary
// bent functions / constant-amplitude codes to quaternary ones.
//
// Word-order conventions differ between the liftings and are kept as stated:
//   * gray() interleaves: symbol l becomes positions 2l, 2l+1, i.e. the extra variable y
//     is the least-significant index bit, and gray(a + 2b)(x, y) = a(x) y + b(x).
//   * lift_odd_offset() concatenates halves: y is the most-significant index bit.
// The two are related by the fixed index permutation (x, y) <-> (y, x).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "z4ca/gbf.hpp"

namespace z4ca {

/// Elementwise Gray image of an arbitrary-length Z4 sequence.
inline std::vector<std::uint8_t> gray(std::span<const std::uint8_t> z4) {
  std::vector<std::uint8_t> out(2 * z4.size());
  for (std::size_t i = 0; i < z4.size(); ++i) {
    const unsigned a = z4[i] & 1u, b = (z4[i] >> 1) & 1u;
    out[2 * i] = static_cast<std::uint8_t>(b);
    out[2 * i + 1] = static_cast<std::uint8_t>(a ^ b);
  }
  return out;
}

inline std::vector<std::uint8_t> gray_inverse(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw std::invalid_argument("gray_inverse: odd-length binary input");
  std::vector<std::uint8_t> out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const unsigned b = bits[2 * i] & 1u, ab = bits[2 * i + 1] & 1u;
    out[i] = static_cast<std::uint8_t>((ab ^ b) + 2u * b);
  }
  return out;
}

inline BinWord gray(const Z4Word& w) { return BinWord(gray(w.values())); }

inline Z4Word gray_inverse(const BinWord& b) {
  if (b.m() == 0) throw std::invalid_argument("gray_inverse: odd-length binary input");
  return Z4Word(gray_inverse(b.values()));
}

inline unsigned lee_weight(unsigned z) { return (z & 3u) == 0 ? 0u : ((z & 3u) == 2 ? 2u : 1u); }

inline std::uint64_t lee_weight(std::span<const std::uint8_t> w) {
  std::uint64_t s = 0;
  for (auto z : w) s += lee_weight(z);
  return s;
}

inline std::uint64_t lee_distance(std::span<const std::uint8_t> u, std::span<const std::uint8_t> v) {
  if (u.size() != v.size()) throw std::invalid_argument("lee_distance: length mismatch");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += lee_weight(static_cast<unsigned>(u[i] + 4 - v[i]));
  return s;
}

inline std::uint64_t hamming_weight(std::span<const std::uint8_t> w) {
  std::uint64_t s = 0;
  for (auto z : w) s += z != 0;
  return s;
}

inline std::uint64_t hamming_distance(std::span<const std::uint8_t> u, std::span<const std::uint8_t> v) {
  if (u.size() != v.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] != v[i];
  return s;
}

/// (2a + e | 2b + 1 + e): the word of f(x, y) = 2a(x)(1 + y) + 2b(x)y + y, shifted by the constant e.
/// Bent whenever a and b are binary bent.
inline Z4Word lift_odd_offset(const BinWord& a, const BinWord& b, unsigned epsilon) {
  if (a.size() != b.size()) throw std::invalid_argument("lift_odd_offset: a and b differ in length");
  if (epsilon > 1) throw std::invalid_argument("lift_odd_offset: epsilon must be 0 or 1");
  const std::size_t half = a.size();
  Z4Word f(a.m() + 1);
  for (std::size_t i = 0; i < half; ++i) {
    f.set(i, 2u * a[i] + epsilon);
    f.set(half + i, 2u * b[i] + 1u + epsilon);
  }
  return f;
}

/// Gray preimage of g(x, y) = a(x) y + b(x)(1 + y), i.e. the word 2b + (a xor b).
inline Z4Word lift_even(const BinWord& a, const BinWord& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lift_even: a and b differ in length");
  Z4Word f(a.m());
  for (std::size_t i = 0; i < a.size(); ++i) f.set(i, 2u * b[i] + (a[i] ^ b[i]));
  return f;
}

/// phi^{-1}(g) for g on F^{m+1}; bent when g is.
inline Z4Word lift_gray_preimage(const BinWord& g) { return gray_inverse(g); }

/// Binary Maiorana-McFarland bent function g(x, y) = sigma(x).y + h(x) on F^{2k},
/// with x in the low k index bits and y in the high k bits.
inline BinWord mm_binary_bent(int k, const Permutation& sigma, const BinWord& h) {
  if (sigma.k() != k) throw std::invalid_argument("mm_binary_bent: sigma does not act on F^k");
  if (h.m() != k) throw std::invalid_argument("mm_binary_bent: h must have length 2^k");
  const std::uint32_t side = std::uint32_t{1} << k;
  BinWord g(2 * k);
  for (std::uint32_t y = 0; y < side; ++y)
    for (std::uint32_t x = 0; x < side; ++x)
      g.set(x + side * y, (std::popcount(sigma(x) & y) & 1) ^ h[x]);
  return g;
}

// Code-level liftings: each applies its word map to every admissible combination of inputs.

/// { (2a + e | 2b + 1 + e) : a in A, b in B, e in {0, 1} }.
inline std::vector<Z4Word> lift_code_odd_offset(const std::vector<BinWord>& a, const std::vector<BinWord>& b) {
  std::vector<Z4Word> out;
  out.reserve(2 * a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b)
      for (unsigned e = 0; e < 2; ++e) out.push_back(lift_odd_offset(x, y, e));
  return out;
}

/// { phi^{-1}(a y + b (1 + y)) : a in A, b in B }.
inline std::vector<Z4Word> lift_code_even(const std::vector<BinWord>& a, const std::vector<BinWord>& b) {
  std::vector<Z4Word> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(lift_even(x, y));
  return out;
}

inline std::vector<Z4Word> lift_code_gray_preimage(const std::vector<BinWord>& g) {
  std::vector<Z4Word> out;
  out.reserve(g.size());
  for (const auto& x : g) out.push_back(lift_gray_preimage(x));
  return out;
}

}  // namespace z4ca
