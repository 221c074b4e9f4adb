#pragma once

// Exact Fourier spectra and PAPR of Z_{2^h}-valued words.
//
//   f^(u) = sum_x w^{f(x)} (-1)^{u.x},   w = i (h = 2) or -1 (h = 1)
//   PAPR(c) = max_t |S_c(t)|^2 / n = max_u |c^(u)|^2 / 2^m
//
// All arithmetic is over the Gaussian integers, so "PAPR = 1" is an integer equality.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4ca/algebra.hpp"
#include "z4ca/gbf.hpp"

namespace z4ca {

struct Spectrum {
  int m{0};
  std::vector<Gauss> values;

  std::int64_t sum_of_norms() const {
    std::int64_t s = 0;
    for (const auto& z : values) s += z.norm();
    return s;
  }
  std::int64_t max_norm() const {
    std::int64_t best = 0;
    for (const auto& z : values) best = std::max(best, z.norm());
    return best;
  }
};

/// max |S|^2 over 2^m: numerator and denominator kept unreduced.
struct PaprValue {
  std::uint64_t numerator{0};
  std::uint64_t denominator{1};

  bool is_one() const { return numerator == denominator; }

  PaprValue reduced() const {
    const auto g = std::gcd(numerator, denominator);
    return g == 0 ? *this : PaprValue{numerator / g, denominator / g};
  }
  std::string to_string() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }

  friend bool operator==(const PaprValue& a, const PaprValue& b) {
    return static_cast<unsigned __int128>(a.numerator) * b.denominator ==
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
  friend bool operator<(const PaprValue& a, const PaprValue& b) {
    return static_cast<unsigned __int128>(a.numerator) * b.denominator <
           static_cast<unsigned __int128>(b.numerator) * a.denominator;
  }
};

/// w^v for a symbol v of Z_{2^H}.
template <unsigned H>
constexpr Gauss root_power(unsigned v) {
  if constexpr (H == 2) return Gauss::unit_power(v);
  else return Gauss{(v & 1u) ? -1 : 1, 0};
}

/// In-place Walsh-Hadamard butterfly over the sign characters; O(m 2^m).
inline void walsh_hadamard_inplace(std::vector<Gauss>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const Gauss x = v[j], y = v[j + h];
        v[j] = x + y;
        v[j + h] = x - y;
      }
}

template <unsigned H>
Spectrum fourier(const Word<H>& w) {
  Spectrum s{w.m(), std::vector<Gauss>(w.size())};
  for (std::size_t i = 0; i < w.size(); ++i) s.values[i] = root_power<H>(w[i]);
  walsh_hadamard_inplace(s.values);
  return s;
}

/// Sylvester-type Walsh-Hadamard matrix H_{2^m} built from the block recursion
/// H_n = [[H, H], [H, -H]], H_1 = (1).
class HadamardMatrix {
 public:
  explicit HadamardMatrix(int m) : m_(m) {
    if (m < 0 || m > 12) throw std::invalid_argument("HadamardMatrix: m must lie in [0, 12]");
    std::size_t n = 1;
    entries_.assign(1, 1);
    for (int level = 0; level < m; ++level) {
      const std::size_t half = n;
      n *= 2;
      std::vector<std::int8_t> next(n * n);
      for (std::size_t r = 0; r < half; ++r)
        for (std::size_t c = 0; c < half; ++c) {
          const std::int8_t e = entries_[r * half + c];
          next[r * n + c] = e;
          next[r * n + c + half] = e;
          next[(r + half) * n + c] = e;
          next[(r + half) * n + c + half] = static_cast<std::int8_t>(-e);
        }
      entries_ = std::move(next);
    }
    n_ = n;
  }

  int m() const { return m_; }
  std::size_t n() const { return n_; }
  int operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }

 private:
  int m_;
  std::size_t n_{1};
  std::vector<std::int8_t> entries_;
};

/// S_c(t) = sum_j w^{c_j} (H_n)_{j,t}, by direct matrix-vector product.
template <unsigned H>
std::vector<Gauss> mc_cdma_signal(const Word<H>& c, const HadamardMatrix& hm) {
  if (hm.n() != c.size()) throw std::invalid_argument("mc_cdma_signal: Hadamard order does not match word length");
  std::vector<Gauss> s(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Gauss z = root_power<H>(c[j]);
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (hm(j, t) > 0) s[t] += z;
      else s[t] -= z;
    }
  }
  return s;
}

template <unsigned H>
std::vector<Gauss> mc_cdma_signal(const Word<H>& c) {
  return mc_cdma_signal(c, HadamardMatrix(c.m()));
}

inline PaprValue papr_of_signal(const std::vector<Gauss>& s) {
  std::int64_t peak = 0;
  for (const auto& z : s) peak = std::max(peak, z.norm());
  return {static_cast<std::uint64_t>(peak), static_cast<std::uint64_t>(s.size())};
}

template <unsigned H>
PaprValue papr(const Word<H>& w) {
  return {static_cast<std::uint64_t>(fourier(w).max_norm()), std::uint64_t{1} << w.m()};
}

inline bool is_bent(const Spectrum& s) {
  const std::int64_t target = std::int64_t{1} << s.m;
  for (const auto& z : s.values)
    if (z.norm() != target) return false;
  return true;
}

template <unsigned H>
bool is_bent(const Word<H>& w) {
  return is_bent(fourier(w));
}

/// Every value of a Z4 bent spectrum is 2^(m/2) w^m i^k with w = (1+i)/sqrt 2: for even m one
/// of re/im is zero and the other is +-2^(m/2); for odd m |re| = |im| = 2^((m-1)/2).
inline bool spectrum_form_check(const Z4Word& w) {
  const Spectrum s = fourier(w);
  if (!is_bent(s)) throw std::invalid_argument("spectrum_form_check: word is not bent");
  const int m = w.m();
  for (const auto& z : s.values) {
    const std::int64_t ar = z.re < 0 ? -z.re : z.re;
    const std::int64_t ai = z.im < 0 ? -z.im : z.im;
    if (m % 2 == 0) {
      const std::int64_t r = std::int64_t{1} << (m / 2);
      if (!((ar == r && ai == 0) || (ar == 0 && ai == r))) return false;
    } else {
      const std::int64_t r = std::int64_t{1} << ((m - 1) / 2);
      if (ar != r || ai != r) return false;
    }
  }
  return true;
}

struct DegreeBound {
  bool ok{false};
  int degree_a{0};
  int degree_b{0};
  int bound{0};
};

/// For bent f = a + 2b with m > 2: deg a, deg b <= ceil(m/2).
inline DegreeBound degree_bound_check(const Z4Word& w) {
  if (w.m() <= 2) throw std::invalid_argument("degree_bound_check: requires m > 2, got m = " + std::to_string(w.m()));
  if (!is_bent(w)) throw std::invalid_argument("degree_bound_check: word is not bent");
  const auto [a, b] = two_adic_split(w);
  DegreeBound r;
  r.degree_a = degree(a);
  r.degree_b = degree(b);
  r.bound = (w.m() + 1) / 2;
  r.ok = r.degree_a <= r.bound && r.degree_b <= r.bound;
  return r;
}

}  // namespace z4ca
