#pragma once

// Constant-amplitude codes inside the quaternary Reed-Muller codes.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4ca/algebra.hpp"
#include "z4ca/codes.hpp"
#include "z4ca/gbf.hpp"

namespace z4ca {

/// f(x, y) = 2 sigma(x).y + g(x) on F^k x F^k.
struct MFSpec {
  Permutation sigma;
  Z4Word g;

  int k() const { return sigma.k(); }
};

/// Word of the generalized Maiorana-McFarland function; x occupies the low k index bits and
/// y the high k bits. Always bent.
inline Z4Word mf_bent(const MFSpec& spec) {
  const int k = spec.k();
  if (spec.g.m() != k) throw std::invalid_argument("mf_bent: g must be a function on F^k");
  const std::uint32_t side = std::uint32_t{1} << k;
  Z4Word f(2 * k);
  for (std::uint32_t y = 0; y < side; ++y)
    for (std::uint32_t x = 0; x < side; ++x)
      f.set(x + side * y, 2u * static_cast<unsigned>(std::popcount(spec.sigma(x) & y) & 1) + spec.g[x]);
  return f;
}

enum class MfVariant { rm4, zrm };

namespace detail {

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int j = 2; j <= n; ++j) r *= static_cast<std::uint64_t>(j);
  return r;
}

/// Radix of each ANF coefficient of g in a canonical coset representative: constant term fixed
/// to 0, linear terms in {0, 1}, higher terms in Z4; the zrm variant keeps the degree-k term even.
struct MfDigits {
  std::vector<std::uint32_t> masks;
  std::vector<unsigned> radix;
  std::vector<unsigned> step;  // coefficient = digit * step
  unsigned log2_count{0};
};

inline MfDigits mf_digits(int k, MfVariant v) {
  MfDigits d;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
    const int w = std::popcount(mask);
    unsigned radix = w == 1 ? 2 : 4, step = 1;
    if (v == MfVariant::zrm && w == k) {
      radix = w == 1 ? 1 : 2;
      step = 2;
    }
    d.masks.push_back(mask);
    d.radix.push_back(radix);
    d.step.push_back(step);
    d.log2_count += static_cast<unsigned>(std::countr_zero(radix));
  }
  return d;
}

/// index-th permutation of {1, ..., n} (Lehmer code, lexicographic), with 0 fixed.
inline Permutation nth_permutation_fixing_zero(int k, std::uint64_t index) {
  const std::uint32_t n = (std::uint32_t{1} << k) - 1;
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 1u);
  std::vector<std::uint32_t> img{0};
  for (std::uint32_t left = n; left > 0; --left) {
    const std::uint64_t f = factorial(static_cast<int>(left) - 1);
    const std::uint64_t pos = index / f;
    index %= f;
    img.push_back(pool[pos]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return Permutation(std::move(img));
}

}  // namespace detail

/// All outputs of mf_bent with m = 2k, organized as cosets of ZRM(1, m). Coset representatives
/// have sigma(0) = 0 and g in canonical form, so each coset is listed once.
inline CodeBook construction1(int m, MfVariant variant) {
  if (m % 2 != 0 || m < 2 || m > 8)
    throw std::invalid_argument("construction1: m must be even with 2 <= m <= 8, got " + std::to_string(m));
  const int k = m / 2;
  const auto digits = detail::mf_digits(k, variant);
  const std::uint64_t perms = detail::factorial((1 << k) - 1);
  const CodeSize count{perms, digits.log2_count};
  auto rep = [k, digits](std::uint64_t index) {
    const std::uint64_t g_count = std::uint64_t{1} << digits.log2_count;
    std::uint64_t g_index = index % g_count;
    Gbf<2> g(k);
    for (std::size_t i = 0; i < digits.masks.size(); ++i) {
      const unsigned r = digits.radix[i];
      g.set_coeff(digits.masks[i], static_cast<unsigned>(g_index % r) * digits.step[i]);
      g_index /= r;
    }
    return mf_bent({detail::nth_permutation_fixing_zero(k, index / g_count), anf_to_word(g)});
  };
  // 2 sigma(x).y + g(x) has degree at most max(k, 2); in the zrm variant every top-degree term is even.
  const int r = std::max(k, 2);
  LinearCode container = variant == MfVariant::rm4 ? rm4(r, m) : zrm(r, m);
  return CodeBook::from_cosets(CosetFamily::from_generator(m, count, rep, std::move(container)));
}

/// The single coset Q + ZRM(1, m) with Q = x_0 + ... + x_{m-1}.
inline CodeBook construction2(int m) {
  if (m < 1 || m > kMaxVars) throw std::invalid_argument("construction2: m must lie in [1, 16]");
  return CodeBook::from_cosets(CosetFamily::from_quad_forms(m, {SymMatrix::identity(m)}));
}

/// Nonsingular symmetric m x m matrices in ascending lexicographic row-major order.
inline std::vector<SymMatrix> nonsingular_symmetric_matrices(int m) {
  std::vector<SymMatrix> out;
  for_each_symmetric(m, [&](const SymMatrix& b) {
    if (b.rank() == m) out.push_back(b);
  });
  return out;
}

/// Union of the 2^floor(log2 N(m)) lexicographically smallest full-rank quadratic-form cosets of
/// ZRM(1, m) inside ZRM(2, m).
inline CodeBook construction3(int m) {
  if (m < 2 || m > 6) throw std::invalid_argument("construction3: m must lie in [2, 6], got " + std::to_string(m));
  auto ms = nonsingular_symmetric_matrices(m);
  ms.resize(std::bit_floor(ms.size()));
  return CodeBook::from_cosets(CosetFamily::from_quad_forms(m, std::move(ms)));
}

}  // namespace z4ca
