#pragma once

// Generalized Boolean functions F^m -> Z_{2^h}, h in {1, 2}.
//
// A function and its value word are used interchangeably. Element l of the word is
// f(l_0, ..., l_{m-1}) with l = sum l_j 2^j, so x_0 is the least-significant index bit.

#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace z4ca {

inline constexpr int kMaxVars = 16;

inline int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n))
    throw std::invalid_argument("word length " + std::to_string(n) + " is not a power of two");
  return std::countr_zero(n);
}

template <unsigned H>
class Word {
  static_assert(H == 1 || H == 2, "only binary and quaternary words are supported");

 public:
  static constexpr unsigned kBits = H;
  static constexpr std::uint8_t kModulus = static_cast<std::uint8_t>(1u << H);
  static constexpr std::uint8_t kMask = kModulus - 1;

  Word() = default;

  /// All-zero word of length 2^m.
  explicit Word(int m) : m_(check_m(m)), v_(std::size_t{1} << m, 0) {}

  /// Length must be a power of two; symbols must lie in Z_{2^H}.
  explicit Word(std::vector<std::uint8_t> values) : v_(std::move(values)) {
    m_ = log2_exact(v_.size());
    check_m(m_);
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] >= kModulus)
        throw std::invalid_argument("symbol " + std::to_string(v_[i]) + " at position " + std::to_string(i) +
                                    " outside Z_" + std::to_string(kModulus));
  }

  Word(std::initializer_list<int> values) : Word(to_bytes(values)) {}

  int m() const { return m_; }
  std::size_t size() const { return v_.size(); }
  std::uint8_t operator[](std::size_t i) const { return v_[i]; }
  void set(std::size_t i, unsigned value) { v_[i] = static_cast<std::uint8_t>(value & kMask); }
  std::span<const std::uint8_t> values() const { return v_; }

  Word& operator+=(const Word& o) {
    check_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = static_cast<std::uint8_t>((v_[i] + o.v_[i]) & kMask);
    return *this;
  }
  Word& operator-=(const Word& o) {
    check_same(o);
    for (std::size_t i = 0; i < v_.size(); ++i)
      v_[i] = static_cast<std::uint8_t>((v_[i] + kModulus - o.v_[i]) & kMask);
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend Word operator-(Word a, const Word& b) { return a -= b; }
  friend Word operator*(unsigned c, Word a) {
    for (auto& x : a.v_) x = static_cast<std::uint8_t>((c * x) & kMask);
    return a;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.v_ <=> b.v_; }

  /// Symbols as digits, no separators.
  std::string to_string() const {
    std::string s(v_.size(), '0');
    for (std::size_t i = 0; i < v_.size(); ++i) s[i] = static_cast<char>('0' + v_[i]);
    return s;
  }

 private:
  static int check_m(int m) {
    if (m < 0 || m > kMaxVars) throw std::invalid_argument("word needs 0 <= m <= 16, got " + std::to_string(m));
    return m;
  }
  static std::vector<std::uint8_t> to_bytes(std::initializer_list<int> values) {
    std::vector<std::uint8_t> out;
    out.reserve(values.size());
    for (int v : values) {
      if (v < 0 || v >= kModulus) throw std::invalid_argument("symbol outside alphabet");
      out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
  }
  void check_same(const Word& o) const {
    if (o.v_.size() != v_.size()) throw std::invalid_argument("word length mismatch");
  }

  int m_{0};
  std::vector<std::uint8_t> v_{0};
};

using Z4Word = Word<2>;
using BinWord = Word<1>;

/// f: F^m -> Z_{2^H} by its algebraic normal form; coefficient k is the monomial prod_{j in k} x_j.
template <unsigned H>
class Gbf {
 public:
  static constexpr std::uint8_t kMask = Word<H>::kMask;

  Gbf() = default;
  explicit Gbf(int m) : m_(m), c_(std::size_t{1} << m, 0) {
    if (m < 0 || m > kMaxVars) throw std::invalid_argument("Gbf needs 0 <= m <= 16");
  }

  int m() const { return m_; }
  std::uint8_t coeff(std::uint32_t mask) const { return c_.at(mask); }
  void set_coeff(std::uint32_t mask, unsigned value) { c_.at(mask) = static_cast<std::uint8_t>(value & kMask); }
  std::span<const std::uint8_t> coeffs() const { return c_; }

  friend bool operator==(const Gbf&, const Gbf&) = default;

 private:
  int m_{0};
  std::vector<std::uint8_t> c_{0};
};

/// Subset-lattice zeta (sign = +1) or Moebius (sign = -1) transform modulo 2^H, in place.
template <unsigned H>
void subset_transform(std::vector<std::uint8_t>& v, bool inverse) {
  constexpr unsigned mask = (1u << H) - 1u;
  for (std::size_t bit = 1; bit < v.size(); bit <<= 1)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i & bit) {
        const unsigned lower = v[i ^ bit];
        v[i] = static_cast<std::uint8_t>((inverse ? v[i] + (mask + 1) - lower : v[i] + lower) & mask);
      }
}

template <unsigned H>
Word<H> anf_to_word(const Gbf<H>& f) {
  std::vector<std::uint8_t> v(f.coeffs().begin(), f.coeffs().end());
  subset_transform<H>(v, false);
  return Word<H>(std::move(v));
}

template <unsigned H>
Gbf<H> word_to_anf(const Word<H>& w) {
  std::vector<std::uint8_t> v(w.values().begin(), w.values().end());
  subset_transform<H>(v, true);
  Gbf<H> f(w.m());
  for (std::uint32_t k = 0; k < v.size(); ++k) f.set_coeff(k, v[k]);
  return f;
}

/// Maximum weight of a monomial with nonzero coefficient; the zero function has degree 0.
template <unsigned H>
int degree(const Gbf<H>& f) {
  int d = 0;
  const auto c = f.coeffs();
  for (std::uint32_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) d = std::max(d, std::popcount(k));
  return d;
}

template <unsigned H>
int degree(const Word<H>& w) {
  return degree(word_to_anf(w));
}

/// Value-word split f = a + 2b with a, b binary.
inline std::pair<BinWord, BinWord> two_adic_split(const Z4Word& w) {
  BinWord a(w.m()), b(w.m());
  for (std::size_t i = 0; i < w.size(); ++i) {
    a.set(i, w[i] & 1u);
    b.set(i, w[i] >> 1);
  }
  return {std::move(a), std::move(b)};
}

/// ANF form of the split. The split is taken on values; splitting ANF coefficients is a different map.
inline std::pair<Gbf<1>, Gbf<1>> two_adic_split(const Gbf<2>& f) {
  auto [a, b] = two_adic_split(anf_to_word(f));
  return {word_to_anf(a), word_to_anf(b)};
}

/// a + 2b, the inverse of two_adic_split.
inline Z4Word two_adic_join(const BinWord& a, const BinWord& b) {
  if (a.size() != b.size()) throw std::invalid_argument("two_adic_join: length mismatch");
  Z4Word w(a.m());
  for (std::size_t i = 0; i < a.size(); ++i) w.set(i, a[i] + 2u * b[i]);
  return w;
}

/// Binary word viewed as a Z4 word with symbols in {0, 1}.
inline Z4Word embed(const BinWord& a) { return two_adic_join(a, BinWord(a.m())); }

/// Bijection of F^k, stored as the image of each point.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> image) : img_(std::move(image)) {
    k_ = log2_exact(img_.size());
    std::vector<bool> seen(img_.size(), false);
    for (auto y : img_) {
      if (y >= img_.size() || seen[y]) throw std::invalid_argument("Permutation: map on F^k is not bijective");
      seen[y] = true;
    }
  }

  static Permutation identity(int k) {
    std::vector<std::uint32_t> img(std::size_t{1} << k);
    std::iota(img.begin(), img.end(), 0u);
    return Permutation(std::move(img));
  }

  int k() const { return k_; }
  std::size_t size() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return img_[x]; }
  std::span<const std::uint32_t> image() const { return img_; }

  Permutation inverse() const {
    std::vector<std::uint32_t> inv(img_.size());
    for (std::uint32_t x = 0; x < img_.size(); ++x) inv[img_[x]] = x;
    return Permutation(std::move(inv));
  }

 private:
  int k_{0};
  std::vector<std::uint32_t> img_{0};
};

}  // namespace z4ca
