#pragma once

// Exact arithmetic used throughout the library:
//   * GF(2^m) in a polynomial basis, with absolute trace,
//   * linearized polynomials L_a and their symmetric bilinear forms tr(y L_a(x)),
//   * symmetric matrices over GF(2) with rank,
//   * Gaussian integers for exact spectra.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace z4ca {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Gaussian integers
// ---------------------------------------------------------------------------

template <class Int>
struct GaussInt {
  Int re{0};
  Int im{0};

  constexpr GaussInt() = default;
  constexpr GaussInt(Int r, Int i = Int{0}) : re(std::move(r)), im(std::move(i)) {}

  /// i^k for k taken modulo 4.
  static constexpr GaussInt unit_power(unsigned k) {
    switch (k & 3u) {
      case 0: return {Int{1}, Int{0}};
      case 1: return {Int{0}, Int{1}};
      case 2: return {Int{-1}, Int{0}};
      default: return {Int{0}, Int{-1}};
    }
  }

  constexpr Int norm() const { return re * re + im * im; }
  constexpr GaussInt conj() const { return {re, -im}; }

  constexpr GaussInt& operator+=(const GaussInt& o) { re += o.re; im += o.im; return *this; }
  constexpr GaussInt& operator-=(const GaussInt& o) { re -= o.re; im -= o.im; return *this; }
  friend constexpr GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend constexpr GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend constexpr GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend constexpr GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend constexpr bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re == b.re && a.im == b.im;
  }

  /// Exact division by an integer; throws if the quotient is not integral.
  GaussInt exact_div(const Int& d) const {
    if (d == Int{0} || re % d != Int{0} || im % d != Int{0})
      throw std::domain_error("GaussInt::exact_div: inexact division");
    return {re / d, im / d};
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussInt& z) {
    return os << '(' << z.re << (z.im < Int{0} ? "" : "+") << z.im << "i)";
  }
};

/// Fixed-width carrier used for spectra; |f^(u)| <= 2^m keeps every value far below 2^63.
using Gauss = GaussInt<std::int64_t>;
/// Unbounded carrier with the same interface.
using BigGauss = GaussInt<BigInt>;

// ---------------------------------------------------------------------------
// Binary polynomials (bitmask representation, bit j = coefficient of x^j)
// ---------------------------------------------------------------------------

namespace poly2 {

inline int degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

inline std::uint64_t mod(std::uint64_t a, std::uint64_t p) {
  const int dp = degree(p);
  for (int da = degree(a); da >= dp; da = degree(a)) a ^= p << (da - dp);
  return a;
}

/// Irreducible over GF(2) iff no factor of degree 1..deg/2 divides it.
inline bool is_irreducible(std::uint64_t p) {
  const int d = degree(p);
  if (d < 1) return false;
  for (int fd = 1; 2 * fd <= d; ++fd) {
    for (std::uint64_t q = std::uint64_t{1} << fd; q < (std::uint64_t{2} << fd); ++q)
      if (mod(p, q) == 0) return false;
  }
  return true;
}

inline std::string to_hex(std::uint64_t p) {
  std::ostringstream os;
  os << "0x" << std::hex << p;
  return os.str();
}

}  // namespace poly2

// ---------------------------------------------------------------------------
// GF(2^m)
// ---------------------------------------------------------------------------

/// Element of GF(2^m) as coordinates relative to the polynomial basis {1, a, ..., a^(m-1)}.
struct FieldElem {
  std::uint32_t bits{0};

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr FieldElem operator^(FieldElem a, FieldElem b) { return FieldElem{a.bits ^ b.bits}; }
  constexpr FieldElem& operator^=(FieldElem o) { bits ^= o.bits; return *this; }
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

/// One irreducible polynomial per degree; pins basis-dependent outputs bit-for-bit.
inline constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0x0,                                    // unused
    0x3,     0x7,     0xB,     0x13,        // m = 1..4
    0x25,    0x43,    0x83,    0x11D,       // m = 5..8
    0x211,   0x409,   0x805,   0x1053,      // m = 9..12
    0x201B,  0x4443,  0x8003,  0x1100B,     // m = 13..16
};

class Field {
 public:
  static constexpr int kMaxDegree = 16;

  explicit Field(int m) : Field(m, checked_default(m)) {}

  Field(int m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
    if (m < 1 || m > kMaxDegree)
      throw std::invalid_argument("Field: m must lie in [1, 16], got " + std::to_string(m));
    if (poly2::degree(modulus) != m)
      throw std::invalid_argument("Field: modulus " + poly2::to_hex(modulus) + " does not have degree " +
                                  std::to_string(m));
    if (!poly2::is_irreducible(modulus))
      throw std::invalid_argument("Field: modulus " + poly2::to_hex(modulus) + " is reducible");
    for (int j = 0; j < m_; ++j) {
      FieldElem b = basis(j);
      FieldElem acc{};
      FieldElem p = b;
      for (int s = 0; s < m_; ++s) {
        acc ^= p;
        p = square(p);
      }
      if (acc.bits > 1) throw std::logic_error("Field: trace left the prime field");
      trace_mask_ |= acc.bits << j;
    }
  }

  int m() const { return m_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  /// j-th polynomial basis element a^j.
  FieldElem basis(int j) const { return FieldElem{std::uint32_t{1} << j}; }
  FieldElem elem(std::uint32_t bits) const {
    if (bits >= order()) throw std::out_of_range("Field::elem: coordinates exceed m bits");
    return FieldElem{bits};
  }

  FieldElem mul(FieldElem a, FieldElem b) const {
    std::uint64_t prod = 0;
    std::uint64_t x = a.bits;
    for (std::uint32_t y = b.bits; y != 0; y >>= 1, x <<= 1)
      if (y & 1u) prod ^= x;
    return FieldElem{static_cast<std::uint32_t>(poly2::mod(prod, modulus_))};
  }
  FieldElem square(FieldElem a) const { return mul(a, a); }

  FieldElem pow(FieldElem a, std::uint64_t e) const {
    FieldElem r = one();
    for (; e != 0; e >>= 1, a = square(a))
      if (e & 1u) r = mul(r, a);
    return r;
  }

  /// x^(2^j); j is reduced modulo m.
  FieldElem frobenius(FieldElem x, int j) const {
    j %= m_;
    if (j < 0) j += m_;
    for (int s = 0; s < j; ++s) x = square(x);
    return x;
  }

  FieldElem inverse(FieldElem a) const {
    if (a.is_zero()) throw std::domain_error("Field::inverse: zero has no inverse");
    return pow(a, order() - 2);
  }

  /// Absolute trace GF(2^m) -> GF(2); linear, so read off the traces of the basis.
  bool trace(FieldElem x) const { return (std::popcount(x.bits & trace_mask_) & 1) != 0; }

  /// `m:<int> modulus:<hex bitmask>`
  std::string describe() const {
    return "m:" + std::to_string(m_) + " modulus:" + poly2::to_hex(modulus_);
  }

  friend bool operator==(const Field& a, const Field& b) { return a.m_ == b.m_ && a.modulus_ == b.modulus_; }

 private:
  static std::uint32_t checked_default(int m) {
    if (m < 1 || m > kMaxDegree)
      throw std::invalid_argument("Field: m must lie in [1, 16], got " + std::to_string(m));
    return kDefaultModuli[static_cast<std::size_t>(m)];
  }

  int m_;
  std::uint32_t modulus_;
  std::uint32_t trace_mask_{0};
};

inline Field field_new(int m) { return Field(m); }
inline Field field_new(int m, std::uint32_t modulus) { return Field(m, modulus); }
inline bool trace(const Field& f, FieldElem x) { return f.trace(x); }

// ---------------------------------------------------------------------------
// Linearized polynomials
// ---------------------------------------------------------------------------

/// L_a(x) = a_0 x + sum_{j=1..t} (a_j x^(2^j) + a_j^(2^(m-j)) x^(2^(m-j))), with a = coeffs.
struct LinPoly {
  std::vector<FieldElem> coeffs;

  int t() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline void check_linpoly(const Field& f, const LinPoly& l) {
  if (l.coeffs.empty()) throw std::invalid_argument("LinPoly: need at least a_0");
  if (2 * l.t() >= f.m())
    throw std::invalid_argument("LinPoly: t = " + std::to_string(l.t()) + " violates t < m/2 for m = " +
                                std::to_string(f.m()));
  for (auto c : l.coeffs)
    if (c.bits >= f.order()) throw std::invalid_argument("LinPoly: coefficient outside the field");
}

inline FieldElem linpoly_eval(const Field& f, const LinPoly& l, FieldElem x) {
  check_linpoly(f, l);
  const int m = f.m();
  FieldElem r = f.mul(l.coeffs[0], x);
  for (int j = 1; j <= l.t(); ++j) {
    const FieldElem a = l.coeffs[static_cast<std::size_t>(j)];
    r ^= f.mul(a, f.frobenius(x, j));
    r ^= f.mul(f.frobenius(a, m - j), f.frobenius(x, m - j));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Symmetric binary matrices
// ---------------------------------------------------------------------------

/// m x m symmetric matrix over GF(2); row j is a bitmask with bit k = b_jk.
class SymMatrix {
 public:
  static constexpr int kMaxDim = 16;
  using Row = std::uint16_t;

  SymMatrix() = default;
  explicit SymMatrix(int m) : m_(m) {
    if (m < 0 || m > kMaxDim) throw std::invalid_argument("SymMatrix: dimension must lie in [0, 16]");
  }

  static SymMatrix identity(int m) {
    SymMatrix b(m);
    for (int j = 0; j < m; ++j) b.rows_[static_cast<std::size_t>(j)] = static_cast<Row>(1u << j);
    return b;
  }

  static SymMatrix from_rows(int m, const std::vector<std::uint32_t>& rows) {
    if (static_cast<int>(rows.size()) != m) throw std::invalid_argument("SymMatrix: need exactly m rows");
    SymMatrix b(m);
    const std::uint32_t mask = m == 0 ? 0u : (std::uint32_t{1} << m) - 1u;
    for (int j = 0; j < m; ++j) {
      if (rows[static_cast<std::size_t>(j)] & ~mask)
        throw std::invalid_argument("SymMatrix: row " + std::to_string(j) + " has bits beyond column m-1");
      b.rows_[static_cast<std::size_t>(j)] = static_cast<Row>(rows[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (b.at(j, k) != b.at(k, j))
          throw std::invalid_argument("SymMatrix: not symmetric at (" + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
    return b;
  }

  /// Number of free entries (upper triangle including the diagonal).
  static int upper_size(int m) { return m * (m + 1) / 2; }

  /// Upper-triangle bits in row-major order, first entry most significant. Ascending keys
  /// enumerate matrices in lexicographic row-major order. Requires m <= 10.
  std::uint64_t upper_key() const {
    if (m_ > 10) throw std::invalid_argument("SymMatrix::upper_key: m > 10");
    std::uint64_t key = 0;
    for (int j = 0; j < m_; ++j)
      for (int k = j; k < m_; ++k) key = (key << 1) | (at(j, k) ? 1u : 0u);
    return key;
  }

  static SymMatrix from_upper_key(int m, std::uint64_t key) {
    if (m > 10) throw std::invalid_argument("SymMatrix::from_upper_key: m > 10");
    SymMatrix b(m);
    int pos = upper_size(m) - 1;
    for (int j = 0; j < m; ++j)
      for (int k = j; k < m; ++k, --pos)
        if ((key >> pos) & 1u) b.set(j, k, true);
    return b;
  }

  int dim() const { return m_; }
  bool at(int j, int k) const { return (rows_[static_cast<std::size_t>(j)] >> k) & 1u; }
  Row row(int j) const { return rows_[static_cast<std::size_t>(j)]; }
  /// Sets b_jk and b_kj.
  void set(int j, int k, bool v) {
    const auto bj = static_cast<Row>(1u << j), bk = static_cast<Row>(1u << k);
    auto& rj = rows_[static_cast<std::size_t>(j)];
    auto& rk = rows_[static_cast<std::size_t>(k)];
    if (v) { rj |= bk; rk |= bj; } else { rj &= static_cast<Row>(~bk); rk &= static_cast<Row>(~bj); }
  }

  bool is_zero() const {
    for (int j = 0; j < m_; ++j)
      if (rows_[static_cast<std::size_t>(j)]) return false;
    return true;
  }

  /// GF(2) rank by Gaussian elimination on the row bitmasks.
  int rank() const {
    auto r = rows_;
    int rank = 0;
    for (int col = 0; col < m_ && rank < m_; ++col) {
      const Row bit = static_cast<Row>(1u << col);
      int piv = -1;
      for (int j = rank; j < m_; ++j)
        if (r[static_cast<std::size_t>(j)] & bit) { piv = j; break; }
      if (piv < 0) continue;
      std::swap(r[static_cast<std::size_t>(piv)], r[static_cast<std::size_t>(rank)]);
      for (int j = 0; j < m_; ++j)
        if (j != rank && (r[static_cast<std::size_t>(j)] & bit)) r[static_cast<std::size_t>(j)] ^= r[static_cast<std::size_t>(rank)];
      ++rank;
    }
    return rank;
  }

  /// z B as a bitmask, where z is a row vector given as a bitmask.
  Row left_mul(std::uint32_t z) const {
    Row out = 0;
    for (int j = 0; j < m_; ++j)
      if ((z >> j) & 1u) out ^= rows_[static_cast<std::size_t>(j)];
    return out;
  }

  /// x B y^T over GF(2).
  bool bilinear(std::uint32_t x, std::uint32_t y) const { return (std::popcount(left_mul(x) & y) & 1) != 0; }

  friend SymMatrix operator^(SymMatrix a, const SymMatrix& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("SymMatrix: dimension mismatch");
    for (int j = 0; j < a.m_; ++j) a.rows_[static_cast<std::size_t>(j)] ^= b.rows_[static_cast<std::size_t>(j)];
    return a;
  }
  SymMatrix& operator^=(const SymMatrix& b) { return *this = *this ^ b; }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_ && a.rows_ == b.rows_; }

  /// m lines of m bits, row-major, each terminated by '\n'.
  std::string to_string() const {
    std::string s;
    for (int j = 0; j < m_; ++j) {
      for (int k = 0; k < m_; ++k) s += at(j, k) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(m_);
    for (int j = 0; j < m_; ++j) h = h * 0x9E3779B97F4A7C15ull + rows_[static_cast<std::size_t>(j)];
    return h;
  }

 private:
  int m_{0};
  std::array<Row, kMaxDim> rows_{};
};

struct SymMatrixHash {
  std::size_t operator()(const SymMatrix& b) const { return b.hash(); }
};

inline int sym_rank(const SymMatrix& b) { return b.rank(); }

/// Matrix of B_a(x, y) = tr(y L_a(x)) in the polynomial basis: entry (j,k) = tr(l_k L_a(l_j)).
inline SymMatrix bilinear_matrix(const Field& f, const LinPoly& l) {
  check_linpoly(f, l);
  const int m = f.m();
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j) {
    const FieldElem lj = linpoly_eval(f, l, f.basis(j));
    for (int k = 0; k < m; ++k)
      if (f.trace(f.mul(f.basis(k), lj))) rows[static_cast<std::size_t>(j)] |= std::uint32_t{1} << k;
  }
  return SymMatrix::from_rows(m, rows);
}

/// Visits every m x m symmetric matrix in ascending lexicographic (row-major) order.
inline void for_each_symmetric(int m, const std::function<void(const SymMatrix&)>& fn) {
  if (m < 0 || m > 6) throw std::invalid_argument("for_each_symmetric: m must lie in [0, 6]");
  const std::uint64_t total = std::uint64_t{1} << SymMatrix::upper_size(m);
  for (std::uint64_t key = 0; key < total; ++key) fn(SymMatrix::from_upper_key(m, key));
}

/// Closed-form number of nonsingular m x m symmetric matrices over GF(2).
inline BigInt nonsingular_symmetric_formula(int m) {
  if (m < 1) throw std::invalid_argument("nonsingular_symmetric_formula: m must be positive");
  BigInt n = 1;
  if (m % 2 == 0) {
    for (int j = 1; j <= m / 2; ++j) n *= (BigInt(1) << (m + 1)) - (BigInt(1) << (2 * j));
  } else {
    for (int j = 0; j <= (m - 1) / 2; ++j) n *= (BigInt(1) << m) - (BigInt(1) << (2 * j));
  }
  return n;
}

/// Exhaustive count over all 2^(m(m+1)/2) symmetric matrices.
inline std::uint64_t count_nonsingular_symmetric(int m) {
  if (m < 1 || m > 6)
    throw std::invalid_argument("count_nonsingular_symmetric: exhaustive mode needs 1 <= m <= 6, got " +
                                std::to_string(m));
  std::uint64_t n = 0;
  for_each_symmetric(m, [&](const SymMatrix& b) { n += b.rank() == m ? 1 : 0; });
  return n;
}

}  // namespace z4ca
