#pragma once

// Quaternary Kerdock and Delsarte-Goethals codes built from the matrix sets
//   M(t, m) = { matrix of B_a(x, y) = tr(y L_a(x)) : a in GF(2^m)^(t+1) },
// and the constant-amplitude subcodes obtained from their full-rank cosets.
//
// Index convention: a tuple a = (a_0, ..., a_t) is encoded as the integer
// sum_j a_j.bits << (j m). All selections walk indices in ascending order.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "z4ca/algebra.hpp"
#include "z4ca/codes.hpp"

namespace z4ca {

class MtmSet {
 public:
  MtmSet(Field field, int t) : field_(std::move(field)), t_(t) {
    const int m = field_.m();
    if (t < 0 || 2 * t >= m)
      throw std::invalid_argument("M(t, m): t = " + std::to_string(t) + " violates 0 <= t < m/2 for m = " +
                                  std::to_string(m));
    if (coordinate_bits() > 62) throw std::invalid_argument("M(t, m): index space too large");
    // B_a is GF(2)-linear in a, so the matrices of the unit tuples span the set.
    for (int bit = 0; bit < coordinate_bits(); ++bit) basis_.push_back(matrix_direct(std::uint64_t{1} << bit));
  }

  const Field& field() const { return field_; }
  int t() const { return t_; }
  int m() const { return field_.m(); }
  int coordinate_bits() const { return m() * (t_ + 1); }
  std::uint64_t size() const { return std::uint64_t{1} << coordinate_bits(); }

  LinPoly linpoly(std::uint64_t index) const {
    LinPoly l;
    const std::uint64_t mask = (std::uint64_t{1} << m()) - 1u;
    for (int j = 0; j <= t_; ++j) l.coeffs.push_back(FieldElem{static_cast<std::uint32_t>((index >> (j * m())) & mask)});
    return l;
  }

  /// Matrix from the definition: tr(l_k L_a(l_j)).
  SymMatrix matrix_direct(std::uint64_t index) const { return bilinear_matrix(field_, linpoly(index)); }

  /// Matrix by superposing the unit-tuple matrices.
  SymMatrix matrix(std::uint64_t index) const {
    SymMatrix b(m());
    for (int bit = 0; bit < coordinate_bits(); ++bit)
      if ((index >> bit) & 1u) b ^= basis_[static_cast<std::size_t>(bit)];
    return b;
  }

  /// Visits (index, matrix) for index = 0, 1, ..., size()-1, updating incrementally.
  void for_each(const std::function<void(std::uint64_t, const SymMatrix&)>& fn) const {
    std::vector<SymMatrix> prefix;  // prefix[b] = basis_0 ^ ... ^ basis_b
    SymMatrix acc(m());
    for (const auto& b : basis_) prefix.push_back(acc ^= b);
    SymMatrix cur(m());
    const std::uint64_t n = size();
    for (std::uint64_t idx = 0;; ++idx) {
      fn(idx, cur);
      if (idx + 1 == n) break;
      cur ^= prefix[static_cast<std::size_t>(std::countr_zero(idx + 1))];
    }
  }

 private:
  Field field_;
  int t_;
  std::vector<SymMatrix> basis_;
};

inline MtmSet mtm_build(const Field& field, int t) { return MtmSet(field, t); }

/// Exact number of nonsingular matrices in M(t, m) by enumeration.
inline std::uint64_t count_nonsingular_in_mtm(const MtmSet& s) {
  if (s.coordinate_bits() > 24)
    throw std::invalid_argument("count_nonsingular_in_mtm: 2^" + std::to_string(s.coordinate_bits()) +
                                " matrices exceed the enumeration limit 2^24");
  std::uint64_t n = 0;
  s.for_each([&](std::uint64_t, const SymMatrix& b) { n += b.rank() == s.m() ? 1 : 0; });
  return n;
}

/// 2^m - 1 + (2^m + 1)(2^m - 1)/3, the number of nonsingular members of M(1, m).
inline std::uint64_t nonsingular_in_m1_formula(int m) {
  const std::uint64_t q = std::uint64_t{1} << m;
  return q - 1 + (q + 1) * (q - 1) / 3;
}

/// |DG(t, m)| = 2^(m(t+2)+2).
inline unsigned dg_size_log2(int t, int m) { return static_cast<unsigned>(m * (t + 2) + 2); }
/// d_L(DG(t, m)) = 2^m - 2^(t + floor(m/2)).
inline std::uint64_t dg_distance_formula(int t, int m) {
  return (std::uint64_t{1} << m) - (std::uint64_t{1} << (t + m / 2));
}

/// DG(t, m): union over M(t, m) of Q_B + ZRM(1, m). Linear over Z4.
inline CodeBook dg(int t, int m, const Field& field) {
  if (field.m() != m) throw std::invalid_argument("dg: field degree differs from m");
  MtmSet s(field, t);
  if (s.coordinate_bits() > 20) throw std::invalid_argument("dg: more than 2^20 cosets");
  std::vector<SymMatrix> ms;
  ms.reserve(s.size());
  s.for_each([&](std::uint64_t, const SymMatrix& b) { ms.push_back(b); });
  return CodeBook::from_cosets(CosetFamily::from_quad_forms(m, std::move(ms), /*group=*/true));
}
inline CodeBook dg(int t, int m) { return dg(t, m, Field(m)); }

inline CodeBook kerdock(int m, const Field& field) { return dg(0, m, field); }
inline CodeBook kerdock(int m) { return dg(0, m); }

/// Indices a (ascending) whose B_a is nonsingular, stopping after `limit` hits.
inline std::vector<std::uint64_t> full_rank_indices(const MtmSet& s, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (s.coordinate_bits() > 24) throw std::invalid_argument("full_rank_indices: index space exceeds 2^24");
  s.for_each([&](std::uint64_t idx, const SymMatrix& b) {
    if (out.size() < limit && b.rank() == s.m()) out.push_back(idx);
  });
  return out;
}

namespace detail {

inline CodeBook full_rank_dg_subcode(int m, int t, const Field& field, std::uint64_t wanted, const char* who) {
  MtmSet s(field, t);
  const auto idx = full_rank_indices(s, wanted);
  if (idx.size() < wanted)
    throw std::logic_error(std::string(who) + ": only " + std::to_string(idx.size()) + " full-rank cosets, need " +
                           std::to_string(wanted));
  std::vector<SymMatrix> ms;
  ms.reserve(idx.size());
  for (auto i : idx) ms.push_back(s.matrix(i));
  return CodeBook::from_cosets(CosetFamily::from_quad_forms(m, std::move(ms)));
}

}  // namespace detail

/// 2^(m-1) constant-amplitude cosets of K(m) (the zero coset excluded), smallest indices first.
/// Rate (2m+1)/2^m, d_L = 2^m - 2^floor(m/2).
inline CodeBook construction4(int m, const Field& field) {
  if (m < 2) throw std::invalid_argument("construction4: requires m >= 2");
  return detail::full_rank_dg_subcode(m, 0, field, std::uint64_t{1} << (m - 1), "construction4");
}
inline CodeBook construction4(int m) { return construction4(m, Field(m)); }

/// 2^((t+1)m - 2) rank-m cosets of DG(t, m), smallest indices first.
/// Rate (t+2)m/2^m, d_L = 2^m - 2^(t + floor(m/2)).
inline CodeBook construction5(int m, int t, const Field& field) {
  if (t < 1 || 2 * t >= m)
    throw std::invalid_argument("construction5: requires 1 <= t < m/2, got t = " + std::to_string(t) +
                                ", m = " + std::to_string(m));
  return detail::full_rank_dg_subcode(m, t, field, std::uint64_t{1} << ((t + 1) * m - 2), "construction5");
}
inline CodeBook construction5(int m, int t = 1) { return construction5(m, t, Field(m)); }

}  // namespace z4ca
