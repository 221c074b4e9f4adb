#pragma once

// Reed-Muller-type codes over Z2 and Z4, Z4-valued quadratic forms, unions of cosets of
// ZRM(1, m), and exact minimum-distance / PAPR evaluation of such codebooks.
//
// Distances of coset unions.  Let Z = ZRM(1, m) = { e + 2 c.x : e in Z4, c in F^m }.  For a
// union of cosets R_i + Z the minimum Lee distance is
//     min( d_L(Z), min_{i != j} min_{z in Z} wt_L(R_i - R_j + z) ),
// because Z is linear and every difference of two words lies in some R_i - R_j + Z.  The inner
// minimum is read off the spectrum: wt_L(v) = n - Re sum_x i^{v(x)}, hence
//     min_{z in Z} wt_L(f + z) = n - max_c max(|Re f^(c)|, |Im f^(c)|).
// For quadratic-form representatives R_i - R_j is congruent to Q_{B_i xor B_j} modulo Z, so the
// pair weight depends only on B_i xor B_j and is memoised on that key.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "z4ca/algebra.hpp"
#include "z4ca/gbf.hpp"
#include "z4ca/graymap.hpp"
#include "z4ca/spectral.hpp"

namespace z4ca {

enum class Alphabet { z2, z4 };

inline unsigned alphabet_bits(Alphabet a) { return a == Alphabet::z2 ? 1u : 2u; }
inline const char* alphabet_name(Alphabet a) { return a == Alphabet::z2 ? "Z2" : "Z4"; }

/// count * 2^shift, enough to describe code sizes far beyond 2^64.
struct CodeSize {
  std::uint64_t count{0};
  unsigned shift{0};

  static CodeSize power_of_two(unsigned e) { return {1, e}; }

  bool empty() const { return count == 0; }
  bool is_power_of_two() const { return std::has_single_bit(count); }
  /// floor(log2 |C|); the number of encodable bits.
  unsigned floor_log2() const { return static_cast<unsigned>(std::bit_width(count) - 1) + shift; }
  bool fits_u64() const { return count != 0 && std::bit_width(count) + shift <= 64; }
  std::uint64_t value() const {
    if (!fits_u64()) throw std::overflow_error("CodeSize: value exceeds 64 bits");
    return count << shift;
  }
  BigInt big() const { return BigInt(count) << shift; }
  CodeSize times_pow2(unsigned e) const { return {count, shift + e}; }

  friend bool operator==(const CodeSize& a, const CodeSize& b) { return a.big() == b.big(); }
};

// ---------------------------------------------------------------------------
// Linear codes generated by (multiples of) monomials
// ---------------------------------------------------------------------------

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return r;
}

/// Masks of the m-variate monomials of exactly the given degree, ascending.
inline std::vector<std::uint32_t> monomials_of_degree(int m, int deg) {
  std::vector<std::uint32_t> out;
  if (deg < 0 || deg > m) return out;
  for (std::uint32_t k = 0; k < (std::uint32_t{1} << m); ++k)
    if (std::popcount(k) == deg) out.push_back(k);
  return out;
}

/// Value word of the monomial prod_{j in mask} x_j, symbols in {0, 1}.
inline std::vector<std::uint8_t> monomial_values(int m, std::uint32_t mask) {
  std::vector<std::uint8_t> v(std::size_t{1} << m);
  for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = (x & mask) == mask ? 1 : 0;
  return v;
}

enum class RmFamily { rm, rm4, zrm };

inline const char* family_name(RmFamily f) {
  switch (f) {
    case RmFamily::rm: return "rm";
    case RmFamily::rm4: return "rm4";
    default: return "zrm";
  }
}

struct Generator {
  std::vector<std::uint8_t> word;
  unsigned order;  // additive order of the generator
};

class LinearCode {
 public:
  LinearCode(RmFamily family, int r, int m) : family_(family), r_(r), m_(m) {
    if (m < 0 || m > kMaxVars) throw std::invalid_argument("LinearCode: m must lie in [0, 16]");
    const int rmax = family == RmFamily::zrm ? m + 1 : m;
    if (r < 0 || r > rmax)
      throw std::invalid_argument(std::string(family_name(family)) + "(r, m): r = " + std::to_string(r) +
                                  " outside [0, " + std::to_string(rmax) + "]");
    // Generators by ascending monomial mask.
    for (std::uint32_t k = 0; k < (std::uint32_t{1} << m); ++k) {
      const int d = std::popcount(k);
      unsigned mult = 0, order = 0;
      switch (family) {
        case RmFamily::rm:
          if (d <= r) mult = 1, order = 2;
          break;
        case RmFamily::rm4:
          if (d <= r) mult = 1, order = 4;
          break;
        case RmFamily::zrm:
          if (d <= r - 1) mult = 1, order = 4;
          else if (d == r) mult = 2, order = 2;
          break;
      }
      if (order == 0) continue;
      auto w = monomial_values(m, k);
      for (auto& x : w) x = static_cast<std::uint8_t>(x * mult);
      masks_.push_back(k);
      gens_.push_back({std::move(w), order});
    }
  }

  RmFamily family() const { return family_; }
  int r() const { return r_; }
  int m() const { return m_; }
  Alphabet alphabet() const { return family_ == RmFamily::rm ? Alphabet::z2 : Alphabet::z4; }
  std::size_t length() const { return std::size_t{1} << m_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<std::uint32_t>& generator_masks() const { return masks_; }

  /// Cardinality from the closed forms; agrees with the product of generator orders.
  CodeSize size() const {
    unsigned e = 0;
    switch (family_) {
      case RmFamily::rm:
        for (int j = 0; j <= r_; ++j) e += static_cast<unsigned>(binomial(m_, j));
        break;
      case RmFamily::rm4:
        for (int j = 0; j <= r_; ++j) e += 2 * static_cast<unsigned>(binomial(m_, j));
        break;
      case RmFamily::zrm:
        for (int j = 0; j <= r_ - 1; ++j) e += 2 * static_cast<unsigned>(binomial(m_, j));
        e += static_cast<unsigned>(binomial(m_, r_));
        break;
    }
    return CodeSize::power_of_two(e);
  }

  /// Membership through the unique ANF.
  bool contains(std::span<const std::uint8_t> w) const {
    if (w.size() != length()) return false;
    if (family_ == RmFamily::rm) {
      std::vector<std::uint8_t> v(w.begin(), w.end());
      for (auto x : v)
        if (x > 1) return false;
      return degree(word_to_anf(BinWord(std::move(v)))) <= r_;
    }
    std::vector<std::uint8_t> v(w.begin(), w.end());
    for (auto x : v)
      if (x > 3) return false;
    const auto f = word_to_anf(Z4Word(std::move(v)));
    const auto c = f.coeffs();
    for (std::uint32_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const int d = std::popcount(k);
      if (family_ == RmFamily::rm4) {
        if (d > r_) return false;
      } else {
        if (d > r_ || (d == r_ && (c[k] & 1u))) return false;
      }
    }
    return true;
  }

  /// Visits every codeword once (odometer over generator multiples).
  void for_each(const std::function<void(std::span<const std::uint8_t>)>& fn) const {
    const unsigned mask = family_ == RmFamily::rm ? 1u : 3u;
    std::vector<std::uint8_t> w(length(), 0);
    std::vector<unsigned> digit(gens_.size(), 0);
    for (;;) {
      fn(w);
      std::size_t i = 0;
      for (; i < gens_.size(); ++i) {
        const auto& g = gens_[i].word;
        for (std::size_t p = 0; p < w.size(); ++p) w[p] = static_cast<std::uint8_t>((w[p] + g[p]) & mask);
        if (++digit[i] < gens_[i].order) break;
        digit[i] = 0;
      }
      if (i == gens_.size()) return;
    }
  }

 private:
  RmFamily family_;
  int r_;
  int m_;
  std::vector<Generator> gens_;
  std::vector<std::uint32_t> masks_;
};

inline LinearCode rm(int r, int m) { return LinearCode(RmFamily::rm, r, m); }
inline LinearCode rm4(int r, int m) { return LinearCode(RmFamily::rm4, r, m); }
inline LinearCode zrm(int r, int m) { return LinearCode(RmFamily::zrm, r, m); }

/// Minimum nonzero weight (Lee over Z4, Hamming over Z2) by enumerating all codewords.
inline std::uint64_t min_weight_enumerated(const LinearCode& c) {
  if (!c.size().fits_u64() || c.size().value() > (std::uint64_t{1} << 32))
    throw std::invalid_argument("min_weight_enumerated: code too large to enumerate");
  if (c.size().value() < 2) throw std::invalid_argument("min_weight_enumerated: code has a single word");
  const bool lee = c.alphabet() == Alphabet::z4;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  c.for_each([&](std::span<const std::uint8_t> w) {
    const std::uint64_t wt = lee ? lee_weight(w) : hamming_weight(w);
    if (wt != 0) best = std::min(best, wt);
  });
  return best;
}

/// Minimum nonzero weight by listing all words of weight 1, 2, ... in turn and testing membership.
/// Exact; cost grows with the minimum distance rather than with |C|.
inline std::uint64_t min_weight_support_search(const LinearCode& c, std::uint64_t max_candidates = 200'000'000) {
  const std::size_t n = c.length();
  const bool lee = c.alphabet() == Alphabet::z4;
  std::vector<std::uint8_t> w(n, 0);
  std::uint64_t visited = 0;
  // symbols and their weights available per position
  const std::vector<std::pair<std::uint8_t, unsigned>> syms =
      lee ? std::vector<std::pair<std::uint8_t, unsigned>>{{1, 1}, {3, 1}, {2, 2}}
          : std::vector<std::pair<std::uint8_t, unsigned>>{{1, 1}};
  std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned budget) -> bool {
    if (budget == 0) {
      if (++visited > max_candidates) throw std::runtime_error("min_weight_support_search: candidate limit exceeded");
      return c.contains(w);
    }
    for (std::size_t p = pos; p < n; ++p)
      for (auto [s, wt] : syms) {
        if (wt > budget) continue;
        w[p] = s;
        const bool hit = rec(p + 1, budget - wt);
        w[p] = 0;
        if (hit) return true;
      }
    return false;
  };
  const unsigned max_w = static_cast<unsigned>(lee ? 2 * n : n);
  for (unsigned target = 1; target <= max_w; ++target)
    if (rec(0, target)) return target;
  throw std::invalid_argument("min_weight_support_search: code has no nonzero word");
}

/// Minimum nonzero weight of a code of length <= 64 by a Gray-code walk over the binary expansion
/// of the generators (g and 2g for each generator of order 4), one addition per codeword.
inline std::uint64_t min_weight_packed(const LinearCode& c) {
  if (c.length() > 64) throw std::invalid_argument("min_weight_packed: length exceeds 64");
  if (!c.size().fits_u64() || c.size().value() > (std::uint64_t{1} << 32))
    throw std::invalid_argument("min_weight_packed: code too large to enumerate");
  if (c.size().value() < 2) throw std::invalid_argument("min_weight_packed: code has a single word");
  const bool lee = c.alphabet() == Alphabet::z4;
  // A word as two bit planes: symbol = lo + 2 hi.
  struct Planes {
    std::uint64_t lo{0}, hi{0};
  };
  auto planes = [](const std::vector<std::uint8_t>& w, unsigned factor) {
    Planes p;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const unsigned v = (w[i] * factor) & 3u;
      p.lo |= std::uint64_t{v & 1u} << i;
      p.hi |= std::uint64_t{v >> 1} << i;
    }
    return p;
  };
  std::vector<Planes> plus, minus;
  for (const auto& g : c.generators()) {
    for (unsigned factor = 1; factor < g.order; factor *= 2) {
      const Planes p = planes(g.word, factor);
      plus.push_back(p);
      minus.push_back(lee ? Planes{p.lo, p.hi ^ p.lo} : p);
    }
  }
  const std::size_t n = plus.size();
  Planes w;
  std::uint64_t state = 0, best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(i));
    state ^= std::uint64_t{1} << j;
    const Planes& d = (state >> j) & 1u ? plus[j] : minus[j];
    if (lee) w = {w.lo ^ d.lo, w.hi ^ d.hi ^ (w.lo & d.lo)};
    else w.lo ^= d.lo;
    const auto wt = static_cast<std::uint64_t>(lee ? std::popcount(w.hi) + std::popcount(w.hi ^ w.lo) : std::popcount(w.lo));
    if (wt != 0 && wt < best) best = wt;
  }
  return best;
}

inline std::uint64_t min_weight(const LinearCode& c) {
  if (c.size().fits_u64()) {
    const std::uint64_t n = c.size().value();
    if (n <= (std::uint64_t{1} << 22)) return min_weight_enumerated(c);
    if (c.length() <= 64 && n <= (std::uint64_t{1} << 30)) return min_weight_packed(c);
  }
  return min_weight_support_search(c);
}

/// min_weight when it finishes quickly by enumeration; empty otherwise.
inline std::optional<std::uint64_t> min_weight_if_enumerable(const LinearCode& c) {
  if (!c.size().fits_u64()) return std::nullopt;
  const std::uint64_t n = c.size().value();
  if (n <= (std::uint64_t{1} << 22) || (c.length() <= 64 && n <= (std::uint64_t{1} << 30))) return min_weight(c);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cosets of ZRM(1, m)
// ---------------------------------------------------------------------------

/// Canonical representative of f + ZRM(1, m): value 0 at the origin and values in {0, 1} at the unit vectors.
inline Z4Word canonical_zrm1_rep(const Z4Word& f) {
  Z4Word g = f;
  const unsigned f0 = f[0];
  for (std::size_t x = 0; x < g.size(); ++x) g.set(x, g[x] + 4u - f0);
  for (int j = 0; j < f.m(); ++j) {
    const std::size_t ej = std::size_t{1} << j;
    if (g[ej] >= 2)
      for (std::size_t x = 0; x < g.size(); ++x)
        if (x & ej) g.set(x, g[x] + 2u);
  }
  return g;
}

inline bool in_zrm1(const Z4Word& f) {
  const auto g = canonical_zrm1_rep(f);
  for (std::size_t x = 0; x < g.size(); ++x)
    if (g[x] != 0) return false;
  return true;
}

/// min over z in ZRM(1, m) of wt_L(f + z), from the spectrum of f.
inline std::uint64_t coset_min_lee_weight(const Z4Word& f) {
  const Spectrum s = fourier(f);
  std::int64_t best = 0;
  for (const auto& z : s.values) best = std::max({best, z.re < 0 ? -z.re : z.re, z.im < 0 ? -z.im : z.im});
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(f.size()) - best);
}

/// Visits all 2^(m+2) words e + 2c.x of ZRM(1, m) added to f.
inline void for_each_in_coset(const Z4Word& f, const std::function<void(const Z4Word&)>& fn) {
  const std::size_t n = f.size();
  Z4Word w = f;
  for (std::uint32_t c = 0; c < n; ++c)
    for (unsigned e = 0; e < 4; ++e) {
      for (std::size_t x = 0; x < n; ++x) w.set(x, f[x] + e + 2u * static_cast<unsigned>(std::popcount(c & x) & 1));
      fn(w);
    }
}

// ---------------------------------------------------------------------------
// Z4-valued quadratic forms
// ---------------------------------------------------------------------------

struct QuadForm {
  SymMatrix matrix;

  int m() const { return matrix.dim(); }
  int rank() const { return matrix.rank(); }
};

/// Q(x) = sum_j b_jj x_j + 2 sum_{j<k} b_jk x_j x_k  (mod 4).
inline Z4Word quad_form_word(const SymMatrix& b) {
  const int m = b.dim();
  std::uint32_t diag = 0;
  for (int j = 0; j < m; ++j)
    if (b.at(j, j)) diag |= std::uint32_t{1} << j;
  Z4Word w(m);
  for (std::uint32_t x = 0; x < w.size(); ++x) {
    unsigned cross = 0;
    for (int j = 0; j < m; ++j)
      if ((x >> j) & 1u) {
        const std::uint32_t above = b.row(j) & x & ~((std::uint32_t{2} << j) - 1u);
        cross += static_cast<unsigned>(std::popcount(above));
      }
    w.set(x, static_cast<unsigned>(std::popcount(x & diag)) + 2u * cross);
  }
  return w;
}

inline Z4Word quad_form_word(const QuadForm& q) { return quad_form_word(q.matrix); }

struct CosetPaprBound {
  PaprValue papr;
  int rank{0};
  /// papr <= 2^(m - rank)
  bool bound_ok{false};
};

/// Exact PAPR of Q, shared by the whole coset Q + ZRM(1, m), against the rank bound.
inline CosetPaprBound coset_papr_bound_check(const QuadForm& q) {
  CosetPaprBound r;
  r.papr = papr(quad_form_word(q));
  r.rank = q.rank();
  const std::uint64_t bound_num = std::uint64_t{1} << (2 * q.m() - r.rank);
  r.bound_ok = r.papr.numerator <= bound_num;
  return r;
}

// ---------------------------------------------------------------------------
// Coset families and codebooks
// ---------------------------------------------------------------------------

class CosetFamily {
 public:
  using RepFn = std::function<Z4Word(std::uint64_t)>;

  /// Explicit representatives; rejects two representatives of the same coset.
  static CosetFamily from_words(std::vector<Z4Word> reps) {
    if (reps.empty()) throw std::invalid_argument("coset family: no representatives");
    const int m = reps.front().m();
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].m() != m) throw std::invalid_argument("coset family: representatives differ in length");
      auto [it, fresh] = seen.emplace(canonical_zrm1_rep(reps[i]).to_string(), i);
      if (!fresh)
        throw std::invalid_argument("coset family: representatives " + std::to_string(it->second) + " and " +
                                    std::to_string(i) + " lie in the same coset");
    }
    CosetFamily f;
    f.m_ = m;
    f.count_ = {reps.size(), 0};
    auto shared = std::make_shared<std::vector<Z4Word>>(std::move(reps));
    f.rep_ = [shared](std::uint64_t i) { return (*shared)[i]; };
    f.words_ = shared;
    return f;
  }

  /// Quadratic-form representatives. Distinct matrices give distinct cosets since Q_D lies in
  /// ZRM(1, m) only for D = 0. `group` marks a family closed under xor.
  static CosetFamily from_quad_forms(int m, std::vector<SymMatrix> matrices, bool group = false) {
    if (matrices.empty()) throw std::invalid_argument("coset family: no representatives");
    std::unordered_map<SymMatrix, std::size_t, SymMatrixHash> seen;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      if (matrices[i].dim() != m) throw std::invalid_argument("coset family: matrix dimension mismatch");
      auto [it, fresh] = seen.emplace(matrices[i], i);
      if (!fresh)
        throw std::invalid_argument("coset family: representatives " + std::to_string(it->second) + " and " +
                                    std::to_string(i) + " lie in the same coset");
    }
    CosetFamily f;
    f.m_ = m;
    f.count_ = {matrices.size(), 0};
    auto shared = std::make_shared<std::vector<SymMatrix>>(std::move(matrices));
    f.rep_ = [shared](std::uint64_t i) { return quad_form_word((*shared)[i]); };
    f.matrices_ = shared;
    f.group_ = group;
    f.container_ = zrm(2, m);
    return f;
  }

  /// Lazily generated representatives; the caller guarantees pairwise distinct cosets. `container`
  /// is a linear code known to hold every word of the union.
  static CosetFamily from_generator(int m, CodeSize count, RepFn fn, std::optional<LinearCode> container = {}) {
    CosetFamily f;
    f.m_ = m;
    f.count_ = count;
    f.rep_ = std::move(fn);
    f.container_ = std::move(container);
    return f;
  }

  int m() const { return m_; }
  CodeSize count() const { return count_; }
  bool enumerable() const { return count_.fits_u64(); }
  std::uint64_t rep_count() const { return count_.value(); }
  Z4Word rep(std::uint64_t i) const { return rep_(i); }
  const std::vector<SymMatrix>* matrices() const { return matrices_.get(); }
  bool is_group() const { return group_; }
  /// A linear code containing the union; differences of codewords are nonzero words of it, so its
  /// minimum weight bounds the distance of the union from below.
  const std::optional<LinearCode>& container() const { return container_; }
  /// Number of codewords in the union.
  CodeSize union_size() const { return count_.times_pow2(static_cast<unsigned>(m_) + 2); }

 private:
  int m_{0};
  CodeSize count_{};
  RepFn rep_;
  std::shared_ptr<std::vector<Z4Word>> words_;
  std::shared_ptr<std::vector<SymMatrix>> matrices_;
  bool group_{false};
  std::optional<LinearCode> container_;
};

/// A set of words of length 2^m over Z2 or Z4, stored explicitly, as a linear code, or as a
/// union of cosets of ZRM(1, m).
class CodeBook {
 public:
  struct Explicit {
    std::size_t n;
    std::vector<std::uint8_t> flat;
  };

  /// Distinct words; duplicates are dropped, order of first appearance kept.
  static CodeBook from_words(Alphabet a, int m, const std::vector<std::vector<std::uint8_t>>& words) {
    const std::size_t n = std::size_t{1} << m;
    Explicit e{n, {}};
    std::unordered_set<std::string> seen;
    const unsigned limit = 1u << alphabet_bits(a);
    for (const auto& w : words) {
      if (w.size() != n) throw std::invalid_argument("codebook: word of length " + std::to_string(w.size()) +
                                                     ", expected " + std::to_string(n));
      for (auto x : w)
        if (x >= limit) throw std::invalid_argument("codebook: symbol outside alphabet");
      if (seen.emplace(w.begin(), w.end()).second) e.flat.insert(e.flat.end(), w.begin(), w.end());
    }
    return CodeBook(a, m, std::move(e));
  }
  template <unsigned H>
  static CodeBook from_words(const std::vector<Word<H>>& words) {
    if (words.empty()) throw std::invalid_argument("codebook: no words");
    std::vector<std::vector<std::uint8_t>> raw;
    raw.reserve(words.size());
    for (const auto& w : words) raw.emplace_back(w.values().begin(), w.values().end());
    return from_words(H == 1 ? Alphabet::z2 : Alphabet::z4, words.front().m(), raw);
  }
  static CodeBook from_linear(LinearCode c) {
    const auto a = c.alphabet();
    const int m = c.m();
    return CodeBook(a, m, std::move(c));
  }
  static CodeBook from_cosets(CosetFamily f) {
    const int m = f.m();
    return CodeBook(Alphabet::z4, m, std::move(f));
  }

  Alphabet alphabet() const { return alphabet_; }
  int m() const { return m_; }
  std::size_t length() const { return std::size_t{1} << m_; }

  CodeSize size() const {
    if (auto* e = std::get_if<Explicit>(&store_)) return {e->flat.size() / e->n, 0};
    if (auto* l = std::get_if<LinearCode>(&store_)) return l->size();
    return std::get<CosetFamily>(store_).union_size();
  }

  /// Encodable bits per symbol as "floor(log2 |C|)/2^m".
  std::string rate_string() const { return std::to_string(size().floor_log2()) + "/" + std::to_string(length()); }

  const Explicit* explicit_words() const { return std::get_if<Explicit>(&store_); }
  const LinearCode* linear() const { return std::get_if<LinearCode>(&store_); }
  const CosetFamily* cosets() const { return std::get_if<CosetFamily>(&store_); }

  void for_each_word(const std::function<void(std::span<const std::uint8_t>)>& fn) const {
    if (auto* e = explicit_words()) {
      for (std::size_t off = 0; off < e->flat.size(); off += e->n)
        fn(std::span<const std::uint8_t>(e->flat.data() + off, e->n));
    } else if (auto* l = linear()) {
      l->for_each(fn);
    } else {
      const auto& f = *cosets();
      for (std::uint64_t i = 0; i < f.rep_count(); ++i)
        for_each_in_coset(f.rep(i), [&](const Z4Word& w) { fn(w.values()); });
    }
  }

  std::vector<std::vector<std::uint8_t>> materialize(std::uint64_t limit = std::uint64_t{1} << 24) const {
    const auto s = size();
    if (!s.fits_u64() || s.value() > limit)
      throw std::invalid_argument("codebook: " + std::to_string(s.floor_log2()) + "-bit code too large to materialize");
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(s.value());
    for_each_word([&](std::span<const std::uint8_t> w) { out.emplace_back(w.begin(), w.end()); });
    return out;
  }

 private:
  using Store = std::variant<Explicit, LinearCode, CosetFamily>;
  CodeBook(Alphabet a, int m, Store s) : alphabet_(a), m_(m), store_(std::move(s)) {}

  Alphabet alphabet_;
  int m_;
  Store store_;
};

inline CodeBook coset_union(std::vector<Z4Word> reps) { return CodeBook::from_cosets(CosetFamily::from_words(std::move(reps))); }

// ---------------------------------------------------------------------------
// Minimum distance
// ---------------------------------------------------------------------------

enum class DistanceMethod { pairwise, linear_enumeration, linear_support_search, coset_difference };

inline const char* method_name(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::pairwise: return "exact-pairwise";
    case DistanceMethod::linear_enumeration: return "exact-linear-enumeration";
    case DistanceMethod::linear_support_search: return "exact-linear-support-search";
    default: return "exact-coset-difference";
  }
}

struct MinDistance {
  std::uint64_t value{0};
  DistanceMethod method{DistanceMethod::pairwise};
};

/// Packs a word into bits: Z2 symbols directly, Z4 symbols through the Gray map, so that
/// Hamming distance of packed words equals the Lee (resp. Hamming) distance of the words.
inline std::vector<std::uint64_t> pack_bits(std::span<const std::uint8_t> w, Alphabet a) {
  std::vector<std::uint8_t> bits = a == Alphabet::z4 ? gray(w) : std::vector<std::uint8_t>(w.begin(), w.end());
  std::vector<std::uint64_t> out((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
  return out;
}

/// Exact minimum distance over all pairs of an explicit word list.
inline std::uint64_t min_distance_pairwise(const std::vector<std::vector<std::uint8_t>>& words, Alphabet a,
                                           std::uint64_t max_pairs = std::uint64_t{1} << 34) {
  if (words.size() < 2) throw std::invalid_argument("min distance: code has fewer than two words");
  const std::uint64_t pairs = static_cast<std::uint64_t>(words.size()) * (words.size() - 1) / 2;
  if (pairs > max_pairs) throw std::invalid_argument("min distance: too many pairs for exhaustive search");
  const std::size_t blocks = pack_bits(words.front(), a).size();
  std::vector<std::uint64_t> packed;
  packed.reserve(words.size() * blocks);
  for (const auto& w : words) {
    auto p = pack_bits(w, a);
    packed.insert(packed.end(), p.begin(), p.end());
  }
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::uint64_t* pi = packed.data() + i * blocks;
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const std::uint64_t* pj = packed.data() + j * blocks;
      std::uint64_t d = 0;
      for (std::size_t b = 0; b < blocks; ++b) d += static_cast<std::uint64_t>(std::popcount(pi[b] ^ pj[b]));
      best = std::min(best, d);
    }
  }
  return best;
}

namespace detail {

/// Memoised min coset weight of Q_D + ZRM(1, m) keyed by the upper-triangle key of D.
class QuadCosetWeights {
 public:
  explicit QuadCosetWeights(int m) : m_(m) {
    const int bits = SymMatrix::upper_size(m);
    if (bits <= 24) flat_.assign(std::size_t{1} << bits, -1);
  }
  std::int32_t operator()(std::uint64_t key) {
    if (!flat_.empty()) {
      auto& slot = flat_[key];
      if (slot < 0) slot = compute(key);
      return slot;
    }
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    return map_[key] = compute(key);
  }

 private:
  std::int32_t compute(std::uint64_t key) const {
    return static_cast<std::int32_t>(coset_min_lee_weight(quad_form_word(SymMatrix::from_upper_key(m_, key))));
  }
  int m_;
  std::vector<std::int32_t> flat_;
  std::unordered_map<std::uint64_t, std::int32_t> map_;
};

}  // namespace detail

/// Minimum nonzero Lee weight of ZRM(1, m). Words are e + 2a with a affine: odd e puts weight 1 on
/// every position, even e gives twice the weight of a nonzero affine Boolean function, so the
/// minimum is 2^m. Enumerated up to m = 12, where tests pin it to the closed form.
inline std::uint64_t zrm1_min_weight(int m) {
  if (m <= 12) return min_weight_enumerated(zrm(1, m));
  return std::uint64_t{1} << m;
}

/// Exact minimum Lee distance of a union of cosets of ZRM(1, m) via representative differences.
inline std::uint64_t coset_union_min_distance(const CosetFamily& f, std::uint64_t max_pairs = std::uint64_t{1} << 36) {
  if (!f.enumerable()) throw std::invalid_argument("min distance: coset family too large to enumerate");
  const std::uint64_t reps = f.rep_count();
  std::uint64_t best = zrm1_min_weight(f.m());
  if (reps < 2) return best;

  if (f.is_group()) {
    for (std::uint64_t i = 0; i < reps; ++i) {
      const Z4Word r = f.rep(i);
      if (in_zrm1(r)) continue;
      best = std::min(best, coset_min_lee_weight(r));
    }
    return best;
  }

  const std::uint64_t pairs = reps * (reps - 1) / 2;
  if (pairs > max_pairs)
    throw std::invalid_argument("min distance: " + std::to_string(pairs) + " coset pairs exceed the exhaustive limit");

  if (const auto* ms = f.matrices(); ms && f.m() <= 10) {
    detail::QuadCosetWeights weight(f.m());
    std::vector<std::uint64_t> keys;
    keys.reserve(ms->size());
    for (const auto& b : *ms) keys.push_back(b.upper_key());
    for (std::size_t i = 0; i < keys.size(); ++i)
      for (std::size_t j = i + 1; j < keys.size(); ++j)
        best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(weight(keys[i] ^ keys[j])));
    return best;
  }

  std::vector<Z4Word> r;
  r.reserve(reps);
  for (std::uint64_t i = 0; i < reps; ++i) r.push_back(f.rep(i));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) best = std::min(best, coset_min_lee_weight(r[i] - r[j]));
  return best;
}

/// Minimum Lee (Z4) or Hamming (Z2) distance, exact, with the method chosen by code structure.
inline MinDistance min_distance(const CodeBook& c) {
  if (const auto* e = c.explicit_words()) {
    std::vector<std::vector<std::uint8_t>> words;
    for (std::size_t off = 0; off < e->flat.size(); off += e->n)
      words.emplace_back(e->flat.begin() + static_cast<std::ptrdiff_t>(off),
                         e->flat.begin() + static_cast<std::ptrdiff_t>(off + e->n));
    return {min_distance_pairwise(words, c.alphabet()), DistanceMethod::pairwise};
  }
  if (const auto* l = c.linear()) {
    if (l->size().fits_u64() && l->size().value() <= (std::uint64_t{1} << 22))
      return {min_weight_enumerated(*l), DistanceMethod::linear_enumeration};
    return {min_weight_support_search(*l), DistanceMethod::linear_support_search};
  }
  return {coset_union_min_distance(*c.cosets()), DistanceMethod::coset_difference};
}

inline std::uint64_t min_lee_distance(const CodeBook& c) {
  if (c.alphabet() != Alphabet::z4) throw std::invalid_argument("min_lee_distance: code is binary");
  return min_distance(c).value;
}

inline std::uint64_t min_hamming_distance(const CodeBook& c) {
  if (c.alphabet() != Alphabet::z2) throw std::invalid_argument("min_hamming_distance: code is quaternary");
  return min_distance(c).value;
}

struct SampledDistance {
  std::uint64_t min_pair_weight{0};   // minimum over sampled distinct-coset pairs
  std::uint64_t within_coset{0};      // exact distance between words of one coset
  std::uint64_t pairs{0};
  std::uint64_t witness_i{0}, witness_j{0};

  std::uint64_t bound() const { return std::min(min_pair_weight, within_coset); }
};

/// Distance sampled over random pairs of distinct cosets, each pair evaluated exactly.
inline SampledDistance sampled_min_distance(const CosetFamily& f, std::uint64_t samples, std::uint64_t seed) {
  if (!f.enumerable() || f.rep_count() < 2) throw std::invalid_argument("sampled distance: need two or more cosets");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.rep_count() - 1);
  SampledDistance r;
  r.within_coset = zrm1_min_weight(f.m());
  r.min_pair_weight = std::numeric_limits<std::uint64_t>::max();
  const auto* ms = f.matrices();
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    const std::uint64_t w = ms ? coset_min_lee_weight(quad_form_word((*ms)[i] ^ (*ms)[j]))
                               : coset_min_lee_weight(f.rep(i) - f.rep(j));
    if (w < r.min_pair_weight) {
      r.min_pair_weight = w;
      r.witness_i = i;
      r.witness_j = j;
    }
  }
  r.pairs = samples;
  return r;
}

// ---------------------------------------------------------------------------
// PAPR of a codebook
// ---------------------------------------------------------------------------

struct CodePapr {
  PaprValue max;
  std::uint64_t certificate{0};  // index of a word (or coset representative) attaining the max
  bool per_coset{false};         // evaluated once per coset of ZRM(1, m)
};

/// Max PAPR over the code. Coset unions are evaluated on representatives, since all words of
/// a coset of ZRM(1, m) share one PAPR.
inline CodePapr max_papr(const CodeBook& c) {
  CodePapr r;
  r.max = {0, std::uint64_t{1} << c.m()};
  auto consider = [&](const PaprValue& p, std::uint64_t idx) {
    if (r.max < p) {
      r.max = p;
      r.certificate = idx;
    }
  };
  if (const auto* f = c.cosets()) {
    r.per_coset = true;
    for (std::uint64_t i = 0; i < f->rep_count(); ++i) consider(papr(f->rep(i)), i);
    return r;
  }
  std::uint64_t idx = 0;
  c.for_each_word([&](std::span<const std::uint8_t> w) {
    std::vector<std::uint8_t> v(w.begin(), w.end());
    consider(c.alphabet() == Alphabet::z4 ? papr(Z4Word(std::move(v))) : papr(BinWord(std::move(v))), idx++);
  });
  return r;
}

}  // namespace z4ca
