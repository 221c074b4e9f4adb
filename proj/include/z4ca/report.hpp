#pragma once

// Code analysis reports, codebook metadata JSON, and the parameter table of the
// constant-amplitude constructions for m in {4, 5, 6}.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "z4ca/codes.hpp"
#include "z4ca/constructions.hpp"
#include "z4ca/graymap.hpp"
#include "z4ca/io.hpp"
#include "z4ca/kerdock_dg.hpp"
#include "z4ca/spectral.hpp"

namespace z4ca {

enum class DistanceMode { automatic, pairwise, sampled, skip };

struct AnalyzeOptions {
  DistanceMode distance{DistanceMode::automatic};
  std::uint64_t samples{10'000};
  std::uint64_t seed{1};
  bool papr{true};
};

struct CodeReport {
  Alphabet alphabet{Alphabet::z4};
  int m{0};
  CodeSize size;
  std::optional<std::uint64_t> coset_count;
  std::optional<std::uint64_t> distance;
  /// Set when `distance` is the minimum over sampled pairs, which bounds the true distance from above.
  bool distance_is_upper_bound{false};
  /// A proven lower bound reported alongside an upper bound.
  std::optional<std::uint64_t> distance_lower_bound;
  std::string distance_method;
  std::optional<PaprValue> papr;
  std::uint64_t papr_certificate{0};
  bool papr_per_coset{false};

  const char* distance_relation() const { return distance_is_upper_bound ? "<=" : "="; }
  std::string rate() const { return std::to_string(size.floor_log2()) + "/" + std::to_string(std::size_t{1} << m); }
  /// log2|C| / 2^m, exact; written as a fraction when |C| is a power of two.
  std::string exact_rate() const {
    const std::string n = std::to_string(std::size_t{1} << m);
    if (size.is_power_of_two()) return rate();
    return "log2(" + size.big().str() + ")/" + n;
  }
};

inline CodeReport analyze(const CodeBook& c, const AnalyzeOptions& opt = {}) {
  CodeReport r;
  r.alphabet = c.alphabet();
  r.m = c.m();
  r.size = c.size();
  if (const auto* f = c.cosets(); f && f->enumerable()) r.coset_count = f->rep_count();

  switch (opt.distance) {
    case DistanceMode::skip:
      break;
    case DistanceMode::pairwise: {
      r.distance = min_distance_pairwise(c.materialize(), c.alphabet());
      r.distance_method = method_name(DistanceMethod::pairwise);
      break;
    }
    case DistanceMode::sampled: {
      if (!c.cosets()) throw std::invalid_argument("analyze: sampled distance needs a coset union");
      const auto s = sampled_min_distance(*c.cosets(), opt.samples, opt.seed);
      r.distance = s.bound();
      r.distance_is_upper_bound = true;
      r.distance_method = "sampled-coset-pairs(" + std::to_string(s.pairs) + ",seed=" + std::to_string(opt.seed) + ")";
      const auto& box = c.cosets()->container();
      if (const auto lower = box ? min_weight_if_enumerable(*box) : std::nullopt) {
        r.distance_method += std::string("+container-") + family_name(box->family()) + "(" + std::to_string(box->r()) +
                             "," + std::to_string(box->m()) + ")";
        if (*lower == *r.distance) r.distance_is_upper_bound = false;
        else r.distance_lower_bound = *lower;
      }
      break;
    }
    case DistanceMode::automatic: {
      const auto d = min_distance(c);
      r.distance = d.value;
      r.distance_method = method_name(d.method);
      break;
    }
  }
  if (opt.papr) {
    const auto p = max_papr(c);
    r.papr = p.max.reduced();
    r.papr_certificate = p.certificate;
    r.papr_per_coset = p.per_coset;
  }
  return r;
}

/// Metadata sidecar for a written codebook (schema version kMetadataSchemaVersion).
inline nlohmann::ordered_json metadata_json(const std::string& name, const CodeReport& r, std::optional<int> t = {}) {
  nlohmann::ordered_json j;
  j["schema_version"] = kMetadataSchemaVersion;
  j["name"] = name;
  j["m"] = r.m;
  if (t) j["t"] = *t;
  j["alphabet"] = alphabet_name(r.alphabet);
  j["length"] = std::size_t{1} << r.m;
  j["size"] = r.size.big().str();
  j["rate"] = r.rate();
  j["rate_exact"] = r.exact_rate();
  if (r.coset_count) j["coset_count"] = *r.coset_count;
  const char* dkey = r.alphabet == Alphabet::z4 ? "d_L" : "d_H";
  if (r.distance) {
    j[dkey] = *r.distance;
    j["distance_relation"] = r.distance_relation();
    if (r.distance_lower_bound) j[std::string(dkey) + "_lower_bound"] = *r.distance_lower_bound;
    j["distance_method"] = r.distance_method;
  } else {
    j[dkey] = nullptr;
  }
  if (r.papr) {
    j["papr"] = r.papr->to_string();
    j["papr_certificate"] = r.papr_certificate;
    j["papr_certificate_kind"] = r.papr_per_coset ? "coset" : "word";
  }
  return j;
}

// ---------------------------------------------------------------------------
// Parameter table
// ---------------------------------------------------------------------------

struct TableRow {
  int m{0};
  std::string construction;
  unsigned expected_rate_bits{0};
  std::uint64_t expected_distance{0};
  bool in_scope{true};

  std::string status{"PENDING"};  // PASS | FAIL | SKIPPED(out-of-scope)
  std::optional<CodeReport> report;
  std::string note;
  double seconds{0.0};

  std::string expected_rate() const {
    return std::to_string(expected_rate_bits) + "/" + std::to_string(std::size_t{1} << m);
  }
};

struct TableOptions {
  std::uint64_t samples{10'000};
  std::uint64_t seed{1};
};

namespace detail {

struct RowSpec {
  std::string label;
  unsigned rate_bits;
  std::uint64_t distance;
  std::function<CodeBook()> build;  // empty for rows that rely on external binary codes
};

inline std::vector<RowSpec> table_rows(int m) {
  switch (m) {
    case 4:
      return {{"Construction 2: single coset of ZRM(1,4)", 6, 16, [] { return construction2(4); }},
              {"Construction 4: subcode of K(4)", 9, 12, [] { return construction4(4); }},
              {"Construction 3: subcode of ZRM(2,4)", 14, 8, [] { return construction3(4); }},
              {"external binary code + even lifting", 18, 4, {}}};
    case 5:
      return {{"Construction 2: single coset of ZRM(1,5)", 7, 32, [] { return construction2(5); }},
              {"Construction 4: subcode of K(5)", 11, 28, [] { return construction4(5); }},
              {"Construction 5: subcode of DG(1,5)", 15, 24, [] { return construction5(5, 1); }},
              {"Construction 3: subcode of ZRM(2,5)", 20, 16, [] { return construction3(5); }},
              {"external binary code + Gray preimage lifting", 23, 8, {}}};
    case 6:
      return {{"Construction 2: single coset of ZRM(1,6)", 8, 64, [] { return construction2(6); }},
              {"Construction 4: subcode of K(6)", 13, 56, [] { return construction4(6); }},
              {"Construction 5: subcode of DG(1,6)", 18, 48, [] { return construction5(6, 1); }},
              {"Construction 3: subcode of ZRM(2,6)", 27, 32, [] { return construction3(6); }},
              {"external binary code + even lifting", 30, 24, {}},
              {"external binary code + even lifting", 40, 16, {}},
              {"external binary code + even lifting", 46, 8, {}}};
    default:
      throw std::invalid_argument("table1: m must be 4, 5 or 6, got " + std::to_string(m));
  }
}

}  // namespace detail

/// Distance protocol per m: exhaustive pairs at m = 4, coset differences at m = 5, 6, and sampled
/// coset pairs for the 2^19-coset row at m = 6.
inline AnalyzeOptions table_distance_options(int m, std::uint64_t coset_count, const TableOptions& opt) {
  AnalyzeOptions a;
  a.samples = opt.samples;
  a.seed = opt.seed;
  if (m == 4) a.distance = DistanceMode::pairwise;
  else if (coset_count * (coset_count - 1) / 2 > (std::uint64_t{1} << 36)) a.distance = DistanceMode::sampled;
  else a.distance = DistanceMode::automatic;
  return a;
}

inline std::vector<TableRow> parameter_table(int m, const TableOptions& opt = {}) {
  std::vector<TableRow> rows;
  for (auto& spec : detail::table_rows(m)) {
    TableRow row;
    row.m = m;
    row.construction = spec.label;
    row.expected_rate_bits = spec.rate_bits;
    row.expected_distance = spec.distance;
    if (!spec.build) {
      row.in_scope = false;
      row.status = "SKIPPED(out-of-scope)";
      rows.push_back(std::move(row));
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const CodeBook code = spec.build();
    const auto a = table_distance_options(m, code.cosets() ? code.cosets()->rep_count() : 0, opt);
    CodeReport rep = analyze(code, a);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const bool rate_ok = rep.size.floor_log2() == spec.rate_bits;
    const bool papr_ok = rep.papr && rep.papr->is_one();
    bool dist_ok = false;
    if (rep.distance) {
      dist_ok = rep.distance_is_upper_bound
                    ? *rep.distance >= spec.distance && rep.distance_lower_bound.value_or(0) <= spec.distance
                    : *rep.distance == spec.distance;
    }
    if (!rate_ok) row.note += "rate mismatch; ";
    if (!dist_ok) row.note += "distance mismatch; ";
    if (!papr_ok) row.note += "not constant-amplitude; ";
    row.status = rate_ok && dist_ok && papr_ok ? "PASS" : "FAIL";
    row.report = std::move(rep);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Lifting relations for user-supplied binary constant-amplitude codes
// ---------------------------------------------------------------------------

enum class LiftRule { odd_offset, even, gray_preimage };

inline const char* lift_rule_name(LiftRule r) {
  switch (r) {
    case LiftRule::odd_offset: return "odd-offset";
    case LiftRule::even: return "even";
    default: return "gray-preimage";
  }
}

inline std::vector<BinWord> to_bin_words(const WordFile& f) {
  if (f.h != 1) throw std::invalid_argument("expected a binary word file (h=1)");
  std::vector<BinWord> out;
  out.reserve(f.words.size());
  for (const auto& w : f.words) out.emplace_back(w);
  return out;
}

inline std::vector<Z4Word> lift_words(LiftRule rule, const std::vector<BinWord>& a, const std::vector<BinWord>& b) {
  switch (rule) {
    case LiftRule::odd_offset: return lift_code_odd_offset(a, b);
    case LiftRule::even: return lift_code_even(a, b);
    default: return lift_code_gray_preimage(a);
  }
}

struct LiftCheck {
  LiftRule rule{LiftRule::even};
  std::uint64_t binary_size{0};
  std::uint64_t binary_distance{0};
  bool binary_constant_amplitude{false};
  std::uint64_t quaternary_size{0};
  std::uint64_t quaternary_distance{0};
  bool quaternary_constant_amplitude{false};
  bool size_law{false};      // |Q| = 2|B|^2, |B|^2 or |B| according to the rule
  bool distance_law{false};  // d_L(Q) = 2 d_H(B) for odd-offset, d_H(B) otherwise

  bool ok() const {
    return binary_constant_amplitude && quaternary_constant_amplitude && size_law && distance_law;
  }
};

/// Lifts a binary constant-amplitude code of length 2^mb to a quaternary code of length 2^m
/// (rule picked from mb - m) and checks the size and distance laws exhaustively.
inline LiftCheck check_lifting(int m, const WordFile& binary) {
  LiftCheck r;
  if (binary.m == m) r.rule = LiftRule::even;
  else if (binary.m == m + 1) r.rule = LiftRule::gray_preimage;
  else if (binary.m == m - 1) r.rule = LiftRule::odd_offset;
  else throw std::invalid_argument("binary code length 2^" + std::to_string(binary.m) + " does not lift to length 2^" +
                                   std::to_string(m));
  const CodeBook b = to_codebook(binary);
  const auto bw = to_bin_words(binary);
  r.binary_size = b.size().value();
  r.binary_distance = min_distance(b).value;
  r.binary_constant_amplitude = max_papr(b).max.is_one();
  const CodeBook q = CodeBook::from_words(lift_words(r.rule, bw, bw));
  r.quaternary_size = q.size().value();
  r.quaternary_distance = min_distance(q).value;
  r.quaternary_constant_amplitude = max_papr(q).max.is_one();
  switch (r.rule) {
    case LiftRule::odd_offset:
      r.size_law = r.quaternary_size == 2 * r.binary_size * r.binary_size;
      r.distance_law = r.quaternary_distance == 2 * r.binary_distance;
      break;
    case LiftRule::even:
      r.size_law = r.quaternary_size == r.binary_size * r.binary_size;
      r.distance_law = r.quaternary_distance == r.binary_distance;
      break;
    case LiftRule::gray_preimage:
      r.size_law = r.quaternary_size == r.binary_size;
      r.distance_law = r.quaternary_distance == r.binary_distance;
      break;
  }
  return r;
}

}  // namespace z4ca
