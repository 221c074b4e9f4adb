#pragma once

// Word files:
//   # m=<int> h=<int>
//   <2^m symbols from {0..2^h-1}, no separators>    (one word per line)
// Blank lines are ignored; further '#' lines are comments.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "z4ca/codes.hpp"
#include "z4ca/gbf.hpp"

namespace z4ca {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct WordFile {
  int m{0};
  unsigned h{2};
  std::vector<std::vector<std::uint8_t>> words;

  Alphabet alphabet() const { return h == 1 ? Alphabet::z2 : Alphabet::z4; }
};

inline WordFile read_words(std::istream& in) {
  WordFile f;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_header) continue;
      int m = -1;
      unsigned h = 0;
      if (std::sscanf(line.c_str(), "# m=%d h=%u", &m, &h) != 2)
        throw ParseError(lineno, "expected header '# m=<int> h=<int>'");
      if (m < 0 || m > kMaxVars) throw ParseError(lineno, "m out of range [0, 16]");
      if (h != 1 && h != 2) throw ParseError(lineno, "h must be 1 or 2");
      f.m = m;
      f.h = h;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "word before header");
    const std::size_t n = std::size_t{1} << f.m;
    if (line.size() != n)
      throw ParseError(lineno, "word has " + std::to_string(line.size()) + " symbols, expected " + std::to_string(n));
    std::vector<std::uint8_t> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int v = line[i] - '0';
      if (v < 0 || v >= (1 << f.h)) throw ParseError(lineno, std::string("invalid symbol '") + line[i] + "'");
      w[i] = static_cast<std::uint8_t>(v);
    }
    f.words.push_back(std::move(w));
  }
  if (!have_header) throw ParseError(lineno, "missing header '# m=<int> h=<int>'");
  return f;
}

inline WordFile read_words_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_words(in);
}

inline void write_header(std::ostream& out, int m, unsigned h) { out << "# m=" << m << " h=" << h << '\n'; }

inline void write_word(std::ostream& out, std::span<const std::uint8_t> w) {
  std::string s(w.size(), '0');
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = static_cast<char>('0' + w[i]);
  out << s << '\n';
}

inline void write_words(std::ostream& out, const WordFile& f) {
  write_header(out, f.m, f.h);
  for (const auto& w : f.words) write_word(out, w);
}

/// Streams every codeword of a codebook.
inline void write_codebook(std::ostream& out, const CodeBook& c) {
  write_header(out, c.m(), alphabet_bits(c.alphabet()));
  c.for_each_word([&](std::span<const std::uint8_t> w) { write_word(out, w); });
}

template <unsigned H>
WordFile to_word_file(const std::vector<Word<H>>& words) {
  if (words.empty()) throw std::invalid_argument("to_word_file: no words");
  WordFile f{words.front().m(), H, {}};
  for (const auto& w : words) f.words.emplace_back(w.values().begin(), w.values().end());
  return f;
}

inline CodeBook to_codebook(const WordFile& f) { return CodeBook::from_words(f.alphabet(), f.m, f.words); }

/// `k_mask:coeff` pairs for nonzero coefficients, ascending mask, space separated.
template <unsigned H>
std::string anf_to_string(const Gbf<H>& f) {
  std::ostringstream os;
  bool first = true;
  const auto c = f.coeffs();
  for (std::uint32_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    if (!first) os << ' ';
    os << k << ':' << static_cast<unsigned>(c[k]);
    first = false;
  }
  return os.str();
}

template <unsigned H>
Gbf<H> anf_from_string(int m, const std::string& s) {
  Gbf<H> f(m);
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("ANF term '" + tok + "' lacks ':'");
    const unsigned long k = std::stoul(tok.substr(0, colon));
    const unsigned long c = std::stoul(tok.substr(colon + 1));
    if (k >= (1ul << m) || c >= (1ul << H)) throw std::invalid_argument("ANF term '" + tok + "' out of range");
    f.set_coeff(static_cast<std::uint32_t>(k), static_cast<unsigned>(c));
  }
  return f;
}

inline constexpr int kMetadataSchemaVersion = 1;

}  // namespace z4ca
