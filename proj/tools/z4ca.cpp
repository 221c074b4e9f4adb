// z4ca: build, verify and lift quaternary constant-amplitude codes.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or parse error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "z4ca/codes.hpp"
#include "z4ca/constructions.hpp"
#include "z4ca/graymap.hpp"
#include "z4ca/io.hpp"
#include "z4ca/kerdock_dg.hpp"
#include "z4ca/report.hpp"
#include "z4ca/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace z4ca;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed{1};
  bool json{false};
  std::string command_line;
};

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Input {
  std::string path;
  std::uint64_t digest{0};
  WordFile file;
};

Input load(const std::string& path) {
  const std::string bytes = slurp(path);
  std::istringstream is(bytes);
  return {path, fnv1a64(bytes), read_words(is)};
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

/// RunReport envelope: command echo, input digests, results, wall time in milliseconds.
json run_report(const Globals& g, const std::vector<const Input*>& inputs, json results,
                std::chrono::steady_clock::time_point t0) {
  json r;
  r["command"] = g.command_line;
  json in = json::array();
  for (const auto* i : inputs) in.push_back({{"path", i->path}, {"fnv1a64", hex64(i->digest)}});
  r["inputs"] = std::move(in);
  r["results"] = std::move(results);
  r["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  return file;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string name;
  int m{0};
  std::optional<int> t;
  std::string out;
  bool meta_only{false};
  std::uint64_t max_words{std::uint64_t{1} << 22};
  std::uint64_t samples{10'000};
};

CodeBook build_named(const std::string& name, int m, std::optional<int> t) {
  if (name == "mf") return construction1(m, MfVariant::rm4);
  if (name == "mf-zrm") return construction1(m, MfVariant::zrm);
  if (name == "coset") return construction2(m);
  if (name == "zrm2") return construction3(m);
  if (name == "kerdock") return construction4(m);
  if (name == "dg") return construction5(m, t.value_or(1));
  if (name == "kerdock-code") return kerdock(m);
  if (name == "dg-code") return dg(t.value_or(1), m);
  throw UsageError("unknown construction '" + name + "'");
}

int cmd_construct(const Globals& g, const ConstructArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const CodeBook code = build_named(a.name, a.m, a.t);
  AnalyzeOptions opt;
  opt.seed = g.seed;
  opt.samples = a.samples;
  const auto* fam = code.cosets();
  if (fam && !fam->enumerable()) {
    opt.distance = DistanceMode::skip;
    opt.papr = false;
  } else if (fam && fam->rep_count() > 1 && !fam->is_group() &&
             fam->rep_count() * (fam->rep_count() - 1) / 2 > (std::uint64_t{1} << 36)) {
    opt.distance = DistanceMode::sampled;
  }
  const CodeReport rep = analyze(code, opt);
  const bool uses_t = a.name == "dg" || a.name == "dg-code";
  json meta = metadata_json(a.name, rep, uses_t ? std::optional<int>(a.t.value_or(1)) : std::nullopt);

  if (!a.meta_only) {
    if (a.out.empty()) throw UsageError("construct: --out is required unless --meta-only is given");
    if (!rep.size.fits_u64() || rep.size.value() > a.max_words)
      throw UsageError("construct: code has " + rep.size.big().str() + " words, above --max-words " +
                       std::to_string(a.max_words) + "; use --meta-only");
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.out);
    write_codebook(f, code);
    std::ofstream mf(a.out + ".json", std::ios::binary);
    if (!mf) throw UsageError("cannot write " + a.out + ".json");
    mf << meta.dump(2) << '\n';
  }
  if (g.json) {
    std::cout << run_report(g, {}, meta, t0).dump(2) << '\n';
  } else {
    std::cout << a.name << " m=" << a.m << " size=" << rep.size.big().str() << " rate=" << rep.rate();
    if (rep.distance)
      std::cout << (rep.alphabet == Alphabet::z4 ? " d_L" : " d_H") << rep.distance_relation() << *rep.distance;
    if (rep.distance_lower_bound) std::cout << " (>=" << *rep.distance_lower_bound << ")";
    if (rep.papr) std::cout << " papr=" << rep.papr->to_string();
    std::cout << '\n';
  }
  if (rep.papr && !rep.papr->is_one()) return kExitCheckFailed;
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string in;
  std::vector<std::string> checks{"papr", "bent", "spectrum-form", "degree-bound"};
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : a.checks)
    if (c != "papr" && c != "bent" && c != "spectrum-form" && c != "degree-bound")
      throw UsageError("verify: unknown check '" + c + "'");
  auto selected = [&](const char* c) { return std::find(a.checks.begin(), a.checks.end(), c) != a.checks.end(); };
  const Input in = load(a.in);
  const bool z4 = in.file.h == 2;

  std::optional<std::uint64_t> first_fail;
  std::string first_reason;
  std::uint64_t failed = 0;
  PaprValue worst{0, 1};
  std::uint64_t worst_index = 0;
  auto fail = [&](std::uint64_t i, const std::string& why) {
    if (!first_fail) {
      first_fail = i;
      first_reason = why;
    }
  };

  for (std::uint64_t i = 0; i < in.file.words.size(); ++i) {
    const auto& v = in.file.words[i];
    const PaprValue p = z4 ? papr(Z4Word(v)) : papr(BinWord(v));
    const bool bent = p.is_one();
    if (i == 0 || worst < p) {
      worst = p;
      worst_index = i;
    }
    bool ok = true;
    std::ostringstream line;
    line << i;
    if (selected("papr")) {
      line << " papr=" << p.numerator << '/' << p.denominator;
      if (!p.is_one()) {
        ok = false;
        fail(i, "papr " + p.reduced().to_string() + " != 1");
      }
    }
    if (selected("bent")) {
      line << " bent=" << (bent ? 1 : 0);
      if (!bent) {
        ok = false;
        fail(i, "not bent");
      }
    }
    if (selected("spectrum-form")) {
      if (!z4) {
        line << " spectrum-form=n/a";
      } else if (!bent) {
        line << " spectrum-form=0";
        ok = false;
        fail(i, "spectrum form requires a bent word");
      } else {
        const bool sf = spectrum_form_check(Z4Word(v));
        line << " spectrum-form=" << (sf ? 1 : 0);
        if (!sf) {
          ok = false;
          fail(i, "spectrum form violated");
        }
      }
    }
    if (selected("degree-bound")) {
      if (!z4 || in.file.m <= 2) {
        line << " degree-bound=n/a";
      } else if (!bent) {
        line << " degree-bound=0";
        ok = false;
        fail(i, "degree bound requires a bent word");
      } else {
        const auto d = degree_bound_check(Z4Word(v));
        line << " degree-bound=" << (d.ok ? 1 : 0) << " deg_a=" << d.degree_a << " deg_b=" << d.degree_b;
        if (!d.ok) {
          ok = false;
          fail(i, "deg a = " + std::to_string(d.degree_a) + ", deg b = " + std::to_string(d.degree_b) +
                      " exceed " + std::to_string(d.bound));
        }
      }
    }
    failed += ok ? 0 : 1;
    if (!g.json) std::cout << line.str() << '\n';
  }

  json results;
  results["m"] = in.file.m;
  results["h"] = in.file.h;
  results["words"] = in.file.words.size();
  results["checks"] = a.checks;
  results["failed_words"] = failed;
  if (!in.file.words.empty()) {
    results["max_papr"] = {{"numerator", worst.numerator}, {"denominator", worst.denominator}};
    results["max_papr_certificate"] = worst_index;
  }
  results["pass"] = !first_fail.has_value();
  if (first_fail) results["first_failure"] = {{"word", *first_fail}, {"reason", first_reason}};

  if (g.json) std::cout << run_report(g, {&in}, results, t0).dump(2) << '\n';
  else if (first_fail)
    std::cout << "FAIL word " << *first_fail << ": " << first_reason << " (" << failed << " of "
              << in.file.words.size() << " words failed)\n";
  else
    std::cout << "PASS " << in.file.words.size() << " words\n";
  return first_fail ? kExitCheckFailed : kExitPass;
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

struct TableArgs {
  int m{0};
  std::uint64_t samples{10'000};
  std::string binary_ca;
};

json report_json(const CodeReport& r) {
  json j;
  j["size"] = r.size.big().str();
  j["rate"] = r.rate();
  j["rate_exact"] = r.exact_rate();
  if (r.distance) {
    j["d_L"] = *r.distance;
    j["d_L_relation"] = r.distance_relation();
    if (r.distance_lower_bound) j["d_L_lower_bound"] = *r.distance_lower_bound;
    j["d_L_method"] = r.distance_method;
  }
  if (r.papr) {
    j["max_papr"] = {{"numerator", r.papr->numerator}, {"denominator", r.papr->denominator}};
    j["papr_certificate"] = r.papr_certificate;
  }
  return j;
}

int cmd_table1(const Globals& g, const TableArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.m < 4 || a.m > 6) throw UsageError("table1: m must be 4, 5 or 6, got " + std::to_string(a.m));
  std::optional<Input> binary;
  if (!a.binary_ca.empty()) binary = load(a.binary_ca);

  TableOptions opt;
  opt.samples = a.samples;
  opt.seed = g.seed;
  const auto rows = parameter_table(a.m, opt);
  bool all_ok = true;
  json jrows = json::array();
  for (const auto& r : rows) {
    all_ok = all_ok && r.status != "FAIL";
    json jr;
    jr["construction"] = r.construction;
    jr["expected"] = {{"rate", r.expected_rate()}, {"d_L", r.expected_distance}};
    jr["status"] = r.status;
    if (r.report) jr["computed"] = report_json(*r.report);
    if (!r.note.empty()) jr["note"] = r.note;
    jrows.push_back(std::move(jr));
    if (!g.json) {
      std::cout << "m=" << a.m << "  " << r.expected_rate() << ":" << r.expected_distance << "  " << r.status << "  "
                << r.construction;
      if (r.report && r.report->distance)
        std::cout << "  [computed " << r.report->rate() << ":"
                  << (r.report->distance_is_upper_bound ? "<=" : "") << *r.report->distance << " via "
                  << r.report->distance_method << ", papr " << r.report->papr->to_string() << "]";
      if (!r.note.empty()) std::cout << "  " << r.note;
      std::cout << '\n';
    }
  }
  json results;
  results["m"] = a.m;
  results["rows"] = std::move(jrows);

  if (binary) {
    const LiftCheck lc = check_lifting(a.m, binary->file);
    all_ok = all_ok && lc.ok();
    results["lifting"] = {{"rule", lift_rule_name(lc.rule)},
                          {"binary_size", lc.binary_size},
                          {"binary_d_H", lc.binary_distance},
                          {"binary_constant_amplitude", lc.binary_constant_amplitude},
                          {"quaternary_size", lc.quaternary_size},
                          {"quaternary_d_L", lc.quaternary_distance},
                          {"quaternary_constant_amplitude", lc.quaternary_constant_amplitude},
                          {"size_law", lc.size_law},
                          {"distance_law", lc.distance_law},
                          {"status", lc.ok() ? "PASS" : "FAIL"}};
    if (!g.json)
      std::cout << "lifting " << lift_rule_name(lc.rule) << ": |B|=" << lc.binary_size << " d_H=" << lc.binary_distance
                << " -> |Q|=" << lc.quaternary_size << " d_L=" << lc.quaternary_distance
                << " size-law=" << (lc.size_law ? "ok" : "violated")
                << " distance-law=" << (lc.distance_law ? "ok" : "violated")
                << " constant-amplitude=" << (lc.binary_constant_amplitude && lc.quaternary_constant_amplitude ? "yes" : "no")
                << "  " << (lc.ok() ? "PASS" : "FAIL") << '\n';
  }
  std::vector<const Input*> inputs;
  if (binary) inputs.push_back(&*binary);
  if (g.json) std::cout << run_report(g, inputs, results, t0).dump(2) << '\n';
  return all_ok ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// lift / gray / dist / codes
// ---------------------------------------------------------------------------

struct LiftArgs {
  std::string rule;
  std::string in, in2, out;
  bool verify{false};
};

int cmd_lift(const Globals& g, const LiftArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  LiftRule rule;
  if (a.rule == "odd-offset") rule = LiftRule::odd_offset;
  else if (a.rule == "even") rule = LiftRule::even;
  else if (a.rule == "gray-preimage") rule = LiftRule::gray_preimage;
  else throw UsageError("lift: unknown rule '" + a.rule + "'");

  const Input in = load(a.in);
  std::optional<Input> in2;
  if (!a.in2.empty()) in2 = load(a.in2);
  if (rule == LiftRule::gray_preimage && in2) throw UsageError("lift: gray-preimage takes a single input");
  const auto first = to_bin_words(in.file);
  const auto second = in2 ? to_bin_words(in2->file) : first;
  if (in2 && in2->file.m != in.file.m) throw UsageError("lift: --in and --in2 have different lengths");
  if (first.empty()) throw UsageError("lift: " + a.in + " contains no words");
  if (rule == LiftRule::gray_preimage && in.file.m == 0) throw UsageError("lift: gray-preimage needs m >= 1");

  const auto lifted = lift_words(rule, first, second);
  std::ofstream file;
  write_words(open_out(a.out, file), to_word_file(lifted));

  std::uint64_t bent = 0;
  if (a.verify)
    for (const auto& w : lifted) bent += is_bent(w) ? 1 : 0;
  if (g.json) {
    json results{{"rule", a.rule}, {"words", lifted.size()}, {"m", lifted.front().m()}};
    if (a.verify) results["bent"] = bent;
    std::vector<const Input*> inputs{&in};
    if (in2) inputs.push_back(&*in2);
    std::cerr << run_report(g, inputs, results, t0).dump(2) << '\n';
  } else if (a.verify) {
    std::cerr << "lifted " << lifted.size() << " words, " << bent << " bent\n";
  }
  return a.verify && bent != lifted.size() ? kExitCheckFailed : kExitPass;
}

struct GrayArgs {
  std::string in, out;
  bool inverse{false};
};

int cmd_gray(const Globals&, const GrayArgs& a) {
  const Input in = load(a.in);
  WordFile out;
  if (!a.inverse) {
    if (in.file.h != 2) throw UsageError("gray: input must be quaternary (h=2); use --inverse for binary input");
    out = {in.file.m + 1, 1, {}};
    for (const auto& w : in.file.words) out.words.push_back(gray(std::span<const std::uint8_t>(w)));
  } else {
    if (in.file.h != 1) throw UsageError("gray --inverse: input must be binary (h=1)");
    if (in.file.m == 0) throw UsageError("gray --inverse: binary words of length 1 have no preimage");
    out = {in.file.m - 1, 2, {}};
    for (const auto& w : in.file.words) out.words.push_back(gray_inverse(std::span<const std::uint8_t>(w)));
  }
  std::ofstream file;
  write_words(open_out(a.out, file), out);
  return kExitPass;
}

void print_distance(const Globals& g, const CodeBook& code, const std::vector<const Input*>& inputs,
                    std::chrono::steady_clock::time_point t0) {
  const auto d = min_distance(code);
  const char* key = code.alphabet() == Alphabet::z4 ? "d_L" : "d_H";
  if (g.json) {
    json results{{"m", code.m()}, {"alphabet", alphabet_name(code.alphabet())}, {"size", code.size().big().str()},
                 {key, d.value}, {"method", method_name(d.method)}};
    std::cout << run_report(g, inputs, results, t0).dump(2) << '\n';
  } else {
    std::cout << d.value << '\n';
  }
}

int cmd_dist(const Globals& g, const std::string& path) {
  const auto t0 = std::chrono::steady_clock::now();
  const Input in = load(path);
  if (in.file.words.size() < 2) throw UsageError("dist: need at least two distinct words");
  const CodeBook code = to_codebook(in.file);
  if (code.size().value() < 2) throw UsageError("dist: need at least two distinct words");
  print_distance(g, code, {&in}, t0);
  return kExitPass;
}

struct CodesArgs {
  std::string family{"rm4"};
  int r{1};
  int m{3};
  std::string out;
};

LinearCode named_family(const CodesArgs& a) {
  if (a.family == "rm") return rm(a.r, a.m);
  if (a.family == "rm4") return rm4(a.r, a.m);
  if (a.family == "zrm") return zrm(a.r, a.m);
  throw UsageError("codes: unknown family '" + a.family + "'");
}

int cmd_codes_gen(const Globals&, const CodesArgs& a) {
  const CodeBook code = CodeBook::from_linear(named_family(a));
  if (!code.size().fits_u64() || code.size().value() > (std::uint64_t{1} << 22))
    throw UsageError("codes gen: " + code.size().big().str() + " words is too many to write");
  std::ofstream file;
  write_codebook(open_out(a.out, file), code);
  return kExitPass;
}

int cmd_codes_dist(const Globals& g, const CodesArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  print_distance(g, CodeBook::from_linear(named_family(a)), {}, t0);
  return kExitPass;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternary constant-amplitude codes: construction, verification, lifting"};
  app.require_subcommand(1);
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(i ? argv[i] : "z4ca");
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
  app.add_flag("--json", g.json, "Emit a JSON report");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a construction and write its words and metadata");
  construct->add_option("--name", ca.name, "mf | mf-zrm | coset | zrm2 | kerdock | dg | kerdock-code | dg-code")
      ->required();
  construct->add_option("--m", ca.m, "Number of variables")->required();
  construct->add_option("--t", ca.t, "DG parameter t (dg, dg-code; default 1)");
  construct->add_option("--out", ca.out, "Word file; metadata goes to <out>.json");
  construct->add_flag("--meta-only", ca.meta_only, "Compute metadata without writing words");
  construct->add_option("--max-words", ca.max_words, "Refuse to write more words than this")->capture_default_str();
  construct->add_option("--samples", ca.samples, "Coset pairs for sampled distances")->capture_default_str();

  VerifyArgs va;
  std::string checks = "papr,bent,spectrum-form,degree-bound";
  auto* verify = app.add_subcommand("verify", "Run exact per-word checks on a word file");
  verify->add_option("--in", va.in, "Word file")->required();
  verify->add_option("--checks", checks, "Comma list of papr, bent, spectrum-form, degree-bound")
      ->capture_default_str();

  TableArgs ta;
  auto* table = app.add_subcommand("table1", "Recompute the parameter table for m in {4, 5, 6}");
  table->add_option("--m", ta.m, "4, 5 or 6")->required();
  table->add_option("--samples", ta.samples, "Coset pairs for sampled distances")->capture_default_str();
  table->add_option("--binary-ca", ta.binary_ca, "Binary constant-amplitude word file to lift and check");

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "Lift binary words to quaternary words");
  lift->add_option("--rule", la.rule, "odd-offset | even | gray-preimage")->required();
  lift->add_option("--in", la.in, "Binary word file")->required();
  lift->add_option("--in2", la.in2, "Second binary word file (odd-offset, even); defaults to --in");
  lift->add_option("--out", la.out, "Output file (default stdout)");
  lift->add_flag("--verify", la.verify, "Check that every lifted word is bent");

  GrayArgs ga;
  auto* grayc = app.add_subcommand("gray", "Apply the Gray map to a word file");
  grayc->add_option("--in", ga.in, "Word file")->required();
  grayc->add_option("--out", ga.out, "Output file (default stdout)");
  grayc->add_flag("--inverse", ga.inverse, "Map binary words back to Z4");

  std::string dist_in;
  auto* dist = app.add_subcommand("dist", "Minimum Lee (Z4) or Hamming (binary) distance of a word file");
  dist->add_option("--in", dist_in, "Word file")->required();

  CodesArgs cg;
  auto* codes = app.add_subcommand("codes", "Reed-Muller type codes");
  codes->require_subcommand(1);
  auto* codes_gen = codes->add_subcommand("gen", "Write all codewords");
  auto* codes_dist = codes->add_subcommand("dist", "Minimum distance");
  for (auto* sc : {codes_gen, codes_dist}) {
    sc->add_option("--family", cg.family, "rm | rm4 | zrm")->capture_default_str();
    sc->add_option("--r", cg.r, "Order")->capture_default_str();
    sc->add_option("--m", cg.m, "Number of variables")->capture_default_str();
  }
  codes_gen->add_option("--out", cg.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(g, ca);
    if (*verify) {
      va.checks = split_commas(checks);
      return cmd_verify(g, va);
    }
    if (*table) return cmd_table1(g, ta);
    if (*lift) return cmd_lift(g, la);
    if (*grayc) return cmd_gray(g, ga);
    if (*dist) return cmd_dist(g, dist_in);
    if (*codes_gen) return cmd_codes_gen(g, cg);
    if (*codes_dist) return cmd_codes_dist(g, cg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
