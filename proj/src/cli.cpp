#include "quadcomp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadcomp/automaton.hpp"
#include "quadcomp/error.hpp"
#include "quadcomp/irreducibility.hpp"
#include "quadcomp/local_field.hpp"

namespace quadcomp::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> p;
  std::optional<unsigned> k;
  std::string alphabet = "maximal";
  std::string alphabet_file;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::uint64_t budget = 1'000'000;
  bool innermost_first = false;

  // build
  std::string emit = "M";
  bool trim = false;
  bool minimize = false;
  bool merge = false;
  // test / canonicalize / decompose
  std::string word;
  std::string poly;
  std::optional<std::size_t> random_len;
  // enumerate / count
  std::size_t n = 0;
  bool words = false;
  bool annotate = false;
  // freedom
  std::optional<std::size_t> search;
  // local
  unsigned N = 8;
  std::string chain;
};

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--q", c.q, "field order q (odd prime power)");
  sub->add_option("--p", c.p, "characteristic p (odd prime)");
  sub->add_option("--k", c.k, "extension degree (with --p)");
  sub->add_option("--alphabet", c.alphabet,
                  "\"maximal\" or letters \"a=.. b=..; ...\"");
  sub->add_option("--alphabet-file", c.alphabet_file,
                  "file holding the alphabet text");
  sub->add_option("--format", c.format, "text, dot or json");
  sub->add_option("--seed", c.seed, "seed for randomized commands");
  sub->add_option("--budget", c.budget, "work cap for enumerations");
  sub->add_flag("--innermost-first", c.innermost_first,
                "display words innermost letter first");
}

FqCtxPtr make_field(const Config& c) {
  if (c.q && c.p) {
    const auto F = field_from_order(*c.q);
    if (F->p() != *c.p || (c.k && F->k() != *c.k))
      fail(Errc::InvalidArgument, "--q disagrees with --p/--k");
    return F;
  }
  if (c.q) {
    if (c.k) fail(Errc::InvalidArgument, "--k needs --p, not --q");
    return field_from_order(*c.q);
  }
  if (c.p) {
    if (*c.p == 2) fail(Errc::NotOddPrime, "characteristic 2 unsupported");
    return FqCtx::make(*c.p, c.k.value_or(1));
  }
  fail(Errc::InvalidArgument, "no field given; use --q or --p [--k]");
}

Alphabet make_alphabet(const Config& c, const FqCtxPtr& F) {
  std::string text = c.alphabet;
  if (!c.alphabet_file.empty()) {
    std::ifstream in(c.alphabet_file);
    if (!in) fail(Errc::ParseError, "cannot read " + c.alphabet_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  const std::string trimmed =
      first == std::string::npos ? "" : text.substr(first, last - first + 1);
  if (trimmed == "maximal") return Alphabet::maximal(F);
  return Alphabet::parse(F, trimmed);
}

ExportFormat format_of(const Config& c) { return parse_export_format(c.format); }

void require_not_dot(const Config& c) {
  if (format_of(c) == ExportFormat::Dot)
    fail(Errc::UnsupportedFormat, "dot output is only available for build");
}

std::string show(const Alphabet& S, const Word& w, const Config& c) {
  if (!c.innermost_first) return S.format(w);
  Word r = w;
  std::reverse(r.letters.begin(), r.letters.end());
  return S.format(r);
}

std::string count_str(const BigCount& v) { return v.str(); }

int exit_for(const DecompositionVerdict& v) {
  switch (v.kind) {
    case DecompositionVerdict::Kind::Irreducible: return kOk;
    case DecompositionVerdict::Kind::Reducible: return kReducible;
    case DecompositionVerdict::Kind::NotDecomposable: return kNotDecomposable;
  }
  return kConfigError;
}

int cmd_build(const Config& c, std::ostream& out) {
  const auto F = make_field(c);
  const Alphabet S = make_alphabet(c, F);
  const ExportFormat fmt = format_of(c);
  if (c.emit != "N" && c.emit != "M" && c.emit != "both")
    fail(Errc::InvalidArgument, "--emit must be N, M or both");
  AutomatonN N = build_interim(S);
  if (c.merge) N = merge_distinguished(N);
  std::string n_text, m_text;
  if (c.emit != "M") n_text = export_automaton(N, fmt, {c.trim});
  if (c.emit != "N") {
    PartialDfaM M = reverse_subset_prune(N, c.budget);
    if (c.minimize) M = minimize(M);
    m_text = export_automaton(M, fmt);
  }
  if (c.emit == "both") {
    if (fmt == ExportFormat::Json) {
      json j;
      j["interim"] = json::parse(n_text);
      j["partial_dfa"] = json::parse(m_text);
      out << j.dump(2) << "\n";
    } else {
      out << n_text << "\n" << m_text;
    }
  } else {
    out << (c.emit == "N" ? n_text : m_text);
  }
  return kOk;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

int cmd_test(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const bool js = format_of(c) == ExportFormat::Json;
  const auto F = make_field(c);
  const int inputs = !c.word.empty() + !c.poly.empty() + c.random_len.has_value();
  if (inputs != 1)
    fail(Errc::InvalidArgument, "give exactly one of --word, --poly, --random");

  if (!c.poly.empty()) {
    const FqPoly P = FqPoly::parse(F, c.poly);
    const auto v = DecompositionTester(F).test(P);
    if (js) {
      json j;
      j["verdict"] = v.to_string().substr(0, v.to_string().find('('));
      if (v.kind == DecompositionVerdict::Kind::Reducible) j["witness"] = v.witness;
      out << j.dump() << "\n";
    } else {
      out << v.to_string() << "\n";
    }
    return exit_for(v);
  }

  const Alphabet S = make_alphabet(c, F);
  Word w;
  if (c.random_len) {
    std::mt19937_64 rng(c.seed);
    for (std::size_t i = 0; i < *c.random_len; ++i)
      w.letters.push_back(static_cast<LetterIndex>(draw(rng, S.size())));
  } else {
    w = S.parse_word(c.word == "-" ? "" : c.word);
  }
  std::size_t witness = 0;
  if (!w.empty()) {
    const auto report = chain_irreducible(w, S);
    witness = report.first_failure.value_or(0);
  }
  const std::string verdict = witness ? "Reducible" : "Irreducible";
  if (js) {
    json j;
    if (c.random_len) j["word"] = show(S, w, c);
    j["verdict"] = verdict;
    if (witness) j["witness"] = witness;
    out << j.dump() << "\n";
  } else {
    if (c.random_len) out << show(S, w, c) << " ";
    out << verdict;
    if (witness) out << "(" << witness << ")";
    out << "\n";
  }
  return witness ? kReducible : kOk;
}

int cmd_enumerate(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const bool js = format_of(c) == ExportFormat::Json;
  const auto F = make_field(c);
  const Alphabet S = make_alphabet(c, F);
  if (!c.words && !S.is_maximal())
    fail(Errc::InvalidArgument,
         "polynomial listing needs the maximal alphabet; use --words");
  const PartialDfaM M = build_partial_dfa(S, c.budget);
  const BigCount words = count_accepted(M, c.n);
  const BigCount total = c.words ? words : words * F->q();
  if (total > c.budget)
    fail(Errc::BudgetExceeded, "enumeration would produce " + count_str(total) +
                                   " items, budget is " +
                                   std::to_string(c.budget));
  json arr = json::array();
  if (c.words) {
    std::vector<LevelEntry> level{{Word{}, M.start()}};
    for (std::size_t i = 0; i < c.n; ++i) level = extend_level(M, level);
    for (const auto& e : level) {
      if (js)
        arr.push_back(show(S, e.word, c));
      else
        out << show(S, e.word, c) << "\n";
    }
  } else {
    if (c.n < 1) fail(Errc::InvalidArgument, "-n must be >= 1 for polynomials");
    enumerate_irreducible_degree(F, c.n, [&](const EnumeratedPoly& e) {
      if (js) {
        json j;
        j["poly"] = e.poly.to_string();
        if (c.annotate) {
          j["shift"] = e.shift.to_string();
          j["word"] = show(S, *e.word, c);
        }
        arr.push_back(std::move(j));
      } else {
        out << e.poly.to_string();
        if (c.annotate)
          out << "\tshift=" << e.shift.to_string()
              << "\tword=" << show(S, *e.word, c);
        out << "\n";
      }
    });
  }
  if (js) out << arr.dump() << "\n";
  return kOk;
}

int cmd_count(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const bool js = format_of(c) == ExportFormat::Json;
  const auto F = make_field(c);
  const Alphabet S = make_alphabet(c, F);
  const PartialDfaM M = build_partial_dfa(S, c.budget);
  const BigCount words = count_accepted(M, c.n);
  const bool polys = !c.words && S.is_maximal() && c.n >= 1;
  if (js) {
    json j;
    j["length"] = c.n;
    j["words"] = count_str(words);
    if (polys) j["polynomials"] = count_str(words * F->q());
    out << j.dump() << "\n";
  } else {
    out << words << "\n";
    if (polys) out << count_str(words * F->q()) << "\n";
  }
  return kOk;
}

int cmd_freedom(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const bool js = format_of(c) == ExportFormat::Json;
  const auto F = make_field(c);
  const Alphabet S = make_alphabet(c, F);
  const auto cert = freedom_certificate(S);
  std::optional<std::pair<Word, Word>> hit;
  if (c.search) hit = collision_search(S, *c.search, c.budget);
  if (js) {
    json j;
    j["free"] = cert.free;
    j["certificate"] = cert.to_string();
    if (c.search) {
      j["search_length"] = *c.search;
      if (hit)
        j["collision"] = {show(S, hit->first, c), show(S, hit->second, c)};
      else
        j["collision"] = nullptr;
    }
    out << j.dump() << "\n";
  } else {
    out << cert.to_string() << "\n";
    if (c.search) {
      if (hit)
        out << "collision: " << show(S, hit->first, c) << " = "
            << show(S, hit->second, c) << "\n";
      else
        out << "no collision up to length " << *c.search << "\n";
    }
  }
  return kOk;
}

int cmd_local(const Config& c, std::ostream& out) {
  require_not_dot(c);
  if (!c.p) fail(Errc::InvalidArgument, "local needs --p");
  if (c.q && *c.q != *c.p)
    fail(Errc::InvalidArgument, "local works over Z_p; --q must equal --p");
  if (c.k && *c.k != 1) fail(Errc::InvalidArgument, "local needs k = 1");
  if (*c.p == 2) fail(Errc::NotOddPrime, "characteristic 2 unsupported");
  if (*c.p > UINT32_MAX || !is_prime(*c.p))
    fail(Errc::NotOddPrime, "--p must be an odd prime");
  if (c.chain.empty()) fail(Errc::InvalidArgument, "local needs --chain");
  const auto chain =
      parse_padic_chain(c.chain, static_cast<std::uint32_t>(*c.p), c.N);
  for (const auto& f : chain)
    if (f.a.p() != *c.p)
      fail(Errc::ContextMismatch, "chain letter over a different prime");
  const LocalVerdict v = local_irreducible(chain);
  if (format_of(c) == ExportFormat::Json)
    out << json{{"verdict", to_string(v)}}.dump() << "\n";
  else
    out << to_string(v) << "\n";
  switch (v) {
    case LocalVerdict::Irreducible: return kOk;
    case LocalVerdict::Reducible: return kReducible;
    case LocalVerdict::PreconditionFailed: return kNotDecomposable;
  }
  return kConfigError;
}

int cmd_canonicalize(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const auto F = make_field(c);
  if (c.poly.empty()) fail(Errc::InvalidArgument, "canonicalize needs --poly");
  const FqPoly P = FqPoly::parse(F, c.poly);
  const Alphabet S = Alphabet::maximal(F);
  const Canonical can = canonicalize(P);
  if (format_of(c) == ExportFormat::Json)
    out << json{{"shift", can.shift.to_string()}, {"word", show(S, can.word, c)}}
               .dump()
        << "\n";
  else
    out << "(" << can.shift.to_string() << ", " << show(S, can.word, c) << ")\n";
  return kOk;
}

int cmd_decompose(const Config& c, std::ostream& out) {
  require_not_dot(c);
  const auto F = make_field(c);
  if (c.poly.empty()) fail(Errc::InvalidArgument, "decompose needs --poly");
  const CanonicalChain ch = full_decompose(FqPoly::parse(F, c.poly));
  if (format_of(c) == ExportFormat::Json) {
    json j;
    j["outer"] = json::array();
    for (const auto& a : ch.outer) j["outer"].push_back(a.to_string());
    j["b"] = ch.shift.to_string();
    out << j.dump() << "\n";
  } else {
    out << "([";
    for (std::size_t i = 0; i < ch.outer.size(); ++i)
      out << (i ? ", " : "") << ch.outer[i].to_string();
    out << "], b = " << ch.shift.to_string() << ")\n";
  }
  return kOk;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::BudgetExceeded: return kBudgetExceeded;
    case Errc::NotDecomposable: return kNotDecomposable;
    case Errc::NotIrreducible: return kReducible;
    default: return kConfigError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Irreducible compositions of monic quadratics over F_q",
               "quadcomp"};
  app.require_subcommand(1);
  Config c;

  auto* build = app.add_subcommand("build", "emit the automata N and M");
  build->add_option("--emit", c.emit, "N, M or both");
  build->add_flag("--trim", c.trim, "drop states of N unreachable from I");
  build->add_flag("--minimize", c.minimize, "minimize M before export");
  build->add_flag("--merge", c.merge,
                  "identify <a> with (a) in N (needs -1 a square)");

  auto* test = app.add_subcommand("test", "irreducibility verdict");
  test->add_option("--word", c.word, "word, outermost letter first");
  test->add_option("--poly", c.poly, "coefficients, constant term first");
  test->add_option("--random", c.random_len, "random word of this length");

  auto* enumerate = app.add_subcommand("enumerate", "list irreducibles");
  enumerate->add_option("-n", c.n, "level: words of length n, degree 2^n")
      ->required();
  enumerate->add_flag("--words", c.words, "list accepted words instead");
  enumerate->add_flag("--annotate", c.annotate, "print shift and word");

  auto* count = app.add_subcommand("count", "count accepted words");
  count->add_option("-n", c.n, "word length")->required();
  count->add_flag("--words", c.words, "only the word count");

  auto* freedom = app.add_subcommand("freedom", "freedom certificate");
  freedom->add_option("--search", c.search, "collision search up to length");

  auto* local = app.add_subcommand("local", "p-adic chain verdict");
  local->add_option("--N", c.N, "p-adic precision")->check(CLI::Range(1u, 60u));
  local->add_option("--chain", c.chain, "\"a=.. b=..; ...\"");

  auto* canon = app.add_subcommand("canonicalize", "shift and maximal word");
  canon->add_option("--poly", c.poly, "coefficients, constant term first");

  auto* decompose = app.add_subcommand("decompose", "canonical chain");
  decompose->add_option("--poly", c.poly, "coefficients, constant term first");

  for (auto* sub : {build, test, enumerate, count, freedom, local, canon, decompose})
    add_common(sub, c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  // Buffer so nothing reaches out when a command fails midway.
  std::ostringstream buf;
  try {
    if (c.budget == 0) fail(Errc::InvalidArgument, "--budget must be positive");
    int code = kConfigError;
    if (*build) code = cmd_build(c, buf);
    else if (*test) code = cmd_test(c, buf);
    else if (*enumerate) code = cmd_enumerate(c, buf);
    else if (*count) code = cmd_count(c, buf);
    else if (*freedom) code = cmd_freedom(c, buf);
    else if (*local) code = cmd_local(c, buf);
    else if (*canon) code = cmd_canonicalize(c, buf);
    else if (*decompose) code = cmd_decompose(c, buf);
    out << buf.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}

}  // namespace quadcomp::cli
