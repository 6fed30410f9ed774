#include "quadcomp/composition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 21)
      out.emplace_back(1, static_cast<char>('f' + i));
    else
      out.push_back("s" + std::to_string(i));
  }
  return out;
}

struct PolyKeyHash {
  std::size_t operator()(const std::vector<FqCtx::Rep>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto c : v) h = (h ^ c) * 1099511628211ull;
    return h;
  }
};

}  // namespace

FqPoly MonicQuad::to_poly() const {
  const FqCtx& F = a.ctx();
  auto ctx = F.shared_from_this();
  // x^2 - 2a x + a^2 - b
  const FqElem two = F.elem(2);
  return FqPoly(ctx, {(a * a - b).rep(), (-(two * a)).rep(), F.one()});
}

MonicQuad MonicQuad::from_poly(const FqPoly& f) {
  if (f.degree() != 2) fail(Errc::InvalidDegree, "letter must have degree 2");
  if (!f.is_monic()) fail(Errc::NotMonic, "letter must be monic");
  const FqCtx& F = f.ctx();
  const FqElem a = -f.coeff(1) / F.elem(2);
  const FqElem b = a * a - f.coeff(0);
  return {a, b};
}

Alphabet::Alphabet(FqCtxPtr ctx, std::vector<MonicQuad> letters,
                   std::vector<std::string> names)
    : ctx_(std::move(ctx)), letters_(std::move(letters)),
      names_(std::move(names)) {
  std::set<std::pair<FqCtx::Rep, FqCtx::Rep>> seen;
  for (const auto& f : letters_) {
    if (!f.a.ctx_ptr() || !f.a.ctx().same_field(*ctx_) ||
        !f.b.ctx().same_field(*ctx_))
      fail(Errc::ContextMismatch, "letter from a different field");
    if (!seen.insert({f.a.rep(), f.b.rep()}).second)
      fail(Errc::DuplicateLetter, "duplicate letter a=" + f.a.to_string() +
                                      " b=" + f.b.to_string());
  }
  if (names_.empty()) names_ = default_names(letters_.size());
  if (names_.size() != letters_.size())
    fail(Errc::InvalidArgument, "one name per letter required");
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size())
    fail(Errc::DuplicateLetter, "duplicate letter name");
  for (const auto& n : names_)
    if (n.empty() || n.find_first_of(".; =") != std::string::npos || n == "ε")
      fail(Errc::InvalidArgument, "invalid letter name '" + n + "'");
}

Alphabet Alphabet::maximal(FqCtxPtr ctx) {
  std::vector<MonicQuad> letters;
  for (FqCtx::Rep b = 0; b < ctx->q(); ++b)
    letters.push_back({ctx->element(0), ctx->element(b)});
  return Alphabet(std::move(ctx), std::move(letters));
}

Alphabet Alphabet::parse(FqCtxPtr ctx, std::string_view text) {
  std::vector<MonicQuad> letters;
  std::vector<std::string> names;
  bool any_named = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ';' && text[i] != '\n') continue;
    std::string_view entry = trim(text.substr(start, i - start));
    start = i + 1;
    if (entry.empty() || entry.front() == '#') continue;
    std::optional<FqCtx::Rep> a, b;
    std::string name;
    // Tokens are key=value separated by whitespace; values may hold "[..]".
    std::size_t pos = 0;
    while (pos < entry.size()) {
      while (pos < entry.size() && entry[pos] == ' ') ++pos;
      if (pos >= entry.size()) break;
      const std::size_t eq = entry.find('=', pos);
      if (eq == std::string_view::npos)
        fail(Errc::ParseError, "expected key=value in '" + std::string(entry) + "'");
      const std::string_view key = trim(entry.substr(pos, eq - pos));
      std::size_t vend = eq + 1;
      while (vend < entry.size() && entry[vend] == ' ') ++vend;
      if (vend < entry.size() && entry[vend] == '[') {
        vend = entry.find(']', vend);
        if (vend == std::string_view::npos)
          fail(Errc::ParseError, "unterminated '[' in alphabet");
        ++vend;
      } else {
        while (vend < entry.size() && entry[vend] != ' ') ++vend;
      }
      const std::string_view value = trim(entry.substr(eq + 1, vend - eq - 1));
      if (key == "a")
        a = ctx->parse(value);
      else if (key == "b")
        b = ctx->parse(value);
      else if (key == "name")
        name = std::string(value);
      else
        fail(Errc::ParseError, "unknown key '" + std::string(key) + "'");
      pos = vend;
    }
    if (!b) fail(Errc::ParseError, "letter without b: '" + std::string(entry) + "'");
    letters.push_back({ctx->element(a.value_or(0)), ctx->element(*b)});
    any_named = any_named || !name.empty();
    names.push_back(name);
  }
  if (any_named) {
    const auto defaults = default_names(letters.size());
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i].empty()) names[i] = defaults[i];
  } else {
    names.clear();
  }
  return Alphabet(std::move(ctx), std::move(letters), std::move(names));
}

std::optional<LetterIndex> Alphabet::find(const MonicQuad& f) const {
  for (LetterIndex i = 0; i < letters_.size(); ++i)
    if (letters_[i] == f) return i;
  return std::nullopt;
}

bool Alphabet::compact_names() const noexcept {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "ε";
  std::string out;
  const bool compact = compact_names();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) out += '.';
    out += names_.at(w[i]);
  }
  return out;
}

Word Alphabet::parse_word(std::string_view text) const {
  text = trim(text);
  if (text.empty() || text == "ε") return {};
  std::unordered_map<std::string_view, LetterIndex> index;
  for (LetterIndex i = 0; i < names_.size(); ++i) index[names_[i]] = i;
  Word w;
  auto push = [&](std::string_view tok) {
    auto it = index.find(tok);
    if (it == index.end())
      fail(Errc::ParseError, "unknown letter '" + std::string(tok) + "'");
    w.letters.push_back(it->second);
  };
  if (text.find('.') != std::string_view::npos || !compact_names()) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i < text.size() && text[i] != '.') continue;
      push(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  } else {
    for (std::size_t i = 0; i < text.size(); ++i) push(text.substr(i, 1));
  }
  return w;
}

bool Alphabet::is_maximal() const {
  if (letters_.size() != ctx_->q()) return false;
  for (LetterIndex i = 0; i < letters_.size(); ++i)
    if (letters_[i].a.rep() != 0 || letters_[i].b.rep() != i) return false;
  return true;
}

std::string Alphabet::describe() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += "; ";
    out += "a=" + letters_[i].a.to_string() + " b=" + letters_[i].b.to_string();
  }
  return out;
}

FqPoly apply_letter(const MonicQuad& f, const FqPoly& P) {
  const auto& ctx = P.ctx_ptr();
  FqPoly t = P - FqPoly::constant(ctx, f.a.rep());
  return square(t) - FqPoly::constant(ctx, f.b.rep());
}

FqPoly pi(const Word& w, const Alphabet& S) {
  for (auto l : w.letters)
    if (l >= S.size())
      fail(Errc::IndexOutOfRange, "letter index " + std::to_string(l) +
                                      " outside alphabet of size " +
                                      std::to_string(S.size()));
  FqPoly P = FqPoly::x(S.ctx_ptr());
  for (std::size_t i = w.size(); i-- > 0;) P = apply_letter(S[w[i]], P);
  return P;
}

std::vector<FqElem> distinguished_set(const Alphabet& S) {
  std::set<FqCtx::Rep> bs;
  for (const auto& f : S.letters()) bs.insert(f.b.rep());
  std::vector<FqElem> out;
  for (auto b : bs) out.push_back(S.ctx().element(b));
  return out;
}

AFibers a_fibers(const Alphabet& S) {
  const FqCtx& F = S.ctx();
  std::map<FqCtx::Rep, std::set<FqCtx::Rep>> by_b;
  for (const auto& f : S.letters()) by_b[f.b.rep()].insert(f.a.rep());
  AFibers out;
  std::set<FqCtx::Rep> all;
  for (const auto& [b, as] : by_b) {
    AFiber fib{F.element(b), {}, {}};
    std::set<FqCtx::Rep> diffs;
    for (auto a : as) {
      fib.a_values.push_back(F.element(a));
      for (auto a2 : as) diffs.insert(F.sub(a, a2));
    }
    for (auto d : diffs) {
      fib.differences.push_back(F.element(d));
      all.insert(d);
    }
    out.fibers.push_back(std::move(fib));
  }
  for (auto d : all) out.difference_union.push_back(F.element(d));
  return out;
}

bool words_related(const Word& u, const Word& v, const Alphabet& S) {
  const FqPoly diff = pi(v, S) - pi(u, S);
  if (diff.degree() > 0) return false;
  const FqCtx::Rep ell = diff.coeff_rep(0);
  for (const auto& d : a_fibers(S).difference_union)
    if (d.rep() == ell) return true;
  return false;
}

std::string FreedomCertificate::to_string() const {
  if (!free) return "Unknown";
  return *criterion == FreedomCriterion::DistinguishedSetFull
             ? "Free: |D_S| = |S|"
             : "Free: |D_S| = 1";
}

FreedomCertificate freedom_certificate(const Alphabet& S) {
  const std::size_t d = distinguished_set(S).size();
  if (d == S.size()) return {true, FreedomCriterion::DistinguishedSetFull};
  if (d == 1) return {true, FreedomCriterion::DistinguishedSetSingleton};
  return {false, std::nullopt};
}

std::optional<std::pair<Word, Word>> collision_search(
    const Alphabet& S, std::size_t max_len, std::uint64_t word_budget) {
  if (max_len < 1) fail(Errc::InvalidArgument, "max_len must be >= 1");
  if (S.empty()) return std::nullopt;
  std::uint64_t total = 0, level = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (level > word_budget / S.size() + 1)
      fail(Errc::BudgetExceeded, "collision search exceeds word budget");
    level *= S.size();
    total += level;
    if (total > word_budget)
      fail(Errc::BudgetExceeded, "collision search exceeds word budget");
  }
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::unordered_map<std::vector<FqCtx::Rep>, Word, PolyKeyHash> seen;
    Word w(std::vector<LetterIndex>(len, 0));
    while (true) {
      const FqPoly P = pi(w, S);
      std::vector<FqCtx::Rep> key(P.coeffs().begin(), P.coeffs().end());
      auto [it, inserted] = seen.try_emplace(std::move(key), w);
      if (!inserted) return std::make_pair(it->second, w);
      std::size_t i = len;
      while (i > 0 && ++w.letters[i - 1] == S.size()) w.letters[--i] = 0;
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace quadcomp
