#pragma once

// Alphabets of monic quadratics, words over them, and the evaluation
// morphism from words to compositions. A word is read outermost-first:
// the word f1 f2 ... fk stands for f1(f2(...fk(x)...)).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadcomp/finite_field.hpp"
#include "quadcomp/polynomial.hpp"

namespace quadcomp {

// f = (x - a)^2 - b.
struct MonicQuad {
  FqElem a;
  FqElem b;

  FqPoly to_poly() const;
  // Inverse of to_poly; throws NotMonic / InvalidDegree.
  static MonicQuad from_poly(const FqPoly& f);

  FqElem operator()(FqElem x) const {
    const FqElem t = x - a;
    return t * t - b;
  }

  friend bool operator==(const MonicQuad& l, const MonicQuad& r) noexcept {
    return l.a == r.a && l.b == r.b;
  }
};

using LetterIndex = std::uint32_t;

struct Word {
  std::vector<LetterIndex> letters;

  Word() = default;
  Word(std::initializer_list<LetterIndex> l) : letters(l) {}
  explicit Word(std::vector<LetterIndex> l) : letters(std::move(l)) {}

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  LetterIndex operator[](std::size_t i) const { return letters[i]; }

  // Drops the outermost letter.
  Word suffix() const {
    return Word(std::vector<LetterIndex>(letters.begin() + 1, letters.end()));
  }
  Word prefix(std::size_t n) const {
    return Word(std::vector<LetterIndex>(letters.begin(), letters.begin() + n));
  }
  friend Word operator+(const Word& u, const Word& v) {
    Word w = u;
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
    return w;
  }
  friend auto operator<=>(const Word&, const Word&) = default;
};

class Alphabet {
 public:
  // DuplicateLetter on repeated (a, b). Names default to f, g, h, ...
  Alphabet(FqCtxPtr ctx, std::vector<MonicQuad> letters,
           std::vector<std::string> names = {});

  // {x^2 - b : b in F_q} in field-element enumeration order.
  static Alphabet maximal(FqCtxPtr ctx);

  // Letters separated by ';' or newlines, each "a=<elem> b=<elem>" or
  // "b=<elem>" (a = 0); an optional "name=<id>" overrides the default name.
  static Alphabet parse(FqCtxPtr ctx, std::string_view text);

  const FqCtxPtr& ctx_ptr() const noexcept { return ctx_; }
  const FqCtx& ctx() const noexcept { return *ctx_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const MonicQuad& operator[](LetterIndex i) const { return letters_.at(i); }
  const std::vector<MonicQuad>& letters() const noexcept { return letters_; }
  const std::string& name(LetterIndex i) const { return names_.at(i); }
  std::optional<LetterIndex> find(const MonicQuad& f) const;

  // True when every name is one character, so words print without
  // separators.
  bool compact_names() const noexcept;
  std::string format(const Word& w) const;
  // Accepts concatenated one-character names or '.'-separated names;
  // "" and "ε" are the empty word.
  Word parse_word(std::string_view text) const;

  bool is_maximal() const;

  std::string describe() const;  // "a=0 b=2; a=1 b=3"

 private:
  FqCtxPtr ctx_;
  std::vector<MonicQuad> letters_;
  std::vector<std::string> names_;
};

// pi(w): the composition, evaluated innermost-out. IndexOutOfRange.
FqPoly pi(const Word& w, const Alphabet& S);

// (P - a)^2 - b
FqPoly apply_letter(const MonicQuad& f, const FqPoly& P);

// The b-values of the alphabet, sorted by encoding.
std::vector<FqElem> distinguished_set(const Alphabet& S);

struct AFiber {
  FqElem b;
  std::vector<FqElem> a_values;     // A_b
  std::vector<FqElem> differences;  // A_b - A_b
};

struct AFibers {
  std::vector<AFiber> fibers;             // one per distinguished value
  std::vector<FqElem> difference_union;  // union of all difference sets
};

AFibers a_fibers(const Alphabet& S);

// pi(v) - pi(u) is a constant in the union of the difference sets.
bool words_related(const Word& u, const Word& v, const Alphabet& S);

enum class FreedomCriterion {
  DistinguishedSetFull,       // |D_S| = |S|
  DistinguishedSetSingleton,  // |D_S| = 1
};

struct FreedomCertificate {
  bool free = false;
  std::optional<FreedomCriterion> criterion;

  std::string to_string() const;
};

FreedomCertificate freedom_certificate(const Alphabet& S);

// Brute-force search for two distinct equal-length words with the same
// image, lengths 1..max_len, in lexicographic order. BudgetExceeded when
// more than word_budget words would be enumerated.
std::optional<std::pair<Word, Word>> collision_search(
    const Alphabet& S, std::size_t max_len,
    std::uint64_t word_budget = 1'000'000);

}  // namespace quadcomp
