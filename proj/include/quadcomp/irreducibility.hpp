#pragma once

// Irreducibility of compositions of monic quadratics.
//
// f1 o ... o fk with fi = (x - ai)^2 - bi is irreducible iff every chain
// value b1, f1(-b2), ..., (f1 o ... o f_{k-1})(-bk) is a nonsquare.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "quadcomp/automaton.hpp"
#include "quadcomp/composition.hpp"

namespace quadcomp {

struct ChainReport {
  std::vector<FqElem> values;
  std::vector<bool> nonsquare;
  // 1-based position of the first square value; values stop there.
  std::optional<std::size_t> first_failure;

  bool irreducible() const noexcept { return !first_failure.has_value(); }
};

// EmptyWord for the empty word (callers treat x as irreducible).
ChainReport chain_irreducible(const Word& w, const Alphabet& S);
ChainReport chain_irreducible(std::span<const MonicQuad> chain);

struct LevelEntry {
  Word word;
  StateId state;  // state of M after reading word
};

struct LevelEnumeration {
  std::vector<LevelEntry> entries;  // lexicographic word order
  FreedomCertificate freedom;       // words <-> polynomials only when free
};

// All accepted words of length n >= 1, each with its resume state.
LevelEnumeration enumerate_level(const PartialDfaM& M, std::size_t n);
// Level n + 1 from level n by appending one (innermost) letter.
std::vector<LevelEntry> extend_level(const PartialDfaM& M,
                                     std::span<const LevelEntry> level);

// pi(w)(x + shift), evaluated innermost-out.
FqPoly evaluate_shifted(const Word& w, const Alphabet& S, FqElem shift);

struct EnumeratedPoly {
  FqPoly poly;
  FqElem shift;  // poly = pi(word)(x + shift)
  const Word* word;
};

// Every monic irreducible of degree 2^n that is a composition of monic
// quadratics, as the q shift classes of the accepted words of length n over
// the maximal alphabet. Shift-major, then lexicographic word order.
void enumerate_irreducible_degree(
    const FqCtxPtr& ctx, std::size_t n,
    const std::function<void(const EnumeratedPoly&)>& sink);
std::vector<FqPoly> enumerate_irreducible_degree(const FqCtxPtr& ctx,
                                                 std::size_t n);

struct OuterSplit {
  FqElem a;      // outer letter x^2 - a
  FqPoly inner;  // monic, F = inner^2 - a
};

// F = (x^2 - a) o H with H monic of half the degree.
// OddDegree, NotMonic, NotDecomposable.
OuterSplit decompose_quadratic_outer(const FqPoly& F);

// F = (x^2 - a_1) o ... o (x^2 - a_n) o (x - b).
struct CanonicalChain {
  std::vector<FqElem> outer;  // a_1, ..., a_n, outermost first
  FqElem shift;               // b

  FqPoly recompose(const FqCtxPtr& ctx) const;
  // The word over the maximal alphabet spelling the outer letters.
  Word maximal_word() const;
};

// NotPowerOfTwo, NotMonic, NotDecomposable.
CanonicalChain full_decompose(const FqPoly& F);

struct DecompositionVerdict {
  enum class Kind { Irreducible, Reducible, NotDecomposable };
  Kind kind;
  std::size_t witness = 0;  // 1-based failing chain position when Reducible
  std::optional<CanonicalChain> chain;

  std::string to_string() const;  // "Irreducible", "Reducible(2)", ...
};

// Decomposition-based irreducibility test. Holds the interim automaton of
// the maximal alphabet so repeated tests share it.
class DecompositionTester {
 public:
  explicit DecompositionTester(FqCtxPtr ctx);

  // NotPowerOfTwo / NotMonic / DegreeTooSmall on bad input.
  DecompositionVerdict test(const FqPoly& F) const;
  const AutomatonN& interim() const noexcept { return N_; }

 private:
  FqCtxPtr ctx_;
  AutomatonN N_;
};

DecompositionVerdict test_decomposable(const FqPoly& F);

struct Canonical {
  FqElem shift;  // F(x) = pi(word)(x + shift)
  Word word;     // over the maximal alphabet
};

// NotDecomposable / NotIrreducible.
Canonical canonicalize(const FqPoly& F);

}  // namespace quadcomp
