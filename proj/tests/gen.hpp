#pragma once

// Seeded generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "quadcomp/composition.hpp"
#include "quadcomp/finite_field.hpp"
#include "quadcomp/polynomial.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

inline quadcomp::FqCtx::Rep elem(Rng& rng, const quadcomp::FqCtx& F) {
  return static_cast<quadcomp::FqCtx::Rep>(below(rng, F.q()));
}

inline quadcomp::FqPoly poly(Rng& rng, const quadcomp::FqCtxPtr& F,
                             std::size_t degree, bool monic) {
  std::vector<quadcomp::FqCtx::Rep> c(degree + 1);
  for (auto& x : c) x = elem(rng, *F);
  if (monic) c.back() = 1;
  while (c.back() == 0) c.back() = elem(rng, *F);
  return quadcomp::FqPoly(F, std::move(c));
}

inline quadcomp::MonicQuad quad(Rng& rng, const quadcomp::FqCtxPtr& F) {
  return {F->element(elem(rng, *F)), F->element(elem(rng, *F))};
}

// Alphabet of `size` distinct random letters.
inline quadcomp::Alphabet alphabet(Rng& rng, const quadcomp::FqCtxPtr& F,
                                   std::size_t size) {
  std::vector<quadcomp::MonicQuad> letters;
  while (letters.size() < size) {
    auto f = quad(rng, F);
    bool dup = false;
    for (const auto& g : letters) dup |= g == f;
    if (!dup) letters.push_back(f);
  }
  return quadcomp::Alphabet(F, std::move(letters));
}

inline quadcomp::Word word(Rng& rng, std::size_t letters, std::size_t length) {
  quadcomp::Word w;
  for (std::size_t i = 0; i < length; ++i)
    w.letters.push_back(static_cast<quadcomp::LetterIndex>(below(rng, letters)));
  return w;
}

// Calls fn on every word of the given length, lexicographically.
template <class Fn>
void for_each_word(std::size_t letters, std::size_t length, Fn&& fn) {
  quadcomp::Word w(std::vector<quadcomp::LetterIndex>(length, 0));
  while (true) {
    fn(static_cast<const quadcomp::Word&>(w));
    std::size_t i = length;
    while (i > 0 && ++w.letters[i - 1] == letters) w.letters[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace gen
