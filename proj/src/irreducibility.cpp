#include "quadcomp/irreducibility.hpp"

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

bool is_power_of_two(long d) { return d >= 1 && (d & (d - 1)) == 0; }

}  // namespace

ChainReport chain_irreducible(std::span<const MonicQuad> chain) {
  if (chain.empty()) fail(Errc::EmptyWord, "chain criterion needs a letter");
  ChainReport report;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    // (f_1 o ... o f_{k-1})(-b_k), applied innermost first; b_1 when k = 0.
    FqElem v = -chain[k].b;
    if (k == 0) v = chain[0].b;
    for (std::size_t i = k; i-- > 0;) v = chain[i](v);
    const bool ok = is_nonsquare(v);
    report.values.push_back(v);
    report.nonsquare.push_back(ok);
    if (!ok) {
      report.first_failure = k + 1;
      break;
    }
  }
  return report;
}

ChainReport chain_irreducible(const Word& w, const Alphabet& S) {
  if (w.empty()) fail(Errc::EmptyWord, "chain criterion needs a letter");
  std::vector<MonicQuad> chain;
  chain.reserve(w.size());
  for (auto l : w.letters) {
    if (l >= S.size()) fail(Errc::IndexOutOfRange, "letter outside alphabet");
    chain.push_back(S[l]);
  }
  return chain_irreducible(chain);
}

std::vector<LevelEntry> extend_level(const PartialDfaM& M,
                                     std::span<const LevelEntry> level) {
  std::size_t size = 0;
  for (const auto& e : level)
    for (LetterIndex f = 0; f < M.num_letters(); ++f)
      size += M.next(e.state, f) != PartialDfaM::kNone;
  std::vector<LevelEntry> out;
  out.reserve(size);
  for (const auto& e : level)
    for (LetterIndex f = 0; f < M.num_letters(); ++f) {
      const StateId t = M.next(e.state, f);
      if (t == PartialDfaM::kNone) continue;
      Word w = e.word;
      w.letters.push_back(f);
      out.push_back({std::move(w), t});
    }
  return out;
}

LevelEnumeration enumerate_level(const PartialDfaM& M, std::size_t n) {
  if (n < 1) fail(Errc::InvalidArgument, "level must be >= 1");
  LevelEnumeration out;
  out.freedom = freedom_certificate(M.alphabet());
  std::vector<LevelEntry> level{{Word{}, M.start()}};
  for (std::size_t i = 0; i < n; ++i) level = extend_level(M, level);
  out.entries = std::move(level);
  return out;
}

FqPoly evaluate_shifted(const Word& w, const Alphabet& S, FqElem shift) {
  FqPoly P(S.ctx_ptr(), {shift.rep(), S.ctx().one()});
  for (std::size_t i = w.size(); i-- > 0;) P = apply_letter(S[w[i]], P);
  return P;
}

void enumerate_irreducible_degree(
    const FqCtxPtr& ctx, std::size_t n,
    const std::function<void(const EnumeratedPoly&)>& sink) {
  const Alphabet S = Alphabet::maximal(ctx);
  const PartialDfaM M = build_partial_dfa(S);
  const auto level = enumerate_level(M, n);
  for (FqCtx::Rep a = 0; a < ctx->q(); ++a) {
    const FqElem shift = ctx->element(a);
    for (const auto& e : level.entries)
      sink({evaluate_shifted(e.word, S, shift), shift, &e.word});
  }
}

std::vector<FqPoly> enumerate_irreducible_degree(const FqCtxPtr& ctx,
                                                 std::size_t n) {
  std::vector<FqPoly> out;
  enumerate_irreducible_degree(
      ctx, n, [&](const EnumeratedPoly& e) { out.push_back(e.poly); });
  return out;
}

OuterSplit decompose_quadratic_outer(const FqPoly& F) {
  if (F.degree() < 2 || F.degree() % 2)
    fail(Errc::OddDegree, "outer quadratic needs even degree >= 2");
  if (!F.is_monic()) fail(Errc::NotMonic, "polynomial must be monic");
  const FqCtx& K = F.ctx();
  const auto& ctx = F.ctx_ptr();
  const std::size_t d = static_cast<std::size_t>(F.degree()) / 2;
  const FqCtx::Rep inv2 = K.inv(K.from_int(2));

  // Monic Ht of degree d with Ht(0) = 0, matched from the top so that
  // deg(F - Ht^2) <= d: coefficient d + j of Ht^2 is 2 h_j plus products of
  // already-known h_i, h_l with j < i, l < d.
  std::vector<FqCtx::Rep> h(d + 1, 0);
  h[d] = 1;
  for (std::size_t j = d - 1; j >= 1; --j) {
    FqCtx::Rep known = 0;
    for (std::size_t i = j + 1; i < d; ++i) {
      const std::size_t l = d + j - i;
      if (l <= j || l >= d) continue;
      known = K.add(known, K.mul(h[i], h[l]));
    }
    h[j] = K.mul(K.sub(F.coeff_rep(d + j), known), inv2);
  }
  const FqPoly Ht(ctx, h);
  const FqPoly R = F - square(Ht);
  if (R.degree() > static_cast<long>(d))
    fail(Errc::NotDecomposable, "no quadratic outer factor");
  const FqElem e1 = R.coeff(d);
  const FqElem e0 = R.coeff(0);
  // F = Ht^2 + e1 Ht + e0 must hold exactly.
  if (!(R == Ht.scaled(e1.rep()) + FqPoly::constant(e0)))
    fail(Errc::NotDecomposable, "no quadratic outer factor");
  const FqElem c = e1 * K.element(inv2);
  return {c * c - e0, Ht + FqPoly::constant(c)};
}

FqPoly CanonicalChain::recompose(const FqCtxPtr& ctx) const {
  FqPoly P(ctx, {(-shift).rep(), ctx->one()});
  for (std::size_t i = outer.size(); i-- > 0;)
    P = square(P) - FqPoly::constant(outer[i]);
  return P;
}

Word CanonicalChain::maximal_word() const {
  Word w;
  for (const auto& a : outer) w.letters.push_back(a.rep());
  return w;
}

CanonicalChain full_decompose(const FqPoly& F) {
  if (F.degree() < 2 || !is_power_of_two(F.degree()))
    fail(Errc::NotPowerOfTwo, "degree must be 2^n with n >= 1");
  if (!F.is_monic()) fail(Errc::NotMonic, "polynomial must be monic");
  CanonicalChain chain;
  FqPoly cur = F;
  while (cur.degree() > 1) {
    OuterSplit split = decompose_quadratic_outer(cur);
    chain.outer.push_back(split.a);
    cur = std::move(split.inner);
  }
  // cur = x - b
  chain.shift = -cur.coeff(0);
  return chain;
}

std::string DecompositionVerdict::to_string() const {
  switch (kind) {
    case Kind::Irreducible: return "Irreducible";
    case Kind::Reducible: return "Reducible(" + std::to_string(witness) + ")";
    case Kind::NotDecomposable: return "NotDecomposable";
  }
  return "?";
}

DecompositionTester::DecompositionTester(FqCtxPtr ctx)
    : ctx_(ctx), N_(build_interim(Alphabet::maximal(ctx))) {}

DecompositionVerdict DecompositionTester::test(const FqPoly& F) const {
  if (F.degree() < 2)
    fail(Errc::DegreeTooSmall, "decomposition test needs degree >= 2");
  if (!is_power_of_two(F.degree()))
    fail(Errc::NotPowerOfTwo, "degree must be a power of two");
  if (!F.is_monic()) fail(Errc::NotMonic, "polynomial must be monic");
  CanonicalChain chain;
  try {
    chain = full_decompose(F);
  } catch (const Error& e) {
    if (e.code() != Errc::NotDecomposable) throw;
    return {DecompositionVerdict::Kind::NotDecomposable, 0, std::nullopt};
  }
  // The shift is irrelevant: irreducibility is translation invariant.
  const LazyResult r = lazy_run(N_, chain.maximal_word());
  if (r.accepted) return {DecompositionVerdict::Kind::Irreducible, 0, chain};
  return {DecompositionVerdict::Kind::Reducible, r.failing_prefix, chain};
}

DecompositionVerdict test_decomposable(const FqPoly& F) {
  return DecompositionTester(F.ctx_ptr()).test(F);
}

Canonical canonicalize(const FqPoly& F) {
  const auto verdict = test_decomposable(F);
  if (verdict.kind == DecompositionVerdict::Kind::NotDecomposable)
    fail(Errc::NotDecomposable, "not a composition of monic quadratics");
  if (verdict.kind == DecompositionVerdict::Kind::Reducible)
    fail(Errc::NotIrreducible, "polynomial is reducible");
  // F = pi(w) o (x - b), so F(x) = pi(w)(x + shift) with shift = -b.
  return {-verdict.chain->shift, verdict.chain->maximal_word()};
}

}  // namespace quadcomp
