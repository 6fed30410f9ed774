#include "doctest.h"
#include "gen.hpp"
#include "oracles.hpp"
#include "quadcomp/error.hpp"
#include "quadcomp/local_field.hpp"

using namespace quadcomp;

namespace {

PadicQuad pquad(std::uint32_t p, unsigned N, std::int64_t a, std::int64_t b) {
  return {PadicInt(p, N, a), PadicInt(p, N, b)};
}

// Subgroup of F_q^* generated by -1 and 2.
bool is_signed_power_of_two(const FqCtx& F, FqCtx::Rep u) {
  FqCtx::Rep t = 1;
  for (std::uint32_t i = 0; i < F.q(); ++i) {
    if (u == t || u == F.neg(t)) return true;
    t = F.mul(t, F.from_int(2));
  }
  return false;
}

}  // namespace

TEST_CASE("p-adic integers") {
  const PadicInt x(5, 3, -1);
  CHECK(x.modulus() == 125);
  CHECK(x.value() == 124);
  CHECK(x.is_unit());
  CHECK(PadicInt(5, 3, 50).valuation() == 2);
  CHECK(PadicInt(5, 3, 0).valuation() == 3);
  CHECK_FALSE(PadicInt(5, 3, 10).is_unit());
  CHECK_THROWS_AS(PadicInt(2, 3), Error);
  CHECK_THROWS_AS(PadicInt(9, 3), Error);
  CHECK_THROWS_AS(PadicInt(5, 0), Error);
  CHECK_THROWS_AS(PadicInt(7, 40), Error);
  CHECK_THROWS_AS(PadicInt(5, 3, 1) + PadicInt(5, 4, 1), Error);
  gen::Rng rng(51);
  for (int t = 0; t < 500; ++t) {
    const std::uint32_t p = std::vector<std::uint32_t>{3, 5, 7, 1000003}[t % 4];
    const unsigned N = p > 7 ? 3 : 8;
    const PadicInt ref(p, N);
    const std::uint64_t m = ref.modulus();
    const std::uint64_t a = gen::below(rng, m), b = gen::below(rng, m);
    const PadicInt A = ref.with_value(a), B = ref.with_value(b);
    CHECK((A + B).value() == (a + b) % m);
    CHECK((A - B).value() == (a + m - b) % m);
    CHECK((A * B).value() ==
          static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m));
    CHECK((-A + A).value() == 0);
  }
}

TEST_CASE("p-adic discriminant") {
  // (x - a)^2 - b has discriminant 4b.
  for (std::int64_t a : {0, 3, -11})
    for (std::int64_t b : {7, 5, -2, 250}) {
      const auto f = pquad(5, 8, a, b).to_poly();
      CHECK(discriminant(f) == PadicInt(5, 8, 4 * b));
    }
  CHECK_THROWS_AS(discriminant(PadicPoly(5, 4, {1, 1})), Error);
  CHECK_THROWS_AS(discriminant(PadicPoly(5, 4, {1, 1, 3})), Error);
  // Reduction commutes with the discriminant.
  gen::Rng rng(52);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto Fp = FqCtx::make(p);
    for (int t = 0; t < 60; ++t) {
      const PadicInt ref(p, 6);
      std::vector<std::uint64_t> c(3 + gen::below(rng, 7));
      for (auto& x : c) x = gen::below(rng, ref.modulus());
      c.back() = 1;
      const PadicPoly f(p, 6, c);
      CHECK(discriminant(f).value() % p ==
            oracle::discriminant(*Fp, oracle::from(reduce(f, Fp))));
    }
  }
}

TEST_CASE("discriminant of a composition, squared") {
  gen::Rng rng(53);
  for (std::uint64_t q : {3, 5, 7, 9, 11}) {
    auto F = field_from_order(q);
    for (int t = 0; t < 60; ++t) {
      const FqPoly g = gen::poly(rng, F, 1 + gen::below(rng, 8), true);
      const MonicQuad f = gen::quad(rng, F);
      const FqElem lhs = discriminant(compose(g, f.to_poly()));
      const FqElem rhs = disc_composition(g, f);
      CHECK(lhs * lhs == rhs * rhs);
    }
  }
  auto F5 = FqCtx::make(5);
  CHECK_THROWS_AS(disc_composition(FqPoly::from_ints(F5, {3}), {F5->elem(0), F5->elem(1)}),
                  Error);
  CHECK_THROWS_AS(disc_composition(FqPoly::from_ints(F5, {3, 2}), {F5->elem(0), F5->elem(1)}),
                  Error);
}

TEST_CASE("discriminant of a composition over Z/p^N, up to sign") {
  gen::Rng rng(54);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int t = 0; t < 40; ++t) {
      const PadicInt ref(p, 8);
      std::vector<std::uint64_t> c(2 + gen::below(rng, 6));
      for (auto& x : c) x = gen::below(rng, ref.modulus());
      c.back() = 1;
      const PadicPoly g(p, 8, c);
      const PadicQuad f{ref.with_value(gen::below(rng, ref.modulus())),
                        ref.with_value(gen::below(rng, ref.modulus()))};
      const PadicInt lhs = discriminant(compose(g, f.to_poly()));
      const PadicInt rhs = disc_composition(g, f);
      CHECK((lhs == rhs || lhs == -rhs));
    }
  }
}

TEST_CASE("iterated discriminant and chain values") {
  gen::Rng rng(55);
  for (std::uint64_t q : {3, 5}) {
    auto F = FqCtx::make(q);
    for (int t = 0; t < 80; ++t) {
      const std::size_t len = 1 + gen::below(rng, 3);
      std::vector<MonicQuad> chain;
      for (std::size_t i = 0; i < len; ++i) chain.push_back(gen::quad(rng, F));
      FqPoly P = FqPoly::x(F);
      for (std::size_t i = len; i-- > 0;) P = apply_letter(chain[i], P);
      // c_i = (f_1 o ... o f_{i-1})(-b_i), with c_1 = b_1.
      FqElem prod = F->elem(1);
      for (std::size_t i = 0; i < len; ++i) {
        FqElem c = i == 0 ? chain[0].b : -chain[i].b;
        for (std::size_t j = i; j-- > 0 && i > 0;) c = chain[j](c);
        prod = prod * c.pow(std::uint64_t{1} << (len - 1 - i));
      }
      const FqElem d = discriminant(P);
      CHECK((d.rep() == 0) == (prod.rep() == 0));
      if (prod.rep() != 0) CHECK(is_signed_power_of_two(*F, (d * prod.inv()).rep()));
    }
  }
}

TEST_CASE("reduction is a morphism") {
  auto F3 = FqCtx::make(3);
  for (std::int64_t a1 = 0; a1 < 9; ++a1)
    for (std::int64_t b1 = 0; b1 < 9; ++b1)
      for (std::int64_t a2 = 0; a2 < 9; a2 += 2)
        for (std::int64_t b2 = 0; b2 < 9; b2 += 2) {
          const auto f = pquad(3, 2, a1, b1), g = pquad(3, 2, a2, b2);
          const FqPoly lhs = reduce(compose(f.to_poly(), g.to_poly()), F3);
          const FqPoly rhs = compose(reduce(f, F3).to_poly(), reduce(g, F3).to_poly());
          CHECK(lhs == rhs);
        }
  CHECK_THROWS_AS(reduce(pquad(3, 2, 0, 1), FqCtx::make(5)), Error);
}

TEST_CASE("local verdict examples") {
  CHECK(local_irreducible(parse_padic_chain("a=0 b=7; a=1 b=3", 5)) ==
        LocalVerdict::Irreducible);
  CHECK(local_irreducible(parse_padic_chain("a=0 b=5", 5)) ==
        LocalVerdict::PreconditionFailed);
  CHECK(local_irreducible(parse_padic_chain("a=0 b=1", 5)) == LocalVerdict::Reducible);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const std::vector<PadicQuad> chain{pquad(p, 8, 0, p)};
    CHECK(local_irreducible(chain) == LocalVerdict::PreconditionFailed);
  }
  CHECK(to_string(LocalVerdict::PreconditionFailed) == "PreconditionFailed");
  CHECK_THROWS_AS(local_irreducible(std::vector<PadicQuad>{}), Error);
  const std::vector<PadicQuad> mixed{pquad(5, 8, 0, 2), pquad(7, 8, 0, 3)};
  CHECK_THROWS_AS(local_irreducible(mixed), Error);
}

TEST_CASE("chain parsing") {
  const auto c = parse_padic_chain("a=0 b=7; p=7 N=4 a=-1 b=3\n", 5);
  REQUIRE(c.size() == 2);
  CHECK(c[0].a.p() == 5);
  CHECK(c[0].b.precision() == 8);
  CHECK(c[1].a.p() == 7);
  CHECK(c[1].a.value() == 7 * 7 * 7 * 7 - 1);
  CHECK_THROWS_AS(parse_padic_chain("a=0", 5), Error);
  CHECK_THROWS_AS(parse_padic_chain("a=0 b=x", 5), Error);
  CHECK_THROWS_AS(parse_padic_chain("a=0 q=1 b=1", 5), Error);
  CHECK_THROWS_AS(parse_padic_chain("p=4 b=1", 5), Error);
}

TEST_CASE("unit-discriminant chains agree with their reduction") {
  gen::Rng rng(56);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto Fp = FqCtx::make(p);
    const PadicInt ref(p, 8);
    for (int t = 0; t < 50; ++t) {
      std::vector<PadicQuad> chain;
      for (std::size_t i = 0, n = 1 + gen::below(rng, 4); i < n; ++i)
        chain.push_back({ref.with_value(gen::below(rng, ref.modulus())),
                         ref.with_value(gen::below(rng, ref.modulus()))});
      while (!chain[0].b.is_unit())
        chain[0].b = ref.with_value(gen::below(rng, ref.modulus()));
      std::vector<MonicQuad> red;
      for (const auto& f : chain) red.push_back(reduce(f, Fp));
      const bool irr = chain_irreducible(red).irreducible();
      CHECK(local_irreducible(chain) ==
            (irr ? LocalVerdict::Irreducible : LocalVerdict::Reducible));
      CHECK(irr == rabin_is_irreducible(reduce(compose_chain(chain), Fp)));
    }
  }
}
