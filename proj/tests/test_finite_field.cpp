#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "quadcomp/error.hpp"
#include "quadcomp/finite_field.hpp"

using namespace quadcomp;

namespace {

const std::vector<std::pair<std::uint64_t, unsigned>> kSmallFields = {
    {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}};

}  // namespace

TEST_CASE("prime field construction") {
  auto F5 = FqCtx::make(5);
  CHECK(F5->q() == 5);
  CHECK(F5->is_prime_field());
  CHECK(F5->modulus().empty());
  CHECK(FqCtx::make(3)->q() == 3);
}

TEST_CASE("F_9 modulus is the smallest irreducible quadratic") {
  // Oracle: monic quadratics over F_3 without roots, ordered
  // lexicographically by (c0, c1).
  std::vector<std::vector<int>> irreducible;
  for (int c1 = 0; c1 < 3; ++c1)
    for (int c0 = 0; c0 < 3; ++c0) {
      bool root = false;
      for (int x = 0; x < 3; ++x) root |= (x * x + c1 * x + c0) % 3 == 0;
      if (!root) irreducible.push_back({c0, c1, 1});
    }
  REQUIRE(irreducible.size() == 3);
  std::sort(irreducible.begin(), irreducible.end());
  auto F9 = FqCtx::make(3, 2);
  CHECK(F9->q() == 9);
  const auto m = F9->modulus();
  CHECK(std::vector<int>(m.begin(), m.end()) == irreducible.front());
}

TEST_CASE("invalid fields") {
  CHECK_THROWS_AS(FqCtx::make(2), Error);
  CHECK_THROWS_AS(FqCtx::make(9), Error);
  CHECK_THROWS_AS(FqCtx::make(1), Error);
  CHECK_THROWS_AS(FqCtx::make(3, 0), Error);
  try {
    field_from_order(4);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("characteristic 2 unsupported") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(field_from_order(6), Error);
  CHECK(field_from_order(27)->k() == 3);
  CHECK(field_from_order(25)->p() == 5);
}

TEST_CASE("nonsquare examples") {
  auto F5 = FqCtx::make(5);
  auto F3 = FqCtx::make(3);
  CHECK(is_nonsquare(F5->elem(2)));
  CHECK_FALSE(is_nonsquare(F5->elem(0)));
  CHECK_FALSE(is_nonsquare(F3->elem(0)));
  CHECK_FALSE(is_nonsquare(F3->elem(1)));
  CHECK(is_nonsquare(F3->elem(2)));
}

TEST_CASE("arithmetic examples") {
  auto F5 = FqCtx::make(5);
  CHECK(F5->elem(2).inv() == F5->elem(3));
  CHECK_THROWS_AS(F5->inv(0), Error);
  for (FqCtx::Rep a = 0; a < 5; ++a) {
    CHECK(F5->add(a, F5->neg(a)) == 0);
    if (a) CHECK(F5->pow(a, 4) == 1);
  }
}

TEST_CASE("prime field matches integer arithmetic mod p") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    auto F = FqCtx::make(p);
    for (FqCtx::Rep a = 0; a < p; ++a)
      for (FqCtx::Rep b = 0; b < p; ++b) {
        CHECK(F->add(a, b) == (a + b) % p);
        CHECK(F->mul(a, b) == (a * b) % p);
        CHECK(F->sub(a, b) == (a + p - b) % p);
      }
  }
}

TEST_CASE("squares: exactly one of zero, nonsquare, nonzero square") {
  for (auto [p, k] : kSmallFields) {
    auto F = FqCtx::make(p, k);
    if (F->q() > 49) continue;
    const auto sq = oracle::squares(*F);
    std::size_t nonsquares = 0;
    for (FqCtx::Rep a = 0; a < F->q(); ++a) {
      const bool ns = F->is_nonsquare(a);
      CHECK(ns == !sq.count(a));
      const int which = (a == 0) + ns + (a != 0 && sq.count(a));
      CHECK(which == 1);
      nonsquares += ns;
    }
    CHECK(nonsquares == (F->q() - 1) / 2);
  }
}

TEST_CASE("quadratic character is multiplicative") {
  for (auto [p, k] : kSmallFields) {
    auto F = FqCtx::make(p, k);
    if (F->q() > 49) continue;
    for (FqCtx::Rep a = 1; a < F->q(); ++a)
      for (FqCtx::Rep b = 1; b < F->q(); ++b)
        CHECK(F->is_nonsquare(F->mul(a, b)) ==
              (F->is_nonsquare(a) != F->is_nonsquare(b)));
  }
}

TEST_CASE("field axioms on all triples, q <= 25") {
  for (auto [p, k] : kSmallFields) {
    auto F = FqCtx::make(p, k);
    if (F->q() > 25) continue;
    const FqCtx::Rep q = F->q();
    for (FqCtx::Rep a = 0; a < q; ++a) {
      CHECK(F->add(a, 0) == a);
      CHECK(F->mul(a, 1) == a);
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a) {
        CHECK(F->mul(a, F->inv(a)) == 1);
        CHECK(F->pow(a, q - 1) == 1);
      }
      for (FqCtx::Rep b = 0; b < q; ++b) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        for (FqCtx::Rep c = 0; c < q; ++c) {
          CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
          CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("extension elements: coordinates, format, parse") {
  auto F9 = FqCtx::make(3, 2);
  for (FqCtx::Rep a = 0; a < 9; ++a) {
    const auto c = F9->coords(a);
    CHECK(c.size() == 2);
    CHECK(a == c[0] + 3 * c[1]);
    CHECK(F9->from_coords(c) == a);
    CHECK(F9->parse(F9->format(a)) == a);
  }
  CHECK(F9->format(5) == "[2,1]");
  CHECK(F9->parse("2") == 2);
  CHECK_THROWS_AS(F9->parse("[1,2,3]"), Error);
  CHECK_THROWS_AS(F9->parse("x"), Error);
  // Frobenius is an automorphism: (a + b)^3 = a^3 + b^3.
  for (FqCtx::Rep a = 0; a < 9; ++a)
    for (FqCtx::Rep b = 0; b < 9; ++b)
      CHECK(F9->pow(F9->add(a, b), 3) == F9->add(F9->pow(a, 3), F9->pow(b, 3)));
}

TEST_CASE("negative integers embed") {
  auto F5 = FqCtx::make(5);
  CHECK(F5->from_int(-3) == 2);
  CHECK(F5->parse("-1") == 4);
  CHECK(F5->elem(-2) == F5->elem(3));
}
