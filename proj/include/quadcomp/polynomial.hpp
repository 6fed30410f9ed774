#pragma once

// Dense univariate polynomials over F_q.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadcomp/finite_field.hpp"

namespace quadcomp {

class FqPoly {
 public:
  using Rep = FqCtx::Rep;
  static constexpr long kZeroDegree = -1;

  explicit FqPoly(FqCtxPtr ctx) : ctx_(std::move(ctx)) {}
  FqPoly(FqCtxPtr ctx, std::vector<Rep> coeffs);

  static FqPoly x(FqCtxPtr ctx);
  static FqPoly constant(FqCtxPtr ctx, Rep c);
  static FqPoly constant(FqElem c);
  static FqPoly monomial(FqCtxPtr ctx, std::size_t degree, Rep c = 1);
  // Integer coefficients, low-degree-first, reduced into the prime subfield.
  static FqPoly from_ints(FqCtxPtr ctx, std::initializer_list<std::int64_t> c);

  // Comma-separated coefficients low-degree-first, e.g. "2,0,1" for x^2+2.
  static FqPoly parse(FqCtxPtr ctx, std::string_view text);
  std::string to_string() const;

  const FqCtx& ctx() const { return *ctx_; }
  const FqCtxPtr& ctx_ptr() const noexcept { return ctx_; }

  long degree() const noexcept {
    return static_cast<long>(c_.size()) - 1;
  }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
  std::span<const Rep> coeffs() const noexcept { return c_; }
  Rep coeff_rep(std::size_t i) const noexcept {
    return i < c_.size() ? c_[i] : 0;
  }
  FqElem coeff(std::size_t i) const { return {ctx_.get(), coeff_rep(i)}; }
  FqElem lead() const { return coeff(c_.empty() ? 0 : c_.size() - 1); }

  FqPoly monic() const;
  FqPoly derivative() const;
  FqPoly scaled(Rep c) const;

  FqElem operator()(FqElem a) const;

  friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
  friend FqPoly operator-(const FqPoly& a);
  friend FqPoly operator%(const FqPoly& a, const FqPoly& m);
  friend bool operator==(const FqPoly& a, const FqPoly& b) noexcept {
    return a.c_ == b.c_;
  }

 private:
  void trim() noexcept;

  FqCtxPtr ctx_;
  std::vector<Rep> c_;
};

struct DivMod {
  FqPoly quotient;
  FqPoly remainder;
};

DivMod divmod(const FqPoly& a, const FqPoly& b);  // DivisionByZero

// g(f(x)).
FqPoly compose(const FqPoly& g, const FqPoly& f);
FqElem eval(const FqPoly& f, FqElem a);
FqPoly square(const FqPoly& f);
// f(x + c)
FqPoly shift(const FqPoly& f, FqElem c);

// Monic gcd; BothZero when both inputs vanish.
FqPoly gcd(const FqPoly& a, const FqPoly& b);

FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly powmod(const FqPoly& a, std::uint64_t e, const FqPoly& m);

// x^(q^e) mod m, one q-th power at a time by square-and-multiply.
FqPoly powmod_frobenius(std::uint64_t e, const FqPoly& m);

// Rabin's test. ConstantPolynomial for degree < 1.
bool rabin_is_irreducible(const FqPoly& f);

// lc(a)^deg(b) * prod over roots r of a of b(r). Both nonzero, deg a >= 1.
FqElem resultant(const FqPoly& a, const FqPoly& b);

// (-1)^(d(d-1)/2) Res(f, f') / lc(f) with f' taken at formal degree d - 1.
// DegreeTooSmall when deg f < 2.
FqElem discriminant(const FqPoly& f);

}  // namespace quadcomp
