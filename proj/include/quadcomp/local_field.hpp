#pragma once

// Monic quadratics over the p-adic integers, truncated mod p^N.
//
// Only valuation-0 tests feed decisions, so verdicts do not depend on N
// once N >= 1.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadcomp/composition.hpp"
#include "quadcomp/irreducibility.hpp"

namespace quadcomp {

class PadicInt {
 public:
  // InvalidArgument unless p is an odd prime, N >= 1 and p^N < 2^62.
  PadicInt(std::uint32_t p, unsigned N, std::int64_t value = 0);

  std::uint32_t p() const noexcept { return p_; }
  unsigned precision() const noexcept { return N_; }
  std::uint64_t modulus() const noexcept { return mod_; }
  std::uint64_t value() const noexcept { return v_; }

  // Largest e <= N with p^e | value.
  unsigned valuation() const noexcept;
  bool is_unit() const noexcept { return v_ % p_ != 0; }

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
  friend bool operator==(const PadicInt& a, const PadicInt& b) noexcept {
    return a.p_ == b.p_ && a.N_ == b.N_ && a.v_ == b.v_;
  }

  PadicInt with_value(std::uint64_t v) const;

 private:
  void check_same(const PadicInt& o) const;

  std::uint32_t p_;
  unsigned N_;
  std::uint64_t mod_;
  std::uint64_t v_;
};

// Polynomial over Z/p^N, low-degree-first.
class PadicPoly {
 public:
  PadicPoly(std::uint32_t p, unsigned N, std::vector<std::uint64_t> coeffs);

  std::uint32_t p() const noexcept { return p_; }
  unsigned precision() const noexcept { return N_; }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  std::span<const std::uint64_t> coeffs() const noexcept { return c_; }
  PadicInt coeff(std::size_t i) const;
  PadicInt operator()(const PadicInt& x) const;

  friend PadicPoly operator+(const PadicPoly& a, const PadicPoly& b);
  friend PadicPoly operator*(const PadicPoly& a, const PadicPoly& b);
  friend bool operator==(const PadicPoly&, const PadicPoly&) = default;

  PadicPoly derivative() const;

 private:
  std::uint32_t p_;
  unsigned N_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> c_;
};

// f = (x - a)^2 - b.
struct PadicQuad {
  PadicInt a;
  PadicInt b;

  PadicPoly to_poly() const;
};

PadicPoly compose(const PadicPoly& g, const PadicPoly& f);
PadicPoly compose_chain(std::span<const PadicQuad> chain);

// Reduction mod p into F_p; Fp must be the prime field of characteristic p.
MonicQuad reduce(const PadicQuad& f, const FqCtxPtr& Fp);
FqPoly reduce(const PadicPoly& f, const FqCtxPtr& Fp);

// Discriminant over Z/p^N from the Sylvester resultant of f and f', by a
// division-free determinant. f must be monic of degree >= 2.
PadicInt discriminant(const PadicPoly& f);

// disc(g)^2 * 4^deg(g) * g(-b_f). Equal to disc(g o f) up to sign.
// For deg g = 1 the discriminant of g is taken as 1.
FqElem disc_composition(const FqPoly& g, const MonicQuad& f);
PadicInt disc_composition(const PadicPoly& g, const PadicQuad& f);

// disc(f) = 4b is a unit.
bool unit_disc(const PadicQuad& f);

enum class LocalVerdict { Irreducible, Reducible, PreconditionFailed };

std::string to_string(LocalVerdict v);

// EmptyChain. PreconditionFailed when the outermost letter has non-unit
// discriminant; otherwise the verdict of the chain criterion on the
// reduction mod p.
LocalVerdict local_irreducible(std::span<const PadicQuad> chain);

// Letters "p=<prime> N=<prec> a=<int> b=<int>" separated by ';' or newlines;
// p and N fall back to the given defaults.
std::vector<PadicQuad> parse_padic_chain(std::string_view text,
                                         std::uint32_t default_p,
                                         unsigned default_N = 8);

}  // namespace quadcomp
