#pragma once

// Arithmetic in F_q, q = p^k odd.
//
// Elements are encoded as integers in [0, q): the power-basis coordinates
// c_0 + c_1 t + ... + c_{k-1} t^{k-1} map to c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
// That encoding is also the field-element enumeration order used everywhere
// a canonical ordering of F_q is needed.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quadcomp {

class FqCtx;
class FqElem;

using FqCtxPtr = std::shared_ptr<const FqCtx>;

class FqCtx : public std::enable_shared_from_this<FqCtx> {
 public:
  using Rep = std::uint32_t;

  // Throws NotOddPrime / InvalidDegree. For k > 1 the modulus is the
  // lexicographically smallest monic irreducible of degree k, comparing
  // coefficient lists low-degree-first.
  static FqCtxPtr make(std::uint64_t p, unsigned k = 1);

  std::uint32_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint32_t q() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  // Monic modulus over F_p, low-degree-first, length k + 1. Empty when k == 1.
  std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }

  Rep zero() const noexcept { return 0; }
  Rep one() const noexcept { return 1; }
  Rep minus_one() const noexcept { return p_ - 1; }

  Rep add(Rep a, Rep b) const noexcept {
    if (k_ == 1) {
      Rep s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Rep neg(Rep a) const noexcept {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Rep sub(Rep a, Rep b) const noexcept { return add(a, neg(b)); }
  Rep mul(Rep a, Rep b) const noexcept {
    if (k_ == 1) {
      return static_cast<Rep>(static_cast<std::uint64_t>(a) * b % p_);
    }
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Rep inv(Rep a) const;  // DivisionByZero
  Rep pow(Rep a, std::uint64_t e) const noexcept;
  Rep from_int(std::int64_t n) const noexcept;
  Rep from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(Rep a) const;

  // a != 0 and a^((q-1)/2) == -1.
  bool is_nonsquare(Rep a) const noexcept;

  FqElem element(Rep a) const;
  FqElem elem(std::int64_t n) const;

  // "3" for prime fields, "[c0,c1,...]" for extensions.
  std::string format(Rep a) const;
  Rep parse(std::string_view text) const;  // ParseError

  bool same_field(const FqCtx& other) const noexcept {
    return p_ == other.p_ && k_ == other.k_;
  }

 private:
  struct Token {};

 public:
  FqCtx(Token, std::uint32_t p, unsigned k);

 private:
  Rep add_ext(Rep a, Rep b) const noexcept;
  Rep neg_ext(Rep a) const noexcept;
  Rep mul_coords(Rep a, Rep b) const;

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> powers_;  // p^i, i < k
  std::vector<Rep> exp_;               // extension fields only
  std::vector<std::uint32_t> log_;
};

// An element together with its field. The context must outlive the element;
// containers (polynomials, alphabets, automata) hold the owning FqCtxPtr.
class FqElem {
 public:
  using Rep = FqCtx::Rep;

  FqElem() = default;
  FqElem(const FqCtx* ctx, Rep rep) : ctx_(ctx), rep_(rep) {}

  const FqCtx& ctx() const { return *ctx_; }
  const FqCtx* ctx_ptr() const noexcept { return ctx_; }
  Rep rep() const noexcept { return rep_; }
  bool is_zero() const noexcept { return rep_ == 0; }
  std::vector<std::uint32_t> coords() const { return ctx_->coords(rep_); }

  FqElem operator-() const { return {ctx_, ctx_->neg(rep_)}; }
  friend FqElem operator+(FqElem a, FqElem b) {
    check_same(a, b);
    return {a.ctx_, a.ctx_->add(a.rep_, b.rep_)};
  }
  friend FqElem operator-(FqElem a, FqElem b) {
    check_same(a, b);
    return {a.ctx_, a.ctx_->sub(a.rep_, b.rep_)};
  }
  friend FqElem operator*(FqElem a, FqElem b) {
    check_same(a, b);
    return {a.ctx_, a.ctx_->mul(a.rep_, b.rep_)};
  }
  friend FqElem operator/(FqElem a, FqElem b) { return a * b.inv(); }
  FqElem& operator+=(FqElem o) { return *this = *this + o; }
  FqElem& operator-=(FqElem o) { return *this = *this - o; }
  FqElem& operator*=(FqElem o) { return *this = *this * o; }

  FqElem inv() const { return {ctx_, ctx_->inv(rep_)}; }
  FqElem pow(std::uint64_t e) const { return {ctx_, ctx_->pow(rep_, e)}; }

  friend bool operator==(FqElem a, FqElem b) noexcept {
    return a.rep_ == b.rep_;
  }

  std::string to_string() const { return ctx_->format(rep_); }

 private:
  static void check_same([[maybe_unused]] FqElem a,
                         [[maybe_unused]] FqElem b);

  const FqCtx* ctx_ = nullptr;
  Rep rep_ = 0;
};

inline bool is_nonsquare(FqElem a) { return a.ctx().is_nonsquare(a.rep()); }

// Parses "p^k", "q" (a prime power) and the pair form used by the CLI.
// Throws NotOddPrime for characteristic 2 or a non-prime-power.
FqCtxPtr field_from_order(std::uint64_t q);

bool is_prime(std::uint64_t n) noexcept;

}  // namespace quadcomp
