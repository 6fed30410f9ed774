#include "quadcomp/finite_field.hpp"

#include <cassert>
#include <charconv>
#include <limits>

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

using Coeffs = std::vector<std::uint32_t>;

std::uint32_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of num modulo a monic den over F_p; both low-degree-first.
Coeffs rem_monic(Coeffs num, const Coeffs& den, std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t i = num.size(); i-- > dd;) {
    const std::uint64_t c = num[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      const std::uint64_t t = c * den[j] % p;
      std::uint32_t& slot = num[i - dd + j];
      slot = static_cast<std::uint32_t>((slot + p - t) % p);
    }
  }
  num.resize(dd);
  return num;
}

bool is_zero(const Coeffs& c) {
  for (auto v : c)
    if (v) return false;
  return true;
}

// Trial division by every monic polynomial of degree <= deg/2.
bool irreducible_over_prime(const Coeffs& f, std::uint32_t p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    Coeffs div(d + 1, 0);
    div[d] = 1;
    while (true) {
      if (is_zero(rem_monic(f, div, p))) return false;
      unsigned i = 0;
      while (i < d && ++div[i] == p) div[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r * r <= n; ++r) {
    if (n % r) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t r = 2; r * r <= n; ++r)
    if (n % r == 0) return false;
  return true;
}

FqCtxPtr FqCtx::make(std::uint64_t p, unsigned k) {
  if (p == 2) fail(Errc::NotOddPrime, "characteristic 2 unsupported");
  if (!is_prime(p) || p >= (1ull << 31))
    fail(Errc::NotOddPrime, std::to_string(p) + " is not an odd prime");
  if (k < 1) fail(Errc::InvalidDegree, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > (1ull << 24) && k > 1)
      fail(Errc::InvalidDegree, "extension field too large");
  }
  return std::make_shared<const FqCtx>(Token{}, static_cast<std::uint32_t>(p),
                                       k);
}

FqCtx::FqCtx(Token, std::uint32_t p, unsigned k) : p_(p), k_(k), q_(1) {
  for (unsigned i = 0; i < k; ++i) {
    powers_.push_back(q_);
    q_ *= p;
  }
  if (k == 1) return;

  // Odometer over (c_0, ..., c_{k-1}) with c_0 most significant.
  Coeffs cand(k + 1, 0);
  cand[k] = 1;
  while (!irreducible_over_prime(cand, p)) {
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && ++cand[i] == p) cand[i--] = 0;
    assert(i >= 0 && "an irreducible of every degree exists");
  }
  modulus_ = cand;

  const auto factors = prime_factors(q_ - 1);
  auto slow_pow = [&](Rep a, std::uint64_t e) {
    Rep r = 1;
    while (e) {
      if (e & 1) r = mul_coords(r, a);
      a = mul_coords(a, a);
      e >>= 1;
    }
    return r;
  };
  Rep gen = 0;
  for (Rep g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, (q_ - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Rep cur = 1;
  for (std::uint32_t e = 0; e < q_ - 1; ++e) {
    exp_[e] = cur;
    log_[cur] = e;
    cur = mul_coords(cur, gen);
  }
}

FqCtx::Rep FqCtx::add_ext(Rep a, Rep b) const noexcept {
  Rep out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * powers_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

FqCtx::Rep FqCtx::neg_ext(Rep a) const noexcept {
  Rep out = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint32_t c = a % p_;
    out += (c == 0 ? 0 : p_ - c) * powers_[i];
    a /= p_;
  }
  return out;
}

FqCtx::Rep FqCtx::mul_coords(Rep a, Rep b) const {
  const auto ca = coords(a);
  const auto cb = coords(b);
  Coeffs prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  return from_coords(rem_monic(std::move(prod), modulus_, p_));
}

FqCtx::Rep FqCtx::inv(Rep a) const {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
  if (k_ == 1) return mod_pow(a, p_ - 2, p_);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FqCtx::Rep FqCtx::pow(Rep a, std::uint64_t e) const noexcept {
  if (k_ == 1) return mod_pow(a, e, p_);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t l = static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1));
  return exp_[l % (q_ - 1)];
}

FqCtx::Rep FqCtx::from_int(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Rep>(r);
}

FqCtx::Rep FqCtx::from_coords(std::span<const std::uint32_t> coords) const {
  if (coords.size() > k_)
    fail(Errc::InvalidArgument, "too many coordinates for field element");
  Rep out = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    out += (coords[i] % p_) * powers_[i];
  return out;
}

std::vector<std::uint32_t> FqCtx::coords(Rep a) const {
  std::vector<std::uint32_t> out(k_);
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

bool FqCtx::is_nonsquare(Rep a) const noexcept {
  if (a == 0) return false;
  return pow(a, (q_ - 1) / 2) == minus_one();
}

FqElem FqCtx::element(Rep a) const {
  if (a >= q_) fail(Errc::InvalidArgument, "element encoding out of range");
  return FqElem(this, a);
}

FqElem FqCtx::elem(std::int64_t n) const { return FqElem(this, from_int(n)); }

std::string FqCtx::format(Rep a) const {
  if (k_ == 1) return std::to_string(a);
  std::string out = "[";
  const auto c = coords(a);
  for (unsigned i = 0; i < k_; ++i) {
    if (i) out += ',';
    out += std::to_string(c[i]);
  }
  return out + "]";
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(Errc::ParseError, "malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

FqCtx::Rep FqCtx::parse(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) fail(Errc::ParseError, "empty field element");
  if (text.front() != '[') {
    // A bare integer embeds through the prime subfield, in any field.
    return from_int(parse_int(text));
  }
  if (text.back() != ']')
    fail(Errc::ParseError, "unterminated element '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<std::uint32_t> c;
  while (true) {
    const auto comma = text.find(',');
    c.push_back(from_int(parse_int(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (c.size() > k_)
    fail(Errc::ParseError, "element has more than k coordinates");
  return from_coords(c);
}

void FqElem::check_same([[maybe_unused]] FqElem a, [[maybe_unused]] FqElem b) {
  assert(a.ctx_ && b.ctx_ && a.ctx_->same_field(*b.ctx_) &&
         "operands from different fields");
}

FqCtxPtr field_from_order(std::uint64_t q) {
  if (q < 3) fail(Errc::NotOddPrime, "field order must be an odd prime power");
  if (q % 2 == 0) fail(Errc::NotOddPrime, "characteristic 2 unsupported");
  std::uint64_t p = 3;
  while (q % p) p += 2;
  unsigned k = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1)
    fail(Errc::NotOddPrime, std::to_string(q) + " is not a prime power");
  return FqCtx::make(p, k);
}

}  // namespace quadcomp
