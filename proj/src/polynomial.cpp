#include "quadcomp/polynomial.hpp"

#include <algorithm>
#include <cassert>

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

using Rep = FqCtx::Rep;
using Vec = std::vector<Rep>;

// Products of residues below 2^21 fit 2^22 at a time into a uint64 before
// reduction is needed.
bool lazy_ok(const FqCtx& F, std::size_t terms) {
  return F.is_prime_field() && F.p() < (1u << 21) && terms < (1u << 22);
}

Vec mul_vec(const FqCtx& F, std::span<const Rep> a, std::span<const Rep> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  if (lazy_ok(F, std::min(a.size(), b.size()))) {
    const std::uint64_t p = F.p();
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::uint64_t ai = a[i];
      if (!ai) continue;
      std::uint64_t* out = acc.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) out[j] += ai * b[j];
    }
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Rep>(acc[i] % p);
    return r;
  }
  Vec r(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

Vec sqr_vec(const FqCtx& F, std::span<const Rep> a) {
  if (a.empty()) return {};
  const std::size_t n = 2 * a.size() - 1;
  if (!lazy_ok(F, a.size())) return mul_vec(F, a, a);
  const std::uint64_t p = F.p();
  std::vector<std::uint64_t> cross(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a[i];
    if (!ai) continue;
    std::uint64_t* out = cross.data() + 2 * i + 1;
    const Rep* rest = a.data() + i + 1;
    const std::size_t m = a.size() - i - 1;
    for (std::size_t j = 0; j < m; ++j) out[j] += ai * rest[j];
  }
  Vec r(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = (cross[i] % p) * 2;
    if (i % 2 == 0) {
      const std::uint64_t d = a[i / 2];
      v += d * d % p;
    }
    r[i] = static_cast<Rep>(v % p);
  }
  return r;
}

void trim_vec(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// In-place remainder modulo a monic m.
void rem_monic_inplace(const FqCtx& F, Vec& r, std::span<const Rep> m) {
  const std::size_t dm = m.size() - 1;
  if (r.size() <= dm) return;
  if (F.is_prime_field() && F.p() < (1u << 21)) {
    const std::uint32_t p = F.p();
    for (std::size_t i = r.size(); i-- > dm;) {
      const std::uint64_t c = r[i];
      if (!c) continue;
      const std::uint64_t negc = p - c;
      Rep* base = r.data() + (i - dm);
      for (std::size_t j = 0; j < dm; ++j)
        base[j] = static_cast<Rep>((base[j] + negc * m[j]) % p);
      r[i] = 0;
    }
  } else {
    for (std::size_t i = r.size(); i-- > dm;) {
      const Rep c = r[i];
      if (!c) continue;
      for (std::size_t j = 0; j < dm; ++j)
        r[i - dm + j] = F.sub(r[i - dm + j], F.mul(c, m[j]));
      r[i] = 0;
    }
  }
  r.resize(dm);
  trim_vec(r);
}

// The q-power map on F_q[x]/(m) is F_q-linear; column j holds (x^q)^j mod m.
class FrobeniusMatrix {
 public:
  explicit FrobeniusMatrix(const FqPoly& m)
      : F_(m.ctx()), d_(static_cast<std::size_t>(m.degree())) {
    const FqPoly xq = powmod(FqPoly::x(m.ctx_ptr()), F_.q(), m);
    cols_.assign(d_ * d_, 0);
    FqPoly cur = FqPoly::constant(m.ctx_ptr(), 1);
    for (std::size_t j = 0; j < d_; ++j) {
      auto c = cur.coeffs();
      std::copy(c.begin(), c.end(), cols_.begin() + j * d_);
      cur = mulmod(cur, xq, m);
    }
  }

  Vec apply(std::span<const Rep> v) const {
    Vec out(d_, 0);
    if (lazy_ok(F_, d_)) {
      std::vector<std::uint64_t> acc(d_, 0);
      for (std::size_t j = 0; j < v.size(); ++j) {
        const std::uint64_t vj = v[j];
        if (!vj) continue;
        const Rep* col = cols_.data() + j * d_;
        for (std::size_t i = 0; i < d_; ++i) acc[i] += vj * col[i];
      }
      for (std::size_t i = 0; i < d_; ++i)
        out[i] = static_cast<Rep>(acc[i] % F_.p());
    } else {
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j]) continue;
        const Rep* col = cols_.data() + j * d_;
        for (std::size_t i = 0; i < d_; ++i)
          out[i] = F_.add(out[i], F_.mul(v[j], col[i]));
      }
    }
    trim_vec(out);
    return out;
  }

 private:
  const FqCtx& F_;
  std::size_t d_;
  Vec cols_;
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
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

FqPoly::FqPoly(FqCtxPtr ctx, std::vector<Rep> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (auto c : c_)
    if (c >= ctx_->q())
      fail(Errc::InvalidArgument, "coefficient encoding out of range");
  trim();
}

void FqPoly::trim() noexcept { trim_vec(c_); }

FqPoly FqPoly::x(FqCtxPtr ctx) { return FqPoly(std::move(ctx), {0, 1}); }

FqPoly FqPoly::constant(FqCtxPtr ctx, Rep c) {
  return FqPoly(std::move(ctx), Vec{c});
}

FqPoly FqPoly::constant(FqElem c) {
  return constant(c.ctx().shared_from_this(), c.rep());
}

FqPoly FqPoly::monomial(FqCtxPtr ctx, std::size_t degree, Rep c) {
  Vec v(degree + 1, 0);
  v[degree] = c;
  return FqPoly(std::move(ctx), std::move(v));
}

FqPoly FqPoly::from_ints(FqCtxPtr ctx,
                         std::initializer_list<std::int64_t> coeffs) {
  Vec v;
  for (auto c : coeffs) v.push_back(ctx->from_int(c));
  return FqPoly(std::move(ctx), std::move(v));
}

FqPoly FqPoly::parse(FqCtxPtr ctx, std::string_view text) {
  Vec v;
  // Commas inside "[...]" belong to extension-field elements.
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '[') ++depth;
    if (i < text.size() && text[i] == ']') {
      if (depth == 0) fail(Errc::ParseError, "unbalanced ']' in polynomial");
      --depth;
    }
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      v.push_back(ctx->parse(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) fail(Errc::ParseError, "unbalanced '[' in polynomial");
  return FqPoly(std::move(ctx), std::move(v));
}

std::string FqPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += ctx_->format(c_[i]);
  }
  return out;
}

FqPoly FqPoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return scaled(ctx_->inv(c_.back()));
}

FqPoly FqPoly::derivative() const {
  Vec d;
  for (std::size_t i = 1; i < c_.size(); ++i)
    d.push_back(ctx_->mul(ctx_->from_int(static_cast<std::int64_t>(i % ctx_->p())),
                          c_[i]));
  return FqPoly(ctx_, std::move(d));
}

FqPoly FqPoly::scaled(Rep c) const {
  Vec v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = ctx_->mul(c_[i], c);
  return FqPoly(ctx_, std::move(v));
}

FqElem FqPoly::operator()(FqElem a) const { return eval(*this, a); }

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
  const FqCtx& F = a.ctx();
  Vec v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = F.add(a.coeff_rep(i), b.coeff_rep(i));
  return FqPoly(a.ctx_, std::move(v));
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
  const FqCtx& F = a.ctx();
  Vec v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = F.sub(a.coeff_rep(i), b.coeff_rep(i));
  return FqPoly(a.ctx_, std::move(v));
}

FqPoly operator-(const FqPoly& a) { return FqPoly(a.ctx_) - a; }

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
  assert(a.ctx().same_field(b.ctx()));
  return FqPoly(a.ctx_, mul_vec(a.ctx(), a.c_, b.c_));
}

FqPoly operator%(const FqPoly& a, const FqPoly& m) {
  return divmod(a, m).remainder;
}

DivMod divmod(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
  const FqCtx& F = a.ctx();
  const auto& ctx = a.ctx_ptr();
  if (a.degree() < b.degree()) return {FqPoly(ctx), a};
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const Rep inv_lead = F.inv(bc.back());
  Vec r(a.coeffs().begin(), a.coeffs().end());
  Vec quo(r.size() - db, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    if (!r[i]) continue;
    const Rep c = F.mul(r[i], inv_lead);
    quo[i - db] = c;
    for (std::size_t j = 0; j < db; ++j)
      r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    r[i] = 0;
  }
  r.resize(db);
  return {FqPoly(ctx, std::move(quo)), FqPoly(ctx, std::move(r))};
}

FqPoly compose(const FqPoly& g, const FqPoly& f) {
  const auto& ctx = g.ctx_ptr();
  FqPoly out(ctx);
  for (std::size_t i = g.coeffs().size(); i-- > 0;)
    out = out * f + FqPoly::constant(ctx, g.coeffs()[i]);
  return out;
}

FqElem eval(const FqPoly& f, FqElem a) {
  const FqCtx& F = f.ctx();
  Rep acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    acc = F.add(F.mul(acc, a.rep()), f.coeffs()[i]);
  return {&F, acc};
}

FqPoly square(const FqPoly& f) {
  return FqPoly(f.ctx_ptr(), sqr_vec(f.ctx(), f.coeffs()));
}

FqPoly shift(const FqPoly& f, FqElem c) {
  const auto& ctx = f.ctx_ptr();
  return compose(f, FqPoly(ctx, {c.rep(), 1}));
}

FqPoly gcd(const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() && b.is_zero()) fail(Errc::BothZero, "gcd(0, 0)");
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    FqPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  const FqPoly mm = m.monic();
  Vec prod = mul_vec(a.ctx(), a.coeffs(), b.coeffs());
  rem_monic_inplace(a.ctx(), prod, mm.coeffs());
  return FqPoly(a.ctx_ptr(), std::move(prod));
}

FqPoly powmod(const FqPoly& a, std::uint64_t e, const FqPoly& m) {
  if (m.degree() < 1) fail(Errc::DegreeTooSmall, "modulus must be nonconstant");
  const FqCtx& F = a.ctx();
  const FqPoly mm = m.monic();
  Vec base(a.coeffs().begin(), a.coeffs().end());
  rem_monic_inplace(F, base, mm.coeffs());
  Vec result{1};
  // Left-to-right binary exponentiation.
  int top = 63;
  while (top >= 0 && !((e >> top) & 1)) --top;
  for (int bit = top; bit >= 0; --bit) {
    result = sqr_vec(F, result);
    rem_monic_inplace(F, result, mm.coeffs());
    if ((e >> bit) & 1) {
      result = mul_vec(F, result, base);
      rem_monic_inplace(F, result, mm.coeffs());
    }
  }
  trim_vec(result);
  return FqPoly(a.ctx_ptr(), std::move(result));
}

FqPoly powmod_frobenius(std::uint64_t e, const FqPoly& m) {
  if (m.degree() < 1) fail(Errc::DegreeTooSmall, "modulus must be nonconstant");
  FqPoly cur = FqPoly::x(m.ctx_ptr()) % m;
  for (std::uint64_t i = 0; i < e; ++i) cur = powmod(cur, m.ctx().q(), m);
  return cur;
}

bool rabin_is_irreducible(const FqPoly& f) {
  if (f.degree() < 1)
    fail(Errc::ConstantPolynomial, "irreducibility of a constant");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  if (d == 1) return true;
  const FqPoly m = f.monic();
  const auto& ctx = m.ctx_ptr();
  const FrobeniusMatrix frob(m);

  const auto primes = prime_divisors(d);
  std::vector<std::size_t> checkpoints;
  for (auto r : primes) checkpoints.push_back(d / r);
  std::sort(checkpoints.begin(), checkpoints.end());

  const FqPoly x = FqPoly::x(ctx);
  Vec cur{0, 1};  // x mod m, d >= 2
  std::size_t e = 0;
  for (std::size_t target : checkpoints) {
    for (; e < target; ++e) cur = frob.apply(cur);
    const FqPoly h = FqPoly(ctx, cur) - x;
    if (h.is_zero() || gcd(h, m).degree() != 0) return false;
  }
  for (; e < d; ++e) cur = frob.apply(cur);
  return FqPoly(ctx, cur) == x;
}

FqElem resultant(const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero())
    fail(Errc::InvalidArgument, "resultant of a zero polynomial");
  if (a.degree() < 1) fail(Errc::DegreeTooSmall, "resultant needs deg a >= 1");
  const FqCtx& F = a.ctx();
  Rep acc = 1;
  FqPoly f = a, g = b;
  // Invariant: Res(a, b) = acc * R(f, g) with R(f, g) = lc(f)^deg g prod g(roots of f).
  while (true) {
    const long m = f.degree();
    if (g.degree() == 0)
      return {&F, F.mul(acc, F.pow(g.coeffs()[0], static_cast<std::uint64_t>(m)))};
    const FqPoly r = g % f;
    if (r.is_zero()) return {&F, 0};
    // R(f, g) = lc(f)^(deg g - deg r) R(f, r)
    acc = F.mul(acc, F.pow(f.coeffs().back(),
                           static_cast<std::uint64_t>(g.degree() - r.degree())));
    if (r.degree() == 0)
      return {&F, F.mul(acc, F.pow(r.coeffs()[0], static_cast<std::uint64_t>(m)))};
    // R(f, r) = (-1)^(deg f deg r) R(r, f)
    if ((m * r.degree()) % 2) acc = F.neg(acc);
    g = std::move(f);
    f = r;
  }
}

FqElem discriminant(const FqPoly& f) {
  if (f.degree() < 2) fail(Errc::DegreeTooSmall, "discriminant needs degree >= 2");
  const FqCtx& F = f.ctx();
  const long d = f.degree();
  const FqPoly df = f.derivative();
  if (df.is_zero()) return {&F, 0};
  const Rep lc = f.coeffs().back();
  // Res at formal degree d - 1 of f' equals lc^(d-1-deg f') times the
  // resultant at its actual degree.
  Rep res = resultant(f, df).rep();
  res = F.mul(res, F.pow(lc, static_cast<std::uint64_t>(d - 1 - df.degree())));
  res = F.mul(res, F.inv(lc));
  if (((d * (d - 1)) / 2) % 2) res = F.neg(res);
  return {&F, res};
}

}  // namespace quadcomp
