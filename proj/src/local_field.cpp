#include "quadcomp/local_field.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "quadcomp/error.hpp"

namespace quadcomp {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t power_of(std::uint32_t p, unsigned N) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < N; ++i) {
    if (m > (std::uint64_t{1} << 62) / p)
      fail(Errc::InvalidArgument, "p^N does not fit the working precision");
    m *= p;
  }
  return m;
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<__int128>(m);
  __int128 r = static_cast<__int128>(v) % sm;
  if (r < 0) r += sm;
  return static_cast<std::uint64_t>(r);
}

// Ring Z/m for the division-free determinant.
struct ModRing {
  std::uint64_t m;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= m ? s - m : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + m - b;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return mulmod(a, b, m);
  }
};

using Matrix = std::vector<std::vector<std::uint64_t>>;

// Samuelson-Berkowitz: coefficients of det(xI - A), leading first, using
// only ring operations.
std::uint64_t berkowitz_det(const Matrix& A, const ModRing& R) {
  const std::size_t n = A.size();
  if (n == 0) return 1 % R.m;
  std::vector<std::uint64_t> poly{1, R.sub(0, A[n - 1][n - 1])};
  for (std::size_t r = n - 1; r-- > 0;) {
    const std::size_t k = n - r;  // size of the current block
    std::vector<std::uint64_t> t(k + 1, 0);
    t[0] = 1;
    t[1] = R.sub(0, A[r][r]);
    // v = A1^j C, starting from C.
    std::vector<std::uint64_t> v(k - 1);
    for (std::size_t i = 0; i < k - 1; ++i) v[i] = A[r + 1 + i][r];
    for (std::size_t j = 2; j <= k; ++j) {
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < k - 1; ++i)
        dot = R.add(dot, R.mul(A[r][r + 1 + i], v[i]));
      t[j] = R.sub(0, dot);
      std::vector<std::uint64_t> nv(k - 1, 0);
      for (std::size_t i = 0; i < k - 1; ++i)
        for (std::size_t l = 0; l < k - 1; ++l)
          nv[i] = R.add(nv[i], R.mul(A[r + 1 + i][r + 1 + l], v[l]));
      v.swap(nv);
    }
    std::vector<std::uint64_t> next(k + 1, 0);
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j)
        next[i] = R.add(next[i], R.mul(t[i - j], poly[j]));
    poly.swap(next);
  }
  // Constant term is det(-A) = (-1)^n det(A).
  return n % 2 ? R.sub(0, poly[n]) : poly[n];
}

}  // namespace

PadicInt::PadicInt(std::uint32_t p, unsigned N, std::int64_t value)
    : p_(p), N_(N) {
  if (p < 3 || !is_prime(p))
    fail(Errc::InvalidArgument, "p-adic prime must be an odd prime");
  if (N < 1) fail(Errc::InvalidArgument, "precision must be >= 1");
  mod_ = power_of(p, N);
  v_ = reduce_signed(value, mod_);
}

unsigned PadicInt::valuation() const noexcept {
  unsigned e = 0;
  std::uint64_t v = v_;
  while (e < N_ && v % p_ == 0) {
    v /= p_;
    ++e;
  }
  return e;
}

void PadicInt::check_same(const PadicInt& o) const {
  if (p_ != o.p_ || N_ != o.N_)
    fail(Errc::ContextMismatch, "p-adic operands differ in p or precision");
}

PadicInt PadicInt::with_value(std::uint64_t v) const {
  PadicInt out = *this;
  out.v_ = v % mod_;
  return out;
}

PadicInt PadicInt::operator-() const {
  return with_value(v_ == 0 ? 0 : mod_ - v_);
}

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
  a.check_same(b);
  return a.with_value((a.v_ + b.v_) % a.mod_);
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) { return a + (-b); }

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
  a.check_same(b);
  return a.with_value(mulmod(a.v_, b.v_, a.mod_));
}

PadicPoly::PadicPoly(std::uint32_t p, unsigned N,
                     std::vector<std::uint64_t> coeffs)
    : p_(p), N_(N), mod_(PadicInt(p, N).modulus()), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= mod_;
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PadicInt PadicPoly::coeff(std::size_t i) const {
  return PadicInt(p_, N_).with_value(i < c_.size() ? c_[i] : 0);
}

PadicInt PadicPoly::operator()(const PadicInt& x) const {
  PadicInt acc(p_, N_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + coeff(i);
  return acc;
}

PadicPoly operator+(const PadicPoly& a, const PadicPoly& b) {
  std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = ((i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0)) %
           a.mod_;
  return PadicPoly(a.p_, a.N_, std::move(v));
}

PadicPoly operator*(const PadicPoly& a, const PadicPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return PadicPoly(a.p_, a.N_, {});
  std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] = (v[i + j] + mulmod(a.c_[i], b.c_[j], a.mod_)) % a.mod_;
  return PadicPoly(a.p_, a.N_, std::move(v));
}

PadicPoly PadicPoly::derivative() const {
  std::vector<std::uint64_t> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(mulmod(c_[i], i % mod_, mod_));
  return PadicPoly(p_, N_, std::move(v));
}

PadicPoly PadicQuad::to_poly() const {
  const PadicInt two(a.p(), a.precision(), 2);
  return PadicPoly(a.p(), a.precision(),
                   {(a * a - b).value(), (-(two * a)).value(), 1});
}

PadicPoly compose(const PadicPoly& g, const PadicPoly& f) {
  PadicPoly out(g.p(), g.precision(), {});
  for (std::size_t i = g.coeffs().size(); i-- > 0;)
    out = out * f + PadicPoly(g.p(), g.precision(), {g.coeffs()[i]});
  return out;
}

PadicPoly compose_chain(std::span<const PadicQuad> chain) {
  if (chain.empty()) fail(Errc::EmptyChain, "empty chain");
  PadicPoly P = chain.back().to_poly();
  for (std::size_t i = chain.size() - 1; i-- > 0;) P = compose(chain[i].to_poly(), P);
  return P;
}

MonicQuad reduce(const PadicQuad& f, const FqCtxPtr& Fp) {
  if (!Fp->is_prime_field() || Fp->p() != f.a.p())
    fail(Errc::ContextMismatch, "reduction needs the residue field F_p");
  return {Fp->element(static_cast<FqCtx::Rep>(f.a.value() % Fp->p())),
          Fp->element(static_cast<FqCtx::Rep>(f.b.value() % Fp->p()))};
}

FqPoly reduce(const PadicPoly& f, const FqCtxPtr& Fp) {
  if (!Fp->is_prime_field() || Fp->p() != f.p())
    fail(Errc::ContextMismatch, "reduction needs the residue field F_p");
  std::vector<FqCtx::Rep> v;
  for (auto c : f.coeffs()) v.push_back(static_cast<FqCtx::Rep>(c % Fp->p()));
  return FqPoly(Fp, std::move(v));
}

PadicInt discriminant(const PadicPoly& f) {
  const long d = f.degree();
  if (d < 2) fail(Errc::DegreeTooSmall, "discriminant needs degree >= 2");
  if (f.coeffs().back() != 1) fail(Errc::NotMonic, "polynomial must be monic");
  const ModRing R{PadicInt(f.p(), f.precision()).modulus()};
  const PadicPoly df = f.derivative();
  // Sylvester matrix of f (degree d) and f' at formal degree d - 1.
  const std::size_t m = static_cast<std::size_t>(d), n = m - 1, size = m + n;
  Matrix S(size, std::vector<std::uint64_t>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) S[r][r + i] = f.coeffs()[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) {
      const std::size_t deg = n - i;
      S[n + r][r + i] = deg < df.coeffs().size() ? df.coeffs()[deg] : 0;
    }
  std::uint64_t res = berkowitz_det(S, R);
  if (((d * (d - 1)) / 2) % 2) res = R.sub(0, res);
  return PadicInt(f.p(), f.precision()).with_value(res);
}

FqElem disc_composition(const FqPoly& g, const MonicQuad& f) {
  if (g.degree() < 1) fail(Errc::DegreeTooSmall, "g must be nonconstant");
  if (!g.is_monic()) fail(Errc::NotMonic, "g must be monic");
  const FqCtx& F = g.ctx();
  const FqElem dg = g.degree() >= 2 ? discriminant(g) : F.elem(1);
  return dg * dg * F.elem(4).pow(static_cast<std::uint64_t>(g.degree())) *
         g(-f.b);
}

PadicInt disc_composition(const PadicPoly& g, const PadicQuad& f) {
  if (g.degree() < 1) fail(Errc::DegreeTooSmall, "g must be nonconstant");
  const PadicInt one(g.p(), g.precision(), 1);
  const PadicInt dg = g.degree() >= 2 ? discriminant(g) : one;
  PadicInt four_pow = one;
  for (long i = 0; i < g.degree(); ++i) four_pow = four_pow * PadicInt(g.p(), g.precision(), 4);
  return dg * dg * four_pow * g(-f.b);
}

bool unit_disc(const PadicQuad& f) { return f.b.valuation() == 0; }

std::string to_string(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::Irreducible: return "Irreducible";
    case LocalVerdict::Reducible: return "Reducible";
    case LocalVerdict::PreconditionFailed: return "PreconditionFailed";
  }
  return "?";
}

LocalVerdict local_irreducible(std::span<const PadicQuad> chain) {
  if (chain.empty()) fail(Errc::EmptyChain, "empty chain");
  const std::uint32_t p = chain[0].a.p();
  for (const auto& f : chain)
    if (f.a.p() != p || f.b.p() != p)
      fail(Errc::ContextMismatch, "chain mixes primes");
  if (!unit_disc(chain[0])) return LocalVerdict::PreconditionFailed;
  const FqCtxPtr Fp = FqCtx::make(p);
  std::vector<MonicQuad> reduced;
  for (const auto& f : chain) reduced.push_back(reduce(f, Fp));
  return chain_irreducible(reduced).irreducible() ? LocalVerdict::Irreducible
                                                  : LocalVerdict::Reducible;
}

namespace {

std::int64_t parse_i64(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(Errc::ParseError, "malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<PadicQuad> parse_padic_chain(std::string_view text,
                                         std::uint32_t default_p,
                                         unsigned default_N) {
  std::vector<PadicQuad> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ';' && text[i] != '\n') continue;
    std::string_view entry = text.substr(start, i - start);
    start = i + 1;
    std::int64_t p = default_p, N = default_N, a = 0;
    std::optional<std::int64_t> b;
    std::size_t pos = 0;
    bool any = false;
    while (pos < entry.size()) {
      while (pos < entry.size() && (entry[pos] == ' ' || entry[pos] == '\t' ||
                                    entry[pos] == '\r'))
        ++pos;
      if (pos >= entry.size()) break;
      std::size_t end = pos;
      while (end < entry.size() && entry[end] != ' ' && entry[end] != '\t' &&
             entry[end] != '\r')
        ++end;
      const std::string_view tok = entry.substr(pos, end - pos);
      pos = end;
      const auto eq = tok.find('=');
      if (eq == std::string_view::npos)
        fail(Errc::ParseError, "expected key=value, got '" + std::string(tok) + "'");
      const auto key = tok.substr(0, eq);
      const auto val = parse_i64(tok.substr(eq + 1));
      any = true;
      if (key == "p")
        p = val;
      else if (key == "N")
        N = val;
      else if (key == "a")
        a = val;
      else if (key == "b")
        b = val;
      else
        fail(Errc::ParseError, "unknown key '" + std::string(key) + "'");
    }
    if (!any) continue;
    if (!b) fail(Errc::ParseError, "p-adic letter without b");
    if (p < 3 || p > UINT32_MAX || N < 1 || N > 64)
      fail(Errc::ParseError, "invalid p or N in p-adic letter");
    const auto up = static_cast<std::uint32_t>(p);
    const auto uN = static_cast<unsigned>(N);
    out.push_back({PadicInt(up, uN, a), PadicInt(up, uN, *b)});
  }
  return out;
}

}  // namespace quadcomp
