#include "hgm/arith.hpp"

#include "hgm/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hgm {

const char *prime_kind_name(PrimeKind k) {
  switch (k) {
  case PrimeKind::Good: return "good";
  case PrimeKind::Tame: return "tame";
  case PrimeKind::Wild: return "wild";
  }
  return "?";
}

PrimeKind prime_kind(const FamilyParameter &f, const Rat &t, const Int &p) {
  for (i64 g : f.gamma)
    if (Int(g) % p == 0) return PrimeKind::Wild;
  if (t == 1) return PrimeKind::Good;
  if (valuation(t, p) != 0 || valuation(Rat(t - 1), p) > 0) return PrimeKind::Tame;
  return PrimeKind::Good;
}

std::vector<Int> bad_primes(const FamilyParameter &f, const Rat &t) {
  std::set<Int> s;
  for (i64 g : f.gamma)
    for (auto [p, e] : factor(g)) s.insert(Int(p));
  if (t != 1) {
    Rat t1 = t - 1;
    for (const Int &x : {t.get_num(), t.get_den(), t1.get_num()})
      for (auto &p : prime_factors(x)) s.insert(p);
  }
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------- characters

CharacterTable::CharacterTable(u64 p, int e, u64 s, u64 b)
    : ff_(std::make_shared<FiniteField>(p, e)), s_(s), b_(b) {
  if (std::gcd(s_, ff_->q() - 1) != 1) throw Error(ErrorKind::InvalidArgument, "omega exponent not a unit");
  if (b_ == 0 || b_ >= ff_->q()) throw Error(ErrorKind::InvalidArgument, "psi parameter must be nonzero");
}

u64 CharacterTable::omega_exp(u64 x) const {
  return static_cast<u64>((u128)ff_->log(x) * s_ % (ff_->q() - 1));
}

CyclotomicElement CyclotomicElement::constant(u64 n, const Int &v) {
  CyclotomicElement c(n);
  c.c[0] = v;
  return c;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement &o) const {
  CyclotomicElement r(N);
  for (u64 i = 0; i < N; ++i) {
    if (c[i] == 0) continue;
    for (u64 j = 0; j < N; ++j)
      if (o.c[j] != 0) r.c[(i + j) % N] += c[i] * o.c[j];
  }
  return r;
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement &o) const {
  CyclotomicElement r = *this;
  for (u64 i = 0; i < N; ++i) r.c[i] += o.c[i];
  return r;
}

CyclotomicElement CyclotomicElement::conj() const {
  CyclotomicElement r(N);
  for (u64 i = 0; i < N; ++i) r.c[(N - i) % N] = c[i];
  return r;
}

IntPoly CyclotomicElement::reduced() const {
  IntPoly r = c;
  const IntPoly &phi = cyclotomic(static_cast<i64>(N));
  std::size_t d = phi.size() - 1;
  for (std::size_t i = r.size(); i-- > d;) {
    if (r[i] == 0) continue;
    Int q = r[i];
    for (std::size_t j = 0; j <= d; ++j) r[i - d + j] -= q * phi[j];
  }
  r.resize(std::min(r.size(), d));
  trim(r);
  return r;
}

CyclotomicElement gauss_sum(const CharacterTable &ctx, u64 a) {
  u64 q = ctx.q(), p = ctx.p();
  if (a >= q - 1) throw Error(ErrorKind::InvalidArgument, "character exponent out of range");
  u64 N = (q - 1) * p;
  CyclotomicElement g(N);
  for (u64 x = 1; x < q; ++x) {
    u64 k = static_cast<u64>((u128)a * ctx.omega_exp(x) % (q - 1));
    g.c[(p * k + (q - 1) * ctx.psi_exp(x)) % N] += 1;
  }
  return g;
}

// ---------------------------------------------------------------- split path

Int deligne_bound(int degree, int w, u64 q) {
  Int x = Int(degree) * Int(degree) * ipow(Int(std::to_string(q)), w);
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) r += 1;
  return r;
}

namespace {

Int from_u64(u64 x) { return Int(std::to_string(x)); }

Int symmetric_lift(Int v, const Int &mod) {
  v %= mod;
  if (v < 0) v += mod;
  if (2 * v > mod) v -= mod;
  return v;
}

struct SplitSetup {
  std::vector<u64> A, B; // alpha*(q-1), beta*(q-1)
  int phi0;
  u64 tt;                // t in F_p
};

u64 split_value_mod(const SplitSetup &s, const CharacterTable &ctx, u64 ell, u64 z, bool &ok) {
  const FiniteField &ff = ctx.field();
  u64 q = ff.q(), p = ff.p(), qm1 = q - 1;
  u64 zq = powmod(z, p, ell), zp = powmod(z, qm1, ell);
  std::vector<u64> powq(qm1), powp(p);
  powq[0] = powp[0] = 1;
  for (u64 k = 1; k < qm1; ++k) powq[k] = mulmod(powq[k - 1], zq, ell);
  for (u64 k = 1; k < p; ++k) powp[k] = mulmod(powp[k - 1], zp, ell);
  std::vector<u64> om(q), ps(q);
  for (u64 x = 1; x < q; ++x) om[x] = ctx.omega_exp(x), ps[x] = ctx.psi_exp(x);
  std::vector<u64> G(qm1, 0), Gc(qm1, 0);
  for (u64 c = 0; c < qm1; ++c) {
    u64 g = 0, gc = 0;
    for (u64 x = 1; x < q; ++x) {
      u64 k = static_cast<u64>((u128)c * om[x] % qm1);
      g = (g + mulmod(powq[k], powp[ps[x]], ell)) % ell;
      gc = (gc + mulmod(powq[(qm1 - k) % qm1], powp[(p - ps[x]) % p], ell)) % ell;
    }
    G[c] = g;
    Gc[c] = gc;
  }
  auto J = [&](u64 m) {
    u64 r = 1;
    for (u64 a : s.A) r = mulmod(r, G[(a + m) % qm1], ell);
    for (u64 b : s.B) r = mulmod(r, Gc[(b + m) % qm1], ell);
    return r;
  };
  u64 j0 = J(0);
  if (j0 == 0) {
    ok = false;
    return 0;
  }
  u64 wt = ctx.omega_exp(s.tt);
  u64 sum = 0;
  for (u64 m = 0; m < qm1; ++m)
    sum = (sum + mulmod(J(m), powq[static_cast<u64>((u128)m * wt % qm1)], ell)) % ell;
  u64 r = mulmod(sum, invmod(j0, ell), ell);
  u64 qe = q % ell;
  if (s.phi0 <= 0) r = mulmod(r, powmod(qe, static_cast<u64>(-s.phi0), ell), ell);
  else r = mulmod(r, invmod(powmod(qe, s.phi0, ell), ell), ell);
  r = mulmod(r, invmod((1 + ell - qe) % ell, ell), ell);
  ok = true;
  return r;
}

u64 root_of_unity(u64 N, u64 ell) {
  auto fac = factor(static_cast<i64>(N));
  for (u64 h = 2;; ++h) {
    u64 z = powmod(h, (ell - 1) / N, ell);
    bool prim = true;
    for (auto [r, e] : fac)
      if (powmod(z, N / r, ell) == 1) prim = false;
    if (prim) return z;
  }
}

Int split_engine(const FamilyParameter &f, const Rat &t, const CharacterTable &ctx, const Int &bound) {
  const FiniteField &ff = ctx.field();
  u64 q = ff.q(), p = ff.p(), qm1 = q - 1;
  if (qm1 % static_cast<u64>(f.m) != 0)
    throw Error(ErrorKind::NonSplit, "q = " + std::to_string(q) + " is not 1 mod " + std::to_string(f.m));
  SplitSetup s;
  for (auto &a : f.alpha) s.A.push_back(mpz_class(a * Rat(from_u64(qm1))).get_ui() % qm1);
  for (auto &b : f.beta) s.B.push_back(mpz_class(b * Rat(from_u64(qm1))).get_ui() % qm1);
  s.phi0 = hodge_vector(f).phi0;
  s.tt = ff.from_rat(t);
  if (s.tt == 0) throw Error(ErrorKind::BadPrime, "t reduces to zero");

  u64 N = qm1 * p;
  Int target = 2 * bound + 1;
  std::vector<std::pair<u64, u64>> res; // (ell, value)
  Int prod = 1;
  int extra = 0;
  for (u64 k = ((1ULL << 61) / N) + 1; extra < 2; ++k) {
    u64 ell = 1 + N * k;
    if (!is_prime(ell)) continue;
    bool ok;
    u64 z = root_of_unity(N, ell);
    u64 v = split_value_mod(s, ctx, ell, z, ok);
    if (!ok) continue;
    res.emplace_back(ell, v);
    if (prod > target) ++extra;
    else prod *= from_u64(ell);
  }
  // CRT over the primes that reached the target
  Int val = 0, mod = 1;
  std::size_t used = res.size() - 2;
  for (std::size_t i = 0; i < used; ++i) {
    Int ell = from_u64(res[i].first), v = from_u64(res[i].second);
    // val + mod * x = v mod ell
    Int inv, diff = (v - val) % ell;
    if (diff < 0) diff += ell;
    Int mm = mod % ell;
    mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), ell.get_mpz_t());
    Int x = diff * inv % ell;
    val += mod * x;
    mod *= ell;
  }
  val = symmetric_lift(val, mod);
  if (abs(val) > bound) throw Error(ErrorKind::Consistency, "split trace exceeds the Deligne bound");
  for (std::size_t i = used; i < res.size(); ++i) {
    Int ell = from_u64(res[i].first);
    Int r = val % ell;
    if (r < 0) r += ell;
    if (r != from_u64(res[i].second)) throw Error(ErrorKind::Consistency, "split trace is not an integer");
  }
  return val;
}

} // namespace

Int trace_split(const FamilyParameter &f, const Rat &t, const CharacterTable &ctx) {
  if (prime_kind(f, t, Int(from_u64(ctx.p()))) != PrimeKind::Good || t == 1)
    throw Error(ErrorKind::BadPrime, std::to_string(ctx.p()) + " is not good");
  auto hd = hodge_vector(f);
  return split_engine(f, t, ctx, deligne_bound(f.n, hd.w, ctx.q()));
}

Int trace_split(const FamilyParameter &f, const Rat &t, u64 q) {
  auto [p, e] = prime_power(q);
  if (!p) throw Error(ErrorKind::InvalidArgument, "q is not a prime power");
  return trace_split(f, t, CharacterTable(p, e));
}

// ---------------------------------------------------------------- p-adic path

namespace {

u64 ipow_u(u64 b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return static_cast<u64>(r);
}

// residues modulo a prime power below 2^61
struct SmallRing {
  using T = u64;
  u64 m;
  explicit SmallRing(const Int &mod) : m(mod.get_ui()) {}
  T from(u64 x) const { return x % m; }
  T reduce(const Int &x) const { return reduce_mod(x, m); }
  T mul(T a, T b) const { return mulmod(a, b, m); }
  T add(T a, T b) const {
    u64 s = a + b;
    return s >= m ? s - m : s;
  }
  T neg(T a) const { return a ? m - a : 0; }
  Int lift(T a) const { return from_u64(a); }
};

// residues modulo an arbitrary prime power
struct BigRing {
  using T = Int;
  Int m;
  explicit BigRing(const Int &mod) : m(mod) {}
  T from(u64 x) const { return reduce(from_u64(x)); }
  T reduce(const Int &x) const {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  T mul(const T &a, const T &b) const {
    Int r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  T add(const T &a, const T &b) const {
    Int s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  T neg(const T &a) const { return a == 0 ? Int(0) : Int(m - a); }
  Int lift(const T &a) const { return a; }
};

inline u64 take_digit(u64 &x, u64 b) {
  u64 d = x % b;
  x /= b;
  return d;
}
inline u64 take_digit(Int &x, u64 b) { return mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), b); }
inline bool is_odd(u64 x) { return x & 1; }
inline bool is_odd(const Int &x) { return mpz_odd_p(x.get_mpz_t()); }

// Gamma_p on integers via tables of partial products over digit blocks
template <class R> class PadicCore {
public:
  using T = typename R::T;
  using Poly = std::vector<T>;

  PadicCore(u64 p, int digits)
      : p_(p), digits_(digits), ring_(ipow(from_u64(p), digits)),
        ext_(ipow(from_u64(p), p == 2 ? digits + 1 : digits)) {
    int in_digits = p == 2 ? digits + 1 : digits;
    // digit blocks of size p^h with p^h <= 4096
    h_ = 1;
    while (h_ < in_digits && (u128)ipow_u(p, h_ + 1) <= 4096) ++h_;
    block_ = ipow_u(p, h_);
    int levels = (in_digits + h_ - 1) / h_;
    // tables_[L][b]: prod_{j < b p^{L h}, p !| j} (v + j) for v = 0 mod p^{(L+1)h}, truncated in v
    tables_.resize(levels);
    for (int L = 0; L < levels; ++L) {
      int deg = std::max((digits + (L + 1) * h_ - 1) / ((L + 1) * h_), 1);
      auto &tab = tables_[L];
      tab.assign(block_ + 1, Poly(deg, ring_.from(0)));
      tab[0][0] = ring_.from(1);
      if (L == 0) {
        for (u64 b = 0; b < block_; ++b) {
          if (b % p == 0) {
            tab[b + 1] = tab[b];
            continue;
          }
          Poly lin(deg, ring_.from(0));
          lin[0] = ring_.from(b);
          if (deg > 1) lin[1] = ring_.from(1);
          tab[b + 1] = pmul(tab[b], lin, deg);
        }
      } else {
        const Poly &full = tables_[L - 1][block_];
        T step = ring_.reduce(ipow(from_u64(p), L * h_));
        for (u64 b = 0; b < block_; ++b) {
          Poly sh = pshift(full, ring_.mul(ring_.from(b), step));
          sh.resize(deg);
          tab[b + 1] = pmul(tab[b], sh, deg);
        }
      }
      steps_.push_back(ring_.reduce(ipow(from_u64(p), L * h_)));
    }
  }

  const R &ring() const { return ring_; }
  const R &ext() const { return ext_; }
  int digits() const { return digits_; }

  // n is reduced modulo the input modulus
  T gamma_int(T n) const {
    bool odd = is_odd(n);
    std::vector<u64> dig(tables_.size());
    for (auto &d : dig) d = take_digit(n, block_);
    T v = ring_.from(0), r = ring_.from(1);
    for (std::size_t L = tables_.size(); L-- > 0;) {
      const Poly &f = tables_[L][dig[L]];
      T acc = ring_.from(0);
      for (std::size_t i = f.size(); i-- > 0;) acc = ring_.add(ring_.mul(acc, v), f[i]);
      r = ring_.mul(r, acc);
      v = ring_.add(v, ring_.mul(ring_.from(dig[L]), steps_[L]));
    }
    return odd ? ring_.neg(r) : r;
  }

  T teichmuller(T c) const {
    for (int i = 1; i < digits_; ++i) c = pow(c, p_);
    return c;
  }

  T pow(T b, u64 e) const {
    T r = ring_.from(1);
    for (; e; e >>= 1, b = ring_.mul(b, b))
      if (e & 1) r = ring_.mul(r, b);
    return r;
  }

private:
  Poly pmul(const Poly &a, const Poly &b, int deg) const {
    Poly c(deg, ring_.from(0));
    for (int i = 0; i < deg; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < deg; ++j) c[i + j] = ring_.add(c[i + j], ring_.mul(a[i], b[j]));
    }
    return c;
  }

  // f(u + s)
  Poly pshift(Poly f, const T &s) const {
    int deg = static_cast<int>(f.size());
    for (int i = 0; i < deg; ++i)
      for (int j = deg - 2; j >= i; --j) f[j] = ring_.add(f[j], ring_.mul(f[j + 1], s));
    return f;
  }

  u64 p_;
  int digits_;
  R ring_, ext_;
  int h_ = 1;
  u64 block_ = 1;
  std::vector<std::vector<Poly>> tables_;
  std::vector<T> steps_;
};

bool fits_small(u64 p, int digits) {
  u128 m = 1;
  for (int i = 0; i < digits + 1; ++i) {
    m *= p;
    if (m >= ((u128)1 << kPadicCapBits)) return false;
  }
  return true;
}

} // namespace

struct PadicContext::Impl : PadicCore<SmallRing> {
  using PadicCore::PadicCore;
};

PadicContext::PadicContext(u64 p, int digits) : p_(p), digits_(digits) {
  if (digits < 1) throw Error(ErrorKind::InvalidArgument, "precision must be positive");
  if (!fits_small(p, digits)) throw Error(ErrorKind::Precision, "p-adic modulus exceeds cap");
  impl_ = std::make_shared<Impl>(p, digits);
  mod_ = impl_->ring().m;
  extmod_ = impl_->ext().m;
}

u64 PadicContext::gamma_int(u64 n) const { return impl_->gamma_int(n % extmod_); }

u64 PadicContext::gamma_frac(u64 k, u64 qm1) const {
  u64 n = mulmod(k % extmod_, invmod(qm1 % extmod_, extmod_), extmod_);
  return gamma_int(n);
}

u64 PadicContext::teichmuller(u64 c) const { return impl_->teichmuller(c % mod_); }

Rat gamma_scale(const GammaVector &gamma) {
  Rat r = 1;
  i64 pos = 0;
  for (i64 g : gamma) {
    r *= rpow(Rat(g < 0 ? -g : g), g);
    if (g > 0) pos += g;
  }
  return pos % 2 ? Rat(-r) : r;
}

i64 k_crit(const GammaVector &gamma, u64 p) {
  i64 k = 0;
  for (i64 g : gamma) k -= g * valuation(g, static_cast<i64>(p));
  return k;
}

GammaVector erase_gamma(const GammaVector &gamma, u64 p) {
  GammaVector out;
  for (i64 g : gamma) {
    while (g % static_cast<i64>(p) == 0) g /= static_cast<i64>(p);
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int erased_degree(const FamilyParameter &f, u64 p) {
  i64 a = 0, b = 0;
  for (i64 d : f.cyc.alpha_side)
    if (d % static_cast<i64>(p)) a += totient(d);
  for (i64 d : f.cyc.beta_side)
    if (d % static_cast<i64>(p)) b += totient(d);
  return static_cast<int>(std::max(a, b));
}

namespace {

// one evaluation of the Gauss-sum expansion at M digits; nullopt when the snap fails
template <class R>
std::optional<Int> gamma_form_attempt(const TraceRequest &req, u64 q, const std::map<u64, int> &z, int M, int shift) {
  using T = typename R::T;
  u64 p = req.p, qm1 = q - 1;
  int e = req.e;
  int z0 = z.at(1);
  PadicCore<R> ctx(p, M);
  const R &ring = ctx.ring();
  const R &ext = ctx.ext();
  std::vector<u64> sdig(qm1);
  std::vector<T> gp(qm1);
  std::vector<char> done(qm1, 0);
  Int inv_in;
  Int qm1_int = from_u64(qm1);
  Int extmod = ipow(from_u64(p), p == 2 ? M + 1 : M);
  mpz_invert(inv_in.get_mpz_t(), qm1_int.get_mpz_t(), extmod.get_mpz_t());
  T inv_qm1 = ext.reduce(inv_in);
  for (u64 a = 0; a < qm1; ++a) {
    if (done[a]) continue;
    // the product over i of Gamma_p(<p^i a/(q-1)>) is constant on the orbit of a under a -> pa
    u64 s = 0, x = a;
    while (x) s += x % p, x /= p;
    T g = ring.from(1);
    u64 k = a;
    for (int i = 0; i < e; ++i) {
      g = ring.mul(g, ctx.gamma_int(ext.mul(ext.from(k), inv_qm1)));
      k = static_cast<u64>((u128)k * p % qm1);
    }
    for (int i = 0; i < e; ++i) {
      sdig[k] = s;
      gp[k] = g;
      done[k] = 1;
      k = static_cast<u64>((u128)k * p % qm1);
    }
  }
  std::vector<T> negp(M + 1); // (-p)^k
  negp[0] = ring.from(1);
  for (int k = 1; k <= M; ++k) negp[k] = ring.mul(negp[k - 1], ring.neg(ring.from(p)));
  std::map<u64, T> pz;
  for (auto &[d, zd] : z) pz[d] = ctx.pow(ring.from(p), static_cast<u64>(e * zd));
  // Teichmuller lift of the argument, a p-adic unit
  Int arg_den_inv, arg_den = req.arg.get_den();
  Int modM = ipow(from_u64(p), M);
  mpz_invert(arg_den_inv.get_mpz_t(), arg_den.get_mpz_t(), modM.get_mpz_t());
  T wc = ctx.teichmuller(ring.mul(ring.reduce(req.arg.get_num()), ring.reduce(arg_den_inv)));
  T sum = ring.from(0), wpow = ring.from(1);
  for (u64 m = 0; m < qm1; ++m, wpow = ring.mul(wpow, wc)) {
    u64 S = 0;
    T term = ring.from(1);
    for (i64 g : req.gamma) {
      i64 gm = static_cast<i64>(((__int128)g * static_cast<__int128>(m)) % static_cast<__int128>(qm1));
      u64 a = static_cast<u64>(gm < 0 ? gm + static_cast<i64>(qm1) : gm);
      S += sdig[a];
      term = ring.mul(term, gp[a]);
    }
    if (S % (p - 1)) throw Error(ErrorKind::Consistency, "digit sum not divisible by p-1");
    u64 k = S / (p - 1);
    if (k >= static_cast<u64>(M)) continue;
    term = ring.mul(term, negp[k]);
    term = ring.mul(term, wpow);
    term = ring.mul(term, pz.at(qm1 / std::gcd(m, qm1)));
    sum = ring.add(sum, term);
  }
  Int full = ipow(from_u64(p), M + shift);
  Int V = ring.lift(sum) * ipow(from_u64(p), shift);
  Int den = ipow(from_u64(p), e * z0);
  if (V % den != 0) throw Error(ErrorKind::Consistency, "normalized sum not divisible by q^z0");
  V /= den;
  Int modN = full / den;
  Int one_minus_q = (1 - from_u64(q)) % modN;
  if (one_minus_q < 0) one_minus_q += modN;
  Int inv;
  mpz_invert(inv.get_mpz_t(), one_minus_q.get_mpz_t(), modN.get_mpz_t());
  V = symmetric_lift(V * inv, modN);
  if (abs(V) <= req.bound) return V;
  return std::nullopt;
}

} // namespace

Int gamma_form_trace(const TraceRequest &req) {
  u64 p = req.p;
  int e = req.e;
  u128 qq = 1;
  for (int i = 0; i < e; ++i) qq *= p;
  if (qq > kTraceMaxQ) throw Error(ErrorKind::Budget, "q = p^e exceeds the trace budget");
  u64 q = static_cast<u64>(qq), qm1 = q - 1;
  // cancelled multiplicity of Phi_d in the unreduction of gamma
  auto zmult = [&](u64 d) {
    int a = 0, b = 0;
    for (i64 g : req.gamma)
      if ((g < 0 ? -g : g) % static_cast<i64>(d) == 0) (g < 0 ? a : b)++;
    return std::min(a, b);
  };
  std::map<u64, int> z;
  for (i64 d : divisors(static_cast<i64>(qm1))) z[d] = zmult(d);
  int shift = e * (req.phi0 < 0 ? -req.phi0 : 0);
  if (req.phi0 > 0) throw Error(ErrorKind::InvalidArgument, "positive normalization offset");

  Int target = 2 * req.bound + 1;
  int nf = 1;
  while (ipow(from_u64(p), nf) <= target) ++nf;
  for (int attempt = 0; attempt < 2; ++attempt, nf *= 2) {
    int M = std::max(1, nf + e * z[1] - shift);
    auto V = fits_small(p, M) ? gamma_form_attempt<SmallRing>(req, q, z, M, shift)
                              : gamma_form_attempt<BigRing>(req, q, z, M, shift);
    if (V) return *V;
  }
  throw Error(ErrorKind::Precision, "trace did not snap within the Deligne bound");
}

Int trace(const FamilyParameter &f, const Rat &t, u64 p, int e) {
  if (t == 1 || prime_kind(f, t, from_u64(p)) != PrimeKind::Good)
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not good for this specialization");
  return trace_degenerate(f, t, p, e);
}

Int trace_degenerate(const FamilyParameter &f, const Rat &t, u64 p, int e) {
  if (prime_kind(f, t, from_u64(p)) == PrimeKind::Wild || valuation(t, from_u64(p)) != 0)
    throw Error(ErrorKind::BadPrime, "engine needs a p-unit t and p prime to gamma");
  auto hd = hodge_vector(f);
  TraceRequest req;
  req.gamma = f.gamma;
  req.phi0 = hd.phi0;
  req.arg = gamma_scale(f.gamma) * t;
  req.p = p;
  req.e = e;
  u128 q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  req.bound = deligne_bound(f.n, hd.w, static_cast<u64>(q));
  return gamma_form_trace(req);
}

Int trace_erased(const FamilyParameter &f, const Rat &t, u64 p, int e) {
  Int P = from_u64(p);
  if (prime_kind(f, t, P) != PrimeKind::Wild) throw Error(ErrorKind::BadPrime, "prime is not wild");
  i64 kc = k_crit(f.gamma, p);
  if (valuation(t, P) != kc)
    throw Error(ErrorKind::OffRamp, "ord_p(t) = " + std::to_string(valuation(t, P)) + ", k_crit = " + std::to_string(kc));
  int deg = erased_degree(f, p);
  if (deg == 0) throw Error(ErrorKind::OffRamp, "erased parameter is empty");
  auto hd = hodge_vector(f);
  TraceRequest req;
  req.gamma = erase_gamma(f.gamma, p);
  req.phi0 = hd.phi0;
  req.arg = gamma_scale(f.gamma) * t;
  if (valuation(req.arg, P) != 0) throw Error(ErrorKind::Consistency, "erased argument is not a unit");
  req.p = p;
  req.e = e;
  u128 q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  req.bound = deligne_bound(deg, hd.w, static_cast<u64>(q));
  return gamma_form_trace(req);
}

} // namespace hgm
