#include "hgm/numtheory.hpp"

#include "hgm/error.hpp"

#include <algorithm>
#include <numeric>

namespace hgm {

const char *error_kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse: return "parse error";
  case ErrorKind::ZeroEntry: return "zero entry";
  case ErrorKind::EmptySide: return "empty side";
  case ErrorKind::SumNonzero: return "gamma sum nonzero";
  case ErrorKind::GcdNotOne: return "gamma gcd not one";
  case ErrorKind::NotDisjoint: return "cyclotomic sides not disjoint";
  case ErrorKind::Unbalanced: return "unbalanced degrees";
  case ErrorKind::Degenerate: return "degenerate parameter";
  case ErrorKind::InvalidArgument: return "invalid argument";
  case ErrorKind::BadPrime: return "bad prime";
  case ErrorKind::NonSplit: return "non-split prime power";
  case ErrorKind::Precision: return "insufficient precision";
  case ErrorKind::Consistency: return "internal consistency";
  case ErrorKind::Budget: return "budget exceeded";
  case ErrorKind::MissingFactor: return "missing bad factor";
  case ErrorKind::FixtureMismatch: return "fixture mismatch";
  case ErrorKind::SignatureRequired: return "signature required";
  case ErrorKind::OffRamp: return "off ramp bottom";
  case ErrorKind::Io: return "io error";
  }
  return "error";
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; Int(p) * p <= n; ++p) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    out.emplace_back(p);
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    if (p > 10000000UL) throw Error(ErrorKind::Budget, "integer too large to factor");
  }
  if (n > 1) out.push_back(n);
  return out;
}

i64 totient(i64 n) {
  i64 r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

int mobius(i64 n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> d{1};
  for (auto [p, e] : factor(n)) {
    std::size_t sz = d.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) d.push_back(d[i] * pk);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 m) {
  i64 t = 0, nt = 1;
  u64 r = m, nr = a % m;
  // coefficients stay below m in absolute value, so i64 suffices for m < 2^63
  while (nr) {
    u64 q = r / nr;
    i64 tmp = t - static_cast<i64>(q) * nt;
    t = nt, nt = tmp;
    u64 rr = r - q * nr;
    r = nr, nr = rr;
  }
  if (r != 1) throw Error(ErrorKind::InvalidArgument, "not invertible");
  return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (u64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

i64 lcm64(i64 a, i64 b) { return std::lcm(a, b); }

int valuation(const Int &x, const Int &p) {
  if (x == 0) return kInfValuation;
  Int y = x;
  int v = 0;
  while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
    y /= p;
    ++v;
  }
  return v;
}

int valuation(const Rat &x, const Int &p) {
  if (x == 0) return kInfValuation;
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

u64 reduce_mod(const Int &x, u64 m) {
  Int r = x % Int(std::to_string(m));
  if (r < 0) r += Int(std::to_string(m));
  return std::stoull(r.get_str());
}

u64 reduce_mod(const Rat &x, u64 m) {
  u64 n = reduce_mod(x.get_num(), m), d = reduce_mod(x.get_den(), m);
  return mulmod(n, invmod(d, m), m);
}

Rat parse_rational(const std::string &s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto ok = [](const std::string &u) {
    std::size_t i = (!u.empty() && (u[0] == '-' || u[0] == '+')) ? 1 : 0;
    if (i >= u.size()) return false;
    for (; i < u.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string a = t.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok(a) || !ok(b)) throw Error(ErrorKind::Parse, "malformed rational '" + s + "'");
  if (a[0] == '+') a.erase(0, 1);
  if (b[0] == '+') b.erase(0, 1);
  Int num(a), den(b);
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  Rat r{num, den};
  r.canonicalize();
  return r;
}

std::string to_string(const Rat &x) { return x.get_str(); }
std::string to_string(const Int &x) { return x.get_str(); }

Int ipow(const Int &b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat &b, long e) {
  if (e >= 0) return Rat(ipow(b.get_num(), e), ipow(b.get_den(), e));
  if (b == 0) throw Error(ErrorKind::InvalidArgument, "zero to negative power");
  Rat r(ipow(b.get_den(), -e), ipow(b.get_num(), -e));
  r.canonicalize();
  return r;
}

std::pair<u64, int> prime_power(u64 q) {
  if (q < 2) return {0, 0};
  for (u64 p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    int e = 0;
    while (q % p == 0) q /= p, ++e;
    return q == 1 ? std::pair<u64, int>{p, e} : std::pair<u64, int>{0, 0};
  }
  return {q, 1};
}

} // namespace hgm
