#include "hgm/ffield.hpp"

#include "hgm/error.hpp"

namespace hgm {

namespace {

// x * v mod f, digits of v are coefficients
std::vector<u64> times_x(const std::vector<u64> &v, const std::vector<u64> &f, u64 p) {
  int e = static_cast<int>(v.size());
  std::vector<u64> r(e, 0);
  u64 top = v[e - 1];
  for (int i = e - 1; i > 0; --i) r[i] = v[i - 1];
  for (int i = 0; i < e; ++i) r[i] = (r[i] + (p - f[i]) * top) % p;
  return r;
}

} // namespace

FiniteField::FiniteField(u64 p, int e) : p_(p), e_(e) {
  if (!is_prime(p) || e < 1) throw Error(ErrorKind::InvalidArgument, "field needs a prime and e >= 1");
  q_ = 1;
  for (int i = 0; i < e; ++i) {
    if (q_ > (1ULL << 26) / p) throw Error(ErrorKind::Budget, "field too large for table arithmetic");
    q_ *= p;
  }
  ppow_.assign(e + 1, 1);
  for (int i = 1; i <= e; ++i) ppow_[i] = ppow_[i - 1] * p;
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  auto encode = [&](const std::vector<u64> &v) {
    u64 x = 0;
    for (int i = e - 1; i >= 0; --i) x = x * p + v[i];
    return x;
  };
  // search monic f of degree e (constant term nonzero) with x primitive mod f
  std::vector<u64> f(e + 1, 0);
  f[e] = 1;
  for (u64 code = 1; code < q_; ++code) {
    u64 c = code;
    for (int i = 0; i < e; ++i) f[i] = c % p, c /= p;
    if (f[0] == 0) continue;
    std::vector<u64> v(e, 0);
    v[0] = 1;
    if (e == 1) {
      // prime field: find a primitive root g, "x" acts as multiplication by g = -f0
      u64 g = (p - f[0]) % p;
      u64 x = 1, k = 0;
      bool ok = true;
      do {
        exp_[k] = x;
        x = x * g % p;
        ++k;
        if (x == 1 && k < q_ - 1) ok = false;
      } while (ok && k < q_ - 1);
      if (!ok || x != 1) continue;
    } else {
      bool ok = true;
      for (u64 k = 0; k < q_ - 1; ++k) {
        u64 code_v = encode(v);
        if (k > 0 && code_v == 1) {
          ok = false;
          break;
        }
        exp_[k] = code_v;
        v = times_x(v, f, p);
      }
      if (!ok || encode(v) != 1) continue;
    }
    modulus_ = f;
    break;
  }
  if (modulus_.empty()) throw Error(ErrorKind::Consistency, "no primitive polynomial found");
  for (u64 k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
  tr_.assign(q_, 0);
  for (u64 a = 1; a < q_; ++a) {
    u64 s = 0, la = log_[a];
    for (int i = 0; i < e; ++i) s = add(s, exp_[static_cast<u64>((u128)la * ppow_[i] % (q_ - 1))]);
    if (s >= p) throw Error(ErrorKind::Consistency, "trace not in prime field");
    tr_[a] = s;
  }
}

u64 FiniteField::add(u64 a, u64 b) const {
  if (e_ == 1) {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 r = 0;
  for (int i = 0; i < e_; ++i) {
    u64 d = (a % p_ + b % p_) % p_;
    r += d * ppow_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

u64 FiniteField::sub(u64 a, u64 b) const {
  if (e_ == 1) return a >= b ? a - b : a + p_ - b;
  u64 r = 0;
  for (int i = 0; i < e_; ++i) {
    u64 d = (a % p_ + p_ - b % p_) % p_;
    r += d * ppow_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

u64 FiniteField::pow(u64 a, i64 k) const {
  if (a == 0) {
    if (k <= 0) throw Error(ErrorKind::InvalidArgument, "zero to nonpositive power");
    return 0;
  }
  i64 m = static_cast<i64>(q_ - 1);
  i64 r = static_cast<i64>((u128)log_[a] * static_cast<u64>(((k % m) + m) % m) % (q_ - 1));
  return exp_[r];
}

} // namespace hgm
