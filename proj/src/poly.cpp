#include "hgm/poly.hpp"

#include "hgm/error.hpp"
#include "hgm/matrix.hpp"

#include <map>
#include <mutex>

namespace hgm {

void trim(IntPoly &f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
void trim(RatPoly &f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly poly_mul(const IntPoly &a, const IntPoly &b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

IntPoly poly_add(const IntPoly &a, const IntPoly &b) {
  IntPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  trim(c);
  return c;
}

IntPoly poly_divexact(const IntPoly &a, const IntPoly &b) {
  IntPoly r = a, bb = b;
  trim(r);
  trim(bb);
  if (bb.empty()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  if (r.size() < bb.size()) {
    if (r.empty()) return {};
    throw Error(ErrorKind::Consistency, "inexact polynomial division");
  }
  IntPoly q(r.size() - bb.size() + 1, 0);
  const Int &lead = bb.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Int &top = r[i + bb.size() - 1];
    if (top % lead != 0) throw Error(ErrorKind::Consistency, "inexact polynomial division");
    q[i] = top / lead;
    for (std::size_t j = 0; j < bb.size(); ++j) r[i + j] -= q[i] * bb[j];
  }
  trim(r);
  if (!r.empty()) throw Error(ErrorKind::Consistency, "inexact polynomial division");
  trim(q);
  return q;
}

RatPoly to_rat(const IntPoly &f) {
  RatPoly g;
  for (auto &c : f) g.emplace_back(c);
  return g;
}

bool to_int(const RatPoly &f, IntPoly &out) {
  out.clear();
  for (auto &c : f) {
    if (c.get_den() != 1) return false;
    out.push_back(c.get_num());
  }
  return true;
}

const IntPoly &cyclotomic(i64 d) {
  static std::map<i64, IntPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  // Phi_d = prod_{e | d} (x^e - 1)^{mu(d/e)}
  IntPoly num{1}, den{1};
  for (i64 e : divisors(d)) {
    int m = mobius(d / e);
    if (!m) continue;
    IntPoly psi(e + 1, 0);
    psi[0] = -1;
    psi[e] = 1;
    if (m > 0) num = poly_mul(num, psi);
    else den = poly_mul(den, psi);
  }
  return cache.emplace(d, poly_divexact(num, den)).first->second;
}

IntPoly cyclotomic_product(const std::vector<i64> &ds) {
  IntPoly f{1};
  for (i64 d : ds) f = poly_mul(f, cyclotomic(d));
  return f;
}

RatPoly rpoly_mul(const RatPoly &a, const RatPoly &b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

void rpoly_divmod(const RatPoly &a, const RatPoly &b, RatPoly &q, RatPoly &r) {
  RatPoly bb = b;
  trim(bb);
  if (bb.empty()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  r = a;
  trim(r);
  q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = r[i + bb.size() - 1] / bb.back();
    for (std::size_t j = 0; j < bb.size(); ++j) r[i + j] -= q[i] * bb[j];
  }
  trim(r);
  trim(q);
}

RatPoly rpoly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    rpoly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lc = a.back();
    for (auto &c : a) c /= lc;
  }
  return a;
}

RatPoly rpoly_derivative(const RatPoly &f) {
  RatPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Rat resultant(const RatPoly &f0, const RatPoly &g0) {
  RatPoly f = f0, g = g0;
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  std::size_t m = f.size() - 1, n = g.size() - 1;
  std::size_t N = m + n;
  if (N == 0) return 1;
  RatMatrix S(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) S(i, i + j) = f[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) S(n + i, i + j) = g[n - j];
  return determinant(S);
}

Rat discriminant(const RatPoly &f0) {
  RatPoly f = f0;
  trim(f);
  if (f.size() < 2) throw Error(ErrorKind::InvalidArgument, "discriminant of a constant");
  std::size_t n = f.size() - 1;
  Rat r = resultant(f, rpoly_derivative(f)) / f.back();
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

std::string poly_to_string(const IntPoly &f, const std::string &var) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Int c = f[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (i == 0 || c != 1) s += c.get_str();
    if (i > 0) {
      if (c != 1) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

} // namespace hgm
