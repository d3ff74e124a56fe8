#include "hgm/geometry.hpp"

#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace hgm {

namespace {

std::vector<Int> as_int(const GammaVector &g) {
  std::vector<Int> v;
  for (i64 x : g) v.emplace_back(static_cast<long>(x));
  return v;
}

void check_gamma(const GammaVector &g) {
  if (g.size() < 3) throw Error(ErrorKind::InvalidArgument, "toric model needs at least three entries");
  from_gamma(g); // validates
}

// x with x * A = b for A of full row rank (rows independent), over Q
std::vector<Rat> solve_rows(const IntMatrix &a, const std::vector<Int> &b) {
  std::size_t r = a.rows(), c = a.cols();
  // columns of A^T augmented with b
  RatMatrix m(c, r + 1);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) m(i, j) = a(j, i);
    m(i, r) = b[i];
  }
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < c; ++col) {
    std::size_t p = row;
    while (p < c && m(p, col) == 0) ++p;
    if (p == c) continue;
    for (std::size_t j = 0; j <= r; ++j) std::swap(m(p, j), m(row, j));
    Rat inv = 1 / m(row, col);
    for (std::size_t j = 0; j <= r; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < c; ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j <= r; ++j) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < c; ++i)
    if (m(i, r) != 0) throw Error(ErrorKind::Consistency, "inconsistent linear system");
  std::vector<Rat> x(r, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m(i, r);
  return x;
}

Int abs_det(IntMatrix a) {
  Int d = determinant(a);
  return d < 0 ? Int(-d) : d;
}

} // namespace

Rat toric_u_factor(const GammaVector &gamma) {
  Rat r = 1;
  for (i64 g : gamma) r *= rpow(Rat(g), g);
  return r;
}

ToricModel toric_model(const GammaVector &gamma) {
  check_gamma(gamma);
  std::size_t l = gamma.size();
  auto gv = as_int(gamma);
  IntMatrix K = integer_kernel(gv);
  auto c = solve_rows(K, std::vector<Int>(l, 1));
  std::vector<Int> ci;
  for (auto &x : c) {
    if (x.get_den() != 1) throw Error(ErrorKind::Consistency, "kernel basis is not saturated");
    ci.push_back(x.get_num());
  }
  IntMatrix WK = complete_to_basis(ci) * K;
  IntMatrix m(l - 2, l);
  for (std::size_t i = 0; i + 2 < l; ++i)
    for (std::size_t j = 0; j < l; ++j) m(i, j) = WK(i + 1, j);
  m = hermite_form(m);

  IntMatrix col(l, 1);
  for (std::size_t i = 0; i < l; ++i) col(i, 0) = gv[i];
  IntMatrix U;
  IntMatrix H = hermite_form(col, &U);
  std::vector<Int> k(l);
  for (std::size_t j = 0; j < l; ++j) k[j] = H(0, 0) < 0 ? Int(-U(0, j)) : U(0, j);
  // reduce against the kernel lattice in Hermite form
  for (std::size_t i = 0; i < K.rows(); ++i) {
    std::size_t pc = 0;
    while (pc < l && K(i, pc) == 0) ++pc;
    if (pc == l) continue;
    Int qt;
    mpz_fdiv_q(qt.get_mpz_t(), k[pc].get_mpz_t(), K(i, pc).get_mpz_t());
    for (std::size_t j = 0; j < l; ++j) k[j] -= qt * K(i, j);
  }
  ToricModel tm{gamma, m, k, toric_u_factor(gamma)};
  auto msg = validate(gamma, m, k);
  if (!msg.empty()) throw Error(ErrorKind::Consistency, "toric model: " + msg);
  return tm;
}

std::string validate(const GammaVector &gamma, const IntMatrix &m, const std::vector<Int> &k) {
  std::size_t l = gamma.size();
  if (m.cols() != l || k.size() != l) return "shape mismatch";
  if (m.rows() + 2 != l) return "m must have l-2 rows";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < l; ++j) s += m(i, j) * gamma[j];
    if (s != 0) return "m . gamma != 0";
  }
  Int s = 0;
  for (std::size_t j = 0; j < l; ++j) s += k[j] * gamma[j];
  if (s != 1) return "gamma . k != 1";
  auto inv = smith_invariants(m);
  if (inv.size() != m.rows()) return "m has dependent rows";
  for (auto &d : inv)
    if (d != 1) return "row span of m is not saturated";
  IntMatrix ext(m.rows() + 1, l);
  for (std::size_t j = 0; j < l; ++j) ext(0, j) = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < l; ++j) ext(i + 1, j) = m(i, j);
  if (rank(ext) != m.rows() + 1) return "all-ones vector lies in the row span of m";
  return {};
}

std::string ToricModel::equation() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (i) os << " + ";
    os << "u^" << k[i];
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, i) != 0) os << "*x" << r + 1 << "^" << m(r, i);
  }
  os << " = 0, u = " << u_factor.get_str() << "*t";
  return os.str();
}

BcmModel bcm_model(const GammaVector &gamma) {
  from_gamma(gamma);
  BcmModel b;
  b.gamma = gamma;
  for (i64 g : gamma) {
    b.lhs.push_back(g > 0 ? g : 0);
    b.rhs.push_back(g < 0 ? -g : 0);
    if (g > 0) b.degree += g;
  }
  b.u_factor = toric_u_factor(gamma);
  return b;
}

std::string BcmModel::equation() const {
  auto mono = [](const std::vector<i64> &e) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j]) {
        os << (any ? "*" : "") << "y" << j + 1 << (e[j] > 1 ? "^" + std::to_string(e[j]) : "");
        any = true;
      }
    return any ? os.str() : std::string("1");
  };
  std::ostringstream os;
  for (std::size_t j = 0; j < gamma.size(); ++j) os << (j ? " + " : "") << "y" << j + 1;
  os << " = 0; " << mono(lhs) << " = u*" << mono(rhs);
  return os.str();
}

PolytopeStats polytope_stats(const ToricModel &tm) {
  std::size_t l = tm.gamma.size(), d = tm.dim();
  PolytopeStats st;
  Int pos = 0, neg = 0;
  for (std::size_t j = 0; j < l; ++j) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < l; ++i)
      if (i != j) pts.push_back(i);
    IntMatrix a(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) a(r, c) = tm.m(r, pts[c + 1]) - tm.m(r, pts[0]);
    Int v = d ? abs_det(a) : Int(1);
    st.vols.push_back(v);
    (tm.gamma[j] > 0 ? pos : neg) += v;
  }
  if (pos != neg) throw Error(ErrorKind::Consistency, "triangulations disagree on total volume");
  st.total = pos;
  st.chi = d % 2 ? pos : Int(-pos); // (-1)^{d-1}
  if (d == 2) {
    using P = std::pair<Int, Int>;
    std::vector<P> p;
    for (std::size_t i = 0; i < l; ++i) p.emplace_back(tm.m(0, i), tm.m(1, i));
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    auto cross = [](const P &o, const P &a, const P &b) {
      return Int((a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first));
    };
    std::vector<P> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
      h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
      h[k++] = p[i];
    }
    h.resize(k - 1);
    Int area2 = 0, boundary = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const P &a = h[i], &b = h[(i + 1) % h.size()];
      area2 += a.first * b.second - a.second * b.first;
      Int dx = abs(b.first - a.first), dy = abs(b.second - a.second), g;
      mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
      boundary += g;
    }
    area2 = abs(area2);
    if (area2 != st.total) throw Error(ErrorKind::Consistency, "hull area differs from triangulation volume");
    st.genus = (area2 - boundary + 2) / 2;
    st.punctures = boundary;
  }
  return st;
}

std::vector<Splicing> splicings(const GammaVector &gamma) {
  from_gamma(gamma);
  std::size_t l = gamma.size();
  if (l > 24) throw Error(ErrorKind::Budget, "too many entries for subset enumeration");
  std::set<Splicing> out;
  for (u64 mask = 1; mask + 1 < (1ULL << l); ++mask) {
    if (!(mask & 1)) continue; // first entry fixes the unordered pair
    i64 s = 0;
    for (std::size_t j = 0; j < l; ++j)
      if (mask >> j & 1) s += gamma[j];
    if (s) continue;
    GammaVector a, b;
    for (std::size_t j = 0; j < l; ++j) (mask >> j & 1 ? a : b).push_back(gamma[j]);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (b < a) std::swap(a, b);
    out.emplace(a, b);
  }
  return {out.begin(), out.end()};
}

u64 count_points(const ToricModel &tm, const Rat &t, u64 q, int threads) {
  auto [p, e] = prime_power(q);
  if (!p) throw Error(ErrorKind::InvalidArgument, "q is not a prime power");
  if (q > kCountMaxQ) throw Error(ErrorKind::Budget, "q too large for brute-force counting");
  Int P(static_cast<unsigned long>(p));
  for (i64 g : tm.gamma)
    if (g % static_cast<i64>(p) == 0) throw Error(ErrorKind::BadPrime, "p divides gamma");
  if (valuation(t, P) != 0 || valuation(Rat(t - 1), P) != 0) throw Error(ErrorKind::BadPrime, "p is bad for t");
  std::size_t d = tm.dim(), l = tm.gamma.size();
  u64 qm1 = q - 1;
  u128 total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= qm1;
    if (total > kCountBudget) throw Error(ErrorKind::Budget, "enumeration exceeds budget");
  }
  FiniteField ff(p, static_cast<int>(e));
  u64 lu = ff.log(ff.from_rat(tm.u(t)));
  std::vector<u64> base(l);
  std::vector<std::vector<u64>> coef(d, std::vector<u64>(l));
  for (std::size_t i = 0; i < l; ++i) base[i] = reduce_mod(Int(tm.k[i] * Int(static_cast<unsigned long>(lu))), qm1);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < l; ++i) coef[r][i] = reduce_mod(tm.m(r, i), qm1);

  u64 n = static_cast<u64>(total);
  u64 outer = d ? qm1 : 1;
  std::atomic<u64> next{0}, count{0};
  auto worker = [&]() {
    std::vector<u64> ex(d), lg(l);
    u64 local = 0;
    for (u64 x0; (x0 = next++) < outer;) {
      u64 inner = n / outer;
      std::fill(ex.begin(), ex.end(), 0);
      if (d) ex[0] = x0;
      for (u64 it = 0; it < inner; ++it) {
        for (std::size_t i = 0; i < l; ++i) {
          u128 s = base[i];
          for (std::size_t r = 0; r < d; ++r) s += (u128)coef[r][i] * ex[r];
          lg[i] = static_cast<u64>(s % qm1);
        }
        u64 acc = 0;
        for (std::size_t i = 0; i < l; ++i) acc = ff.add(acc, ff.exp(lg[i]));
        if (acc == 0) ++local;
        for (std::size_t r = 1; r < d; ++r) {
          if (++ex[r] < qm1) break;
          ex[r] = 0;
        }
      }
    }
    count += local;
  };
  int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto &th : pool) th.join();
  return count;
}

u64 count_points(const GammaVector &gamma, const Rat &t, u64 q, int threads) {
  return count_points(toric_model(gamma), t, q, threads);
}

i64 elliptic_ap(const Rat &t, u64 p) {
  Int P(static_cast<unsigned long>(p));
  if (p < 3 || !is_prime(p)) throw Error(ErrorKind::BadPrime, "p must be an odd prime");
  if (valuation(t, P) != 0 || valuation(Rat(t - 1), P) != 0) throw Error(ErrorKind::BadPrime, "p is bad for t");
  u64 tt = reduce_mod(t, p);
  i64 s = 0;
  for (u64 x = 0; x < p; ++x) {
    u64 v = mulmod(mulmod(x, (1 + p - x) % p, p), (x + p - tt) % p, p);
    if (v) s += powmod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
  }
  return -s;
}

TrinomialModel trinomial_model(i64 a, i64 b) {
  if (a < 1 || b < 1 || std::gcd(a, b) != 1) throw Error(ErrorKind::InvalidArgument, "need coprime positive a, b");
  TrinomialModel tm;
  tm.a = a;
  tm.b = b;
  tm.s = (a + b) % 2 == 0 ? 1 : -1;
  // ej (a+b) - ei b - ek a = -1 with ej >= 1 minimal, then ei minimal
  for (i64 j = 1;; ++j)
    for (i64 i = 0; i <= a; ++i) {
      i64 r = j * (a + b) - i * b + 1;
      if (r >= 0 && r % a == 0) {
        tm.ej = static_cast<int>(j);
        tm.ei = static_cast<int>(i);
        tm.ek = static_cast<int>(r / a);
        return tm;
      }
    }
}

RatPoly TrinomialModel::bcm(const Rat &t) const {
  RatPoly f{1};
  for (i64 i = 0; i < a; ++i) f = rpoly_mul(f, RatPoly{0, 1});
  for (i64 i = 0; i < b; ++i) f = rpoly_mul(f, RatPoly{1, -1});
  Rat c = rpow(Rat(a), a) * rpow(Rat(b), b) / rpow(Rat(a + b), a + b) * t;
  f[0] -= c;
  trim(f);
  return f;
}

RatPoly TrinomialModel::toric(const Rat &t) const {
  RatPoly f(a + b + 1, Rat(0));
  f[a + b] = Rat(b) * rpow(t, ei);
  f[b] = Rat(s * (a + b)) * rpow(t, ej);
  f[0] = Rat(a) * rpow(t, ek);
  return f;
}

std::string TrinomialModel::toric_string() const {
  auto tp = [](int e) { return e == 0 ? std::string() : e == 1 ? std::string("t") : "t^" + std::to_string(e); };
  std::ostringstream os;
  os << b << tp(ei) << "x^" << a + b << (s > 0 ? " + " : " - ") << a + b << tp(ej) << "x^" << b << " + " << a << tp(ek);
  return os.str();
}

u64 root_count(const RatPoly &f, u64 q) {
  auto [p, e] = prime_power(q);
  if (!p) throw Error(ErrorKind::InvalidArgument, "q is not a prime power");
  if (q > (1ULL << 20)) throw Error(ErrorKind::Budget, "q too large");
  FiniteField ff(p, static_cast<int>(e));
  std::vector<u64> c;
  for (auto &x : f) c.push_back(ff.from_rat(x));
  u64 n = 0;
  for (u64 x = 0; x < q; ++x) {
    u64 acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = ff.add(ff.mul(acc, x), c[i]);
    if (acc == 0) ++n;
  }
  return n;
}

i64 discriminant_valuation(const RatPoly &f, const Int &p) { return valuation(discriminant(f), p); }

i64 algebra_discriminant_valuation(const RatPoly &f0, const Int &p) {
  RatPoly f = f0;
  trim(f);
  std::size_t n = f.size() - 1;
  // lower convex hull of (i, ord_p f_i)
  std::vector<std::pair<i64, i64>> pts;
  for (std::size_t i = 0; i <= n; ++i)
    if (f[i] != 0) pts.emplace_back(static_cast<i64>(i), valuation(f[i], p));
  if (pts.front().first != 0) throw Error(ErrorKind::InvalidArgument, "polynomial vanishes at zero");
  std::vector<std::pair<i64, i64>> hull;
  for (auto &pt : pts) {
    while (hull.size() >= 2) {
      auto &a = hull[hull.size() - 2], &b = hull.back();
      // drop b if it lies on or above segment a -> pt
      if ((b.second - a.second) * (pt.first - a.first) >= (pt.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  i64 total = 0;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    i64 L = hull[i + 1].first - hull[i].first, H = hull[i + 1].second - hull[i].second;
    if (H == 0) {
      if (hull.size() != 2) throw Error(ErrorKind::InvalidArgument, "mixed flat segment not supported");
      RatPoly u = f;
      for (auto &c : u) c /= rpow(Rat(p), hull[0].second);
      return discriminant_valuation(u, p) % 2;
    }
    i64 e = L / std::gcd(L, H < 0 ? -H : H);
    if (Int(e) % p == 0) throw Error(ErrorKind::InvalidArgument, "wild Newton segment");
    total += L - L / e;
  }
  return total;
}

} // namespace hgm
