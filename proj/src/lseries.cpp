#include "hgm/lseries.hpp"

#include "hgm/error.hpp"
#include "hgm/monodromy.hpp"
#include "hgm/poly.hpp"

#include "json.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace hgm {

using json = nlohmann::json;

const char *provenance_name(Provenance p) {
  switch (p) {
  case Provenance::Computed: return "computed";
  case Provenance::ErasedPartial: return "erased-partial";
  case Provenance::Fixture: return "fixture";
  case Provenance::Degeneration: return "degeneration";
  }
  return "?";
}

Provenance parse_provenance(const std::string &s) {
  for (auto p : {Provenance::Computed, Provenance::ErasedPartial, Provenance::Fixture, Provenance::Degeneration})
    if (s == provenance_name(p)) return p;
  throw Error(ErrorKind::Parse, "unknown provenance '" + s + "'");
}

const char *exactness_name(Exactness e) {
  switch (e) {
  case Exactness::Exact: return "exact";
  case Exactness::Conjectural: return "conjectural";
  case Exactness::BoundOnly: return "bound-only";
  case Exactness::Fixture: return "fixture";
  case Exactness::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Int from_u64(u64 x) { return Int(std::to_string(x)); }

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

std::string join_coeffs(const IntPoly &f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + f[i].get_str();
  return s;
}

IntPoly parse_coeffs(const std::string &s) {
  IntPoly f;
  if (s.empty()) return f;
  for (auto &x : split(s, ',')) f.emplace_back(x);
  return f;
}

// run body(i) for i in [0, n) on up to `threads` workers; rethrows the first failure
template <class F> void parallel_for(std::size_t n, int threads, F body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto worker = [&]() {
    for (std::size_t i; (i = next++) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::max(1, threads) && static_cast<std::size_t>(i) < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

} // namespace

// ---------------------------------------------------------------- cache

Cache::Cache(std::string path) : path_(std::move(path)) { load(); }

void Cache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, '|');
    try {
      if (f.size() == 5) {
        traces_[f[0] + "|" + f[1] + "|" + f[2] + "|" + f[3]] = Int(f[4]);
      } else if (f.size() == 6) {
        FactorRecord r{parse_coeffs(f[3]), std::nullopt, parse_provenance(f[5])};
        if (f[4] != "?") r.c_p = std::stoi(f[4]);
        factors_[f[0] + "|" + f[1] + "|" + f[2]] = r;
      } else
        throw Error(ErrorKind::Io, "bad field count");
    } catch (const std::exception &e) {
      throw Error(ErrorKind::Io, path_ + ":" + std::to_string(lineno) + ": malformed cache record");
    }
  }
}

void Cache::append(const std::string &line) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorKind::Io, "cannot write cache " + path_);
  out << line << '\n';
}

std::optional<Int> Cache::trace(const std::string &param, const Rat &t, u64 p, int e) const {
  std::lock_guard<std::mutex> g(mu_);
  auto it = traces_.find(param + "|" + t.get_str() + "|" + std::to_string(p) + "|" + std::to_string(e));
  if (it == traces_.end()) return std::nullopt;
  return it->second;
}

void Cache::put_trace(const std::string &param, const Rat &t, u64 p, int e, const Int &v) {
  std::lock_guard<std::mutex> g(mu_);
  std::string key = param + "|" + t.get_str() + "|" + std::to_string(p) + "|" + std::to_string(e);
  auto it = traces_.find(key);
  if (it != traces_.end()) {
    if (it->second != v) throw Error(ErrorKind::Consistency, "cache conflict at " + key);
    return;
  }
  traces_[key] = v;
  append(key + "|" + v.get_str());
}

std::optional<Cache::FactorRecord> Cache::factor(const std::string &param, const Rat &t, u64 p) const {
  std::lock_guard<std::mutex> g(mu_);
  auto it = factors_.find(param + "|" + t.get_str() + "|" + std::to_string(p));
  if (it == factors_.end()) return std::nullopt;
  return it->second;
}

void Cache::put_factor(const std::string &param, const Rat &t, u64 p, const FactorRecord &rec) {
  std::lock_guard<std::mutex> g(mu_);
  std::string key = param + "|" + t.get_str() + "|" + std::to_string(p);
  auto it = factors_.find(key);
  if (it != factors_.end()) {
    if (it->second.poly != rec.poly || it->second.c_p != rec.c_p)
      throw Error(ErrorKind::Consistency, "cache conflict at " + key);
    return;
  }
  factors_[key] = rec;
  append(key + "|" + join_coeffs(rec.poly) + "|" + (rec.c_p ? std::to_string(*rec.c_p) : "?") + "|" +
         provenance_name(rec.provenance));
}

std::size_t Cache::size() const {
  std::lock_guard<std::mutex> g(mu_);
  return traces_.size() + factors_.size();
}

std::size_t cache_compact(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read cache " + path);
  std::map<std::string, std::string> recs; // key -> full line
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split(line, '|');
    std::string key;
    if (f.size() == 5) key = "T|" + f[0] + "|" + f[1] + "|" + f[2] + "|" + f[3];
    else if (f.size() == 6) key = "F|" + f[0] + "|" + f[1] + "|" + f[2];
    else throw Error(ErrorKind::Io, path + ":" + std::to_string(lineno) + ": malformed cache record");
    auto it = recs.find(key);
    if (it != recs.end() && it->second != line)
      throw Error(ErrorKind::Consistency, path + ":" + std::to_string(lineno) + ": conflicting record");
    recs[key] = line;
  }
  in.close();
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
    for (auto &[k, l] : recs) out << l << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorKind::Io, "cannot replace " + path);
  return recs.size();
}

Int cached_trace(const FamilyParameter &f, const Rat &t, u64 p, int e, const LContext &ctx) {
  if (ctx.cache)
    if (auto v = ctx.cache->trace(f.key(), t, p, e)) return *v;
  Int v = trace(f, t, p, e);
  if (ctx.cache) ctx.cache->put_trace(f.key(), t, p, e, v);
  return v;
}

// ---------------------------------------------------------------- Frobenius polynomials

IntPoly poly_from_traces(const std::vector<Int> &c, int degree) {
  if (static_cast<int>(c.size()) < degree) throw Error(ErrorKind::InvalidArgument, "not enough traces");
  std::vector<Int> a{1};
  for (int k = 1; k <= degree; ++k) {
    Int s = 0;
    for (int i = 1; i <= k; ++i) s += c[i - 1] * a[k - i];
    if (s % k != 0) throw Error(ErrorKind::Consistency, "traces do not give an integral polynomial");
    a.push_back(-s / k);
  }
  return a;
}

std::vector<Int> traces_from_poly(const IntPoly &f, int count) {
  if (f.empty() || f[0] != 1) throw Error(ErrorKind::InvalidArgument, "constant term must be 1");
  auto a = [&](int k) { return k < static_cast<int>(f.size()) ? f[k] : Int(0); };
  std::vector<Int> c;
  for (int k = 1; k <= count; ++k) {
    Int s = -k * a(k);
    for (int i = 1; i < k; ++i) s -= c[i - 1] * a(k - i);
    c.push_back(s);
  }
  return c;
}

IntPoly assemble_frobenius(int n, int w, u64 p, const std::function<Int(int)> &trace_at, int *eps_out) {
  if (w % 2 && n % 2) throw Error(ErrorKind::Consistency, "odd weight needs even rank");
  Int P = from_u64(p);
  auto scale = [&](int e) { // p^{(n-2e)w/2}, e <= n/2
    return ipow(P, (n - 2 * e) * w / 2);
  };
  int h = n / 2;
  std::vector<Int> c;
  for (int e = 1; e <= h; ++e) c.push_back(trace_at(e));
  IntPoly a = poly_from_traces(c, h);
  int eps = 1;
  if (w % 2 == 0) {
    // a_{n/2} = eps a_{n/2} already forces eps = 1 when the middle coefficient is nonzero
    bool pinned = n % 2 == 0 && a[h] != 0;
    for (int e = h + 1; e <= n && !pinned; ++e) {
      c.push_back(trace_at(e));
      a = poly_from_traces(c, e);
      // a_e = eps a_{n-e} p^{(2e-n)w/2}
      Int base = a[n - e] * ipow(P, (2 * e - n) * w / 2);
      if (base == 0) {
        if (a[e] != 0) throw Error(ErrorKind::Consistency, "functional equation violated at a_" + std::to_string(e));
        continue;
      }
      if (a[e] == base) eps = 1;
      else if (a[e] == -base) eps = -1;
      else throw Error(ErrorKind::Consistency, "functional equation violated at a_" + std::to_string(e));
      pinned = true;
    }
    if (!pinned) throw Error(ErrorKind::Consistency, "sign of the functional equation undetermined");
  }
  IntPoly full(n + 1, 0);
  for (std::size_t e = 0; e < a.size(); ++e) full[e] = a[e];
  for (int e = 0; e <= h; ++e) {
    Int v = eps * a[e] * scale(e);
    if (n - e < static_cast<int>(a.size())) {
      if (full[n - e] != v) throw Error(ErrorKind::Consistency, "functional equation violated at a_" + std::to_string(n - e));
    } else
      full[n - e] = v;
  }
  if (eps_out) *eps_out = eps;
  return full;
}

std::string check_root_modulus(const IntPoly &f0, u64 p, int w, double tol) {
  RatPoly f = to_rat(f0);
  trim(f);
  if (f.size() <= 1) return {};
  RatPoly g = rpoly_gcd(f, rpoly_derivative(f));
  RatPoly sq = f, r;
  if (g.size() > 1) rpoly_divmod(f, g, sq, r);
  std::size_t d = sq.size() - 1;
  // x = y p^{-w/2}: the y-roots lie on the unit circle
  Eigen::Matrix<long double, Eigen::Dynamic, 1> coeff(d + 1);
  long double s = std::pow(static_cast<long double>(p), -static_cast<long double>(w) / 2);
  long double sk = 1;
  for (std::size_t k = 0; k <= d; ++k, sk *= s)
    coeff[k] = static_cast<long double>(sq[k].get_d()) * sk;
  long double lead = coeff[d];
  for (std::size_t k = 0; k <= d; ++k) coeff[k] /= lead;
  Eigen::PolynomialSolver<long double, Eigen::Dynamic> solver;
  solver.compute(coeff);
  for (std::size_t i = 0; i < d; ++i) {
    long double m = std::abs(solver.roots()[i]);
    if (std::fabs(static_cast<double>(m - 1)) > tol) {
      std::ostringstream os;
      os.precision(12);
      os << "root " << i << " has normalized modulus " << static_cast<double>(m);
      return os.str();
    }
  }
  return {};
}

NewtonHodgeResult newton_over_hodge_check(const IntPoly &f, const HodgeData &h, u64 p) {
  NewtonHodgeResult r;
  std::vector<int> slopes;
  for (int i = 0; i <= h.w; ++i)
    for (int j = 0; j < h.h[i]; ++j) slopes.push_back(i);
  r.bounds.push_back(0);
  i64 acc = 0;
  for (std::size_t k = 1; k < f.size(); ++k) {
    if (k - 1 < slopes.size()) acc += slopes[k - 1];
    r.bounds.push_back(acc);
  }
  Int P = from_u64(p);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0) continue;
    i64 v = valuation(f[k], P);
    if (v < r.bounds[k]) {
      r.ok = false;
      r.failed_index = static_cast<int>(k);
      r.detail = "ord_p(a_" + std::to_string(k) + ") = " + std::to_string(v) + " < " + std::to_string(r.bounds[k]);
      return r;
    }
  }
  return r;
}

EulerFactor frobenius_poly(const FamilyParameter &f, const Rat &t, u64 p, const LContext &ctx) {
  if (t == 0) throw Error(ErrorKind::Degenerate, "t = 0 is a cusp");
  if (t == 1 || prime_kind(f, t, from_u64(p)) != PrimeKind::Good)
    throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not good");
  HodgeData h = hodge_vector(f);
  if (ctx.cache)
    if (auto rec = ctx.cache->factor(f.key(), t, p); rec && rec->provenance == Provenance::Computed && !rec->poly.empty())
      return EulerFactor{p, rec->poly, static_cast<int>(rec->poly.size()) - 1, Provenance::Computed};
  IntPoly poly = assemble_frobenius(f.n, h.w, p, [&](int e) { return cached_trace(f, t, p, e, ctx); });
  if (auto msg = check_root_modulus(poly, p, h.w); !msg.empty())
    throw Error(ErrorKind::Consistency, "Deligne bound violated: " + msg);
  if (auto nh = newton_over_hodge_check(poly, h, p); !nh.ok)
    throw Error(ErrorKind::Consistency, "Newton-over-Hodge violated: " + nh.detail);
  if (ctx.cache) ctx.cache->put_factor(f.key(), t, p, {poly, 0, Provenance::Computed});
  return EulerFactor{p, poly, f.n, Provenance::Computed};
}

// ---------------------------------------------------------------- fixtures

FixtureTable FixtureTable::builtin() {
  FixtureTable t;
  auto key = [](const char *s) { return parse_family(s).key(); };
  const std::string src = "published local data";
  t.add({key("[18];[2,2,12]"), Rat(1), 2, IntPoly{1, 2}, 6, src});
  t.add({key("[18];[2,2,12]"), Rat(1), 3, IntPoly{1}, 9, src});
  t.add({key("[1,1,1,1,1,1,1,1];[3,3,3,3]"), Rat(1), 3, std::nullopt, 9, src});
  t.add({key("[1,1,1,1,1,1,1,1,1,1,1];[2,2,2,2,2,2,2,2,2,4]"), Rat(1), 2, IntPoly{1, 32}, 11, src});
  t.add({key("[1,1,1,1,8,8];[2,2,2,2,4,4,4,4]"), Rat(1), 2, IntPoly{1, 4, 96, 512, 16384}, 18, src});
  return t;
}

void FixtureTable::add(const Fixture &f) {
  for (auto &x : items_)
    if (x.param == f.param && x.t == f.t && x.p == f.p) {
      if (x.poly != f.poly || x.c_p != f.c_p) throw Error(ErrorKind::FixtureMismatch, "conflicting fixtures for " + f.param);
      return;
    }
  items_.push_back(f);
}

void FixtureTable::load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read fixtures " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception &e) {
    throw Error(ErrorKind::Parse, "fixture file: " + std::string(e.what()));
  }
  if (!j.is_array()) throw Error(ErrorKind::Parse, "fixture file must hold a JSON array");
  for (auto &r : j) {
    Fixture f;
    f.param = parse_family(r.at("param").get<std::string>()).key();
    f.t = parse_rational(r.at("t").get<std::string>());
    f.p = r.at("p").get<u64>();
    if (r.contains("poly")) {
      IntPoly poly;
      for (auto &c : r["poly"]) poly.emplace_back(c.is_string() ? c.get<std::string>() : std::to_string(c.get<long long>()));
      f.poly = poly;
    }
    if (r.contains("c_p")) f.c_p = r["c_p"].get<int>();
    f.source = r.value("source", path);
    add(f);
  }
}

const Fixture *FixtureTable::find(const FamilyParameter &f, const Rat &t, u64 p) const {
  std::string k = f.key();
  for (auto &x : items_)
    if (x.param == k && x.t == t && x.p == p) return &x;
  return nullptr;
}

// ---------------------------------------------------------------- local data

Rat s_value(i64 d, u64 p) {
  if (d % static_cast<i64>(p)) return 1;
  return Rat(1 + valuation(d, static_cast<i64>(p))) + Rat(1, static_cast<long>(p - 1));
}

SigmaProfile sigma_profile(const FamilyParameter &f, u64 p, i64 k) {
  SigmaProfile s;
  Rat si = 0, s0 = 0;
  for (i64 d : f.cyc.alpha_side)
    for (i64 i = 0; i < totient(d); ++i) {
      s.s_alpha.push_back(s_value(d, p));
      si += s.s_alpha.back();
    }
  for (i64 d : f.cyc.beta_side)
    for (i64 i = 0; i < totient(d); ++i) {
      s.s_beta.push_back(s_value(d, p));
      s0 += s.s_beta.back();
    }
  if (si.get_den() != 1 || s0.get_den() != 1) throw Error(ErrorKind::Consistency, "non-integral sigma");
  s.sigma_inf = si.get_num();
  s.sigma_0 = s0.get_num();
  s.k = k;
  s.k_crit = k_crit(f.gamma, p);
  if (Int(static_cast<long>(s.k_crit)) != s.sigma_inf - s.sigma_0)
    throw Error(ErrorKind::Consistency, "k_crit disagrees with sigma_inf - sigma_0");
  s.k_inf = std::min<i64>(s.k_crit, 0);
  s.k_zero = std::max<i64>(s.k_crit, 0);
  if (k <= s.k_inf) s.sigma_k = s.sigma_inf;
  else if (k >= s.k_zero) s.sigma_k = s.sigma_0;
  else s.sigma_k = std::max(s.sigma_inf, s.sigma_0) - Int(static_cast<long>(k < 0 ? -k : k));
  return s;
}

namespace {

// traces of the degenerate fibre are only attempted while q stays small
constexpr u64 kDegenerationMaxQ = 1ULL << 22;

std::optional<IntPoly> degeneration_factor(const FamilyParameter &f, const Rat &t, u64 p, int target, int w,
                                           std::string &note) {
  int n = f.n;
  u128 q = 1;
  for (int e = 0; e < n; ++e) q *= p;
  if (q > kDegenerationMaxQ) {
    note = "degenerate fibre too large for trace evaluation";
    return std::nullopt;
  }
  std::vector<Int> c;
  for (int e = 1; e <= n; ++e) c.push_back(trace_degenerate(f, t, p, e));
  IntPoly P;
  try {
    P = poly_from_traces(c, n);
  } catch (const Error &) {
    note = "degenerate traces are not integral";
    return std::nullopt;
  }
  trim(P);
  Int Pp = from_u64(p);
  // drop eigenvalues +-p^j until the degree matches
  while (static_cast<int>(P.size()) - 1 > target) {
    bool found = false;
    for (int j = w + 1; j >= 0 && !found; --j)
      for (int sgn : {1, -1}) {
        Int lam = sgn * ipow(Pp, j);
        IntPoly lin{1, -lam};
        RatPoly qt, rm;
        rpoly_divmod(to_rat(P), to_rat(lin), qt, rm);
        trim(rm);
        IntPoly qi;
        if (rm.empty() && to_int(qt, qi)) {
          P = qi;
          found = true;
          break;
        }
      }
    if (!found) {
      note = "no eigenvalue of the form +-p^j to discard";
      return std::nullopt;
    }
  }
  if (static_cast<int>(P.size()) - 1 != target) {
    note = "degenerate factor has degree " + std::to_string(P.size() - 1);
    return std::nullopt;
  }
  return P;
}

} // namespace

LocalData tame_local(const FamilyParameter &f, const Rat &t, u64 p, const LContext &ctx) {
  (void)ctx;
  Int P = from_u64(p);
  if (t == 1 || prime_kind(f, t, P) != PrimeKind::Tame) throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not tame");
  LocalData ld;
  ld.p = p;
  ld.kind = PrimeKind::Tame;
  ld.exactness = Exactness::Exact;
  i64 k = valuation(t, P);
  i64 v1 = valuation(Rat(t - 1), P);
  HodgeData h = hodge_vector(f);
  if (v1 >= 1) {
    bool orth = classify(f) == Classification::Orthogonal;
    ld.c_p = orth && v1 % 2 == 0 ? 0 : 1;
    ld.factor.p = p;
    ld.factor.degree = f.n - *ld.c_p;
    std::string note;
    if (auto poly = degeneration_factor(f, t, p, ld.factor.degree, h.w, note)) {
      ld.factor.poly = *poly;
      ld.factor.provenance = Provenance::Degeneration;
    } else {
      ld.factor.provenance = Provenance::ErasedPartial;
      ld.note = note;
    }
  } else {
    ld.c_p = drop_rank(f, k < 0 ? Cusp::Infinity : Cusp::Zero, k < 0 ? -k : k);
    ld.factor = EulerFactor{p, {}, f.n - *ld.c_p, Provenance::ErasedPartial};
    ld.note = "factor degree only";
    if (ld.factor.degree == 0) ld.factor.poly = IntPoly{1};
  }
  return ld;
}

LocalData wild_local(const FamilyParameter &f, const Rat &t, u64 p, const Fixture *fx, const LContext &ctx) {
  (void)ctx;
  Int P = from_u64(p);
  if (prime_kind(f, t, P) != PrimeKind::Wild) throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not wild");
  LocalData ld;
  ld.p = p;
  ld.kind = PrimeKind::Wild;
  i64 k = t == 0 ? 0 : valuation(t, P);
  ld.sigma = sigma_profile(f, p, k);
  const SigmaProfile &sp = *ld.sigma;
  bool degenerate = t == 1 || valuation(Rat(t - 1), P) >= 1;
  ld.factor.p = p;
  if (k == sp.k_crit) {
    int deg = erased_degree(f, p);
    if (deg > 0) {
      std::vector<Int> c;
      for (int e = 1; e <= deg; ++e) c.push_back(trace_erased(f, t, p, e));
      ld.factor.poly = poly_from_traces(c, deg);
    } else
      ld.factor.poly = IntPoly{1};
    ld.factor.degree = deg;
    ld.factor.provenance = Provenance::ErasedPartial;
    ld.note = "erased factor at the bottom of the ramp";
  } else {
    i64 kk = k - sp.k_crit;
    ld.factor.degree = f.n - drop_rank(f, kk < 0 ? Cusp::Infinity : Cusp::Zero, kk < 0 ? -kk : kk);
    ld.factor.provenance = Provenance::ErasedPartial;
    if (ld.factor.degree == 0) ld.factor.poly = IntPoly{1};
    ld.note = "factor degree from the shifted tame rule";
  }
  if (fx) {
    if (fx->poly) {
      if (ld.factor.known() && *fx->poly != ld.factor.poly) {
        // off the degenerate fibre the erased factor is authoritative
        if (!degenerate)
          throw Error(ErrorKind::FixtureMismatch, "computed factor disagrees with fixture at p = " + std::to_string(p));
        ld.note += "; fixture replaces the erased factor " + poly_to_string(ld.factor.poly);
      }
      ld.factor.poly = *fx->poly;
      ld.factor.degree = static_cast<int>(fx->poly->size()) - 1;
      ld.factor.provenance = Provenance::Fixture;
    }
    if (fx->c_p) {
      ld.c_p = fx->c_p;
      ld.exactness = Exactness::Fixture;
      return ld;
    }
  }
  if (degenerate) {
    ld.exactness = Exactness::Unknown;
    ld.note += "; p divides t - 1, conductor exponent needs a fixture";
    return ld;
  }
  Int bound = sp.sigma_k - ld.factor.degree;
  if (bound < 0) throw Error(ErrorKind::Consistency, "negative ramp bound");
  ld.c_p = static_cast<int>(bound.get_si());
  if (bound == 0) ld.exactness = Exactness::Exact;
  else if (std::gcd(k < 0 ? -k : k, static_cast<i64>(p)) == 1) ld.exactness = Exactness::Conjectural;
  else ld.exactness = Exactness::BoundOnly;
  return ld;
}

LocalData local_data(const FamilyParameter &f, const Rat &t, u64 p, const FixtureTable &fxt, const LContext &ctx) {
  if (t == 0) throw Error(ErrorKind::Degenerate, "t = 0 is a cusp");
  Int P = from_u64(p);
  const Fixture *fx = fxt.find(f, t, p);
  PrimeKind kind = prime_kind(f, t, P);
  if (kind == PrimeKind::Wild) return wild_local(f, t, p, fx, ctx);
  LocalData ld;
  if (kind == PrimeKind::Tame && t != 1) ld = tame_local(f, t, p, ctx);
  else if (t == 1 && kind != PrimeKind::Wild && !fx) {
    // t = 1 at a prime not dividing gamma: the conifold rule with ord_p(t - 1) infinite
    throw Error(ErrorKind::BadPrime, "t = 1 needs a fixture at p = " + std::to_string(p));
  } else {
    ld.p = p;
    ld.kind = PrimeKind::Good;
    ld.c_p = 0;
    ld.factor = frobenius_poly(f, t, p, ctx);
  }
  if (fx) {
    if (fx->c_p && ld.c_p && *fx->c_p != *ld.c_p)
      throw Error(ErrorKind::FixtureMismatch, "conductor exponent disagrees with fixture at p = " + std::to_string(p));
    if (fx->poly && ld.factor.known() && *fx->poly != ld.factor.poly)
      throw Error(ErrorKind::FixtureMismatch, "Euler factor disagrees with fixture at p = " + std::to_string(p));
    if (fx->poly) ld.factor = EulerFactor{p, *fx->poly, static_cast<int>(fx->poly->size()) - 1, Provenance::Fixture};
    if (fx->c_p) ld.c_p = fx->c_p;
  }
  if (ld.c_p && *ld.c_p < f.n - ld.factor.degree)
    throw Error(ErrorKind::Consistency, "conductor exponent below n - degree");
  return ld;
}

ConductorResult conductor(const FamilyParameter &f, const Rat &t, const FixtureTable &fx, const LContext &ctx) {
  if (t == 0) throw Error(ErrorKind::Degenerate, "t = 0 is a cusp");
  ConductorResult r;
  auto primes = bad_primes(f, t);
  r.locals.resize(primes.size());
  parallel_for(primes.size(), ctx.threads, [&](std::size_t i) {
    r.locals[i] = local_data(f, t, primes[i].get_ui(), fx, ctx);
  });
  for (auto &ld : r.locals) {
    if (!ld.c_p) {
      r.exact = false;
      continue;
    }
    r.value *= ipow(from_u64(ld.p), *ld.c_p);
    if (ld.exactness == Exactness::Fixture || ld.factor.provenance == Provenance::Fixture) r.uses_fixtures = true;
    if (ld.exactness == Exactness::BoundOnly || ld.exactness == Exactness::Conjectural || ld.exactness == Exactness::Unknown)
      r.exact = false;
  }
  return r;
}

// ---------------------------------------------------------------- gamma factors

int GammaFactorSet::real_dimension() const {
  int d = 0;
  for (auto &g : factors) d += (g.kind == 'C' ? 2 : 1) * g.mult;
  return d;
}

GammaFactorSet gamma_factors(const HodgeData &h, std::optional<int> sigma) {
  GammaFactorSet gs;
  gs.w = h.w;
  int w = h.w;
  // h[i] = h^{w-i,i}; pairs (p, w-p) with p < w-p give Gamma_C(s - p)
  for (int pp = 0; 2 * pp < w; ++pp)
    if (h.h[pp] > 0) gs.factors.push_back({'C', Rat(-pp), h.h[pp]});
  if (w % 2 == 0) {
    int mid = h.h[w / 2];
    if (mid > 0) {
      if (!sigma) sigma = h.sigma;
      if (!sigma) {
        if (mid % 2) throw Error(ErrorKind::SignatureRequired, "odd central Hodge number needs a signature");
        // Gamma_R(s) Gamma_R(s+1) collapses to Gamma_C(s)
        gs.factors.push_back({'C', Rat(-w / 2), mid / 2});
      } else {
        int s = *sigma;
        if ((mid + s) % 2 || s > mid || -s > mid) throw Error(ErrorKind::InvalidArgument, "signature incompatible with Hodge numbers");
        int hp = (mid + s) / 2, hm = (mid - s) / 2;
        if (hp) gs.factors.push_back({'R', Rat(-w / 2), hp});
        if (hm) gs.factors.push_back({'R', Rat(-w / 2 + 1), hm});
      }
    }
  }
  return gs;
}

// ---------------------------------------------------------------- Dirichlet series

std::vector<Int> dirichlet_coefficients(const FamilyParameter &f, const Rat &t, u64 n_max, const FixtureTable &fx,
                                        const LContext &ctx) {
  if (n_max == 0) return {};
  if (n_max > (1ULL << 24)) throw Error(ErrorKind::Budget, "too many coefficients");
  auto primes = primes_up_to(n_max);
  std::set<Int> bad;
  for (auto &p : bad_primes(f, t)) bad.insert(p);
  // coefficients of 1/F_p(x) up to x^K with p^K <= n_max
  std::vector<std::vector<Int>> local(primes.size());
  parallel_for(primes.size(), ctx.threads, [&](std::size_t i) {
    u64 p = primes[i];
    int K = 0;
    for (u128 pk = p; pk <= n_max; pk *= p) ++K;
    std::vector<Int> b(K + 1, 0);
    b[0] = 1;
    if (!bad.count(from_u64(p))) {
      std::vector<Int> c;
      for (int e = 1; e <= K; ++e) c.push_back(cached_trace(f, t, p, e, ctx));
      for (int k = 1; k <= K; ++k) {
        Int s = 0;
        for (int j = 1; j <= k; ++j) s += c[j - 1] * b[k - j];
        b[k] = s / k;
      }
    } else {
      LocalData ld = local_data(f, t, p, fx, ctx);
      if (!ld.factor.known())
        throw Error(ErrorKind::MissingFactor, "no Euler factor at bad prime " + std::to_string(p));
      const IntPoly &F = ld.factor.poly;
      for (int k = 1; k <= K; ++k) {
        Int s = 0;
        for (int j = 1; j <= k && j < static_cast<int>(F.size()); ++j) s -= F[j] * b[k - j];
        b[k] = s;
      }
    }
    local[i] = b;
  });
  std::vector<Int> a(n_max + 1, 0);
  a[1] = 1;
  std::vector<u64> spf(n_max + 1, 0);
  for (u64 p : primes)
    for (u64 m = p; m <= n_max; m += p)
      if (!spf[m]) spf[m] = p;
  std::map<u64, std::size_t> idx;
  for (std::size_t i = 0; i < primes.size(); ++i) idx[primes[i]] = i;
  for (u64 m = 2; m <= n_max; ++m) {
    u64 p = spf[m], r = m;
    int k = 0;
    while (r % p == 0) r /= p, ++k;
    a[m] = a[r] * local[idx[p]][k];
  }
  return {a.begin() + 1, a.end()};
}

std::vector<SatoTateSample> sato_tate_samples(const FamilyParameter &f, const Rat &t, u64 p_max, const LContext &ctx) {
  HodgeData h = hodge_vector(f);
  std::set<Int> bad;
  for (auto &p : bad_primes(f, t)) bad.insert(p);
  std::vector<u64> ps;
  for (u64 p : primes_up_to(p_max))
    if (!bad.count(from_u64(p)) && t != 1) ps.push_back(p);
  std::vector<SatoTateSample> out(ps.size());
  parallel_for(ps.size(), ctx.threads, [&](std::size_t i) {
    Int a = cached_trace(f, t, ps[i], 1, ctx);
    double norm = a.get_d() / (std::pow(static_cast<double>(ps[i]), h.w / 2.0));
    out[i] = {ps[i], a, norm};
  });
  return out;
}

// ---------------------------------------------------------------- export

std::string export_json(const FamilyParameter &f, const Rat &t, u64 n_max, const FixtureTable &fx,
                        std::optional<int> sigma, const LContext &ctx) {
  HodgeData h = t == 1 ? hodge_vector_at_one(f) : hodge_vector(f);
  json j;
  j["schema"] = "hgm/1";
  j["param"] = f.key();
  j["cyclotomic"] = f.cyclotomic_string();
  j["t"] = t.get_str();
  j["weight"] = h.w;
  j["hodge"] = h.h;
  json gj = json::array();
  for (auto &g : gamma_factors(h, sigma).factors)
    gj.push_back({{"kind", std::string(1, g.kind)}, {"shift", g.shift.get_str()}, {"mult", g.mult}});
  j["gamma_factors"] = gj;
  auto cond = conductor(f, t, fx, ctx);
  j["conductor"] = {{"value", cond.value.get_str()}, {"exact", cond.exact}, {"uses_fixtures", cond.uses_fixtures}};
  json ef = json::array();
  std::set<u64> bad;
  for (auto &ld : cond.locals) {
    bad.insert(ld.p);
    json e{{"p", ld.p}, {"provenance", provenance_name(ld.factor.provenance)}, {"degree", ld.factor.degree}};
    json co = json::array();
    for (auto &c : ld.factor.poly) co.push_back(c.get_str());
    e["coeffs"] = ld.factor.known() ? co : json(nullptr);
    e["c_p"] = ld.c_p ? json(*ld.c_p) : json(nullptr);
    e["exactness"] = exactness_name(ld.exactness);
    ef.push_back(e);
  }
  auto primes = primes_up_to(std::min<u64>(n_max, 100));
  std::vector<json> good(primes.size());
  parallel_for(primes.size(), ctx.threads, [&](std::size_t i) {
    if (bad.count(primes[i]) || t == 1) return;
    auto F = frobenius_poly(f, t, primes[i], ctx);
    json co = json::array();
    for (auto &c : F.poly) co.push_back(c.get_str());
    good[i] = json{{"p", primes[i]}, {"provenance", "computed"}, {"degree", F.degree}, {"coeffs", co}};
  });
  for (auto &g : good)
    if (!g.is_null()) ef.push_back(g);
  std::sort(ef.begin(), ef.end(), [](const json &a, const json &b) { return a["p"].get<u64>() < b["p"].get<u64>(); });
  j["euler_factors"] = ef;
  json dj = json::array();
  if (cond.exact || true) {
    try {
      for (auto &a : dirichlet_coefficients(f, t, n_max, fx, ctx)) dj.push_back(a.get_str());
      j["dirichlet"] = dj;
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::MissingFactor) throw;
      j["dirichlet"] = nullptr;
      j["dirichlet_error"] = e.what();
    }
  }
  return j.dump(2);
}

} // namespace hgm
