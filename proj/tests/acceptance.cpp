// Acceptance runner: one PASS/FAIL line per criterion.
#include "hgm/arith.hpp"
#include "hgm/census.hpp"
#include "hgm/error.hpp"
#include "hgm/geometry.hpp"
#include "hgm/hodge.hpp"
#include "hgm/lseries.hpp"
#include "hgm/monodromy.hpp"
#include "hgm/poly.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace hgm;

namespace {

struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string &what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

IntPoly ints(std::initializer_list<long> xs) {
  IntPoly f;
  for (long x : xs) f.emplace_back(x);
  return f;
}

Int I(u64 x) { return Int(std::to_string(x)); }

std::string hs(const std::vector<int> &h) { return hodge_key(h); }

void c1(Criterion &c) {
  auto t0 = std::chrono::steady_clock::now();
  auto ex = hodge_vector(parse_family("[1,5];[2,3,4]"));
  c.expect(ex.h == std::vector<int>{1, 3, 1} && ex.phi0 == -1, "zigzag example (1,3,1)");
  c.expect(hodge_vector(parse_family("[-21,1,2,3,4,5,6]")).h == std::vector<int>{1, 2, 12, 2, 1}, "[-21,1,...,6]");
  const std::vector<std::vector<std::vector<int>>> rows = {
      {{1, 1}, {6}, {5, 5}},
      {{3, 3}, {1, 19, 1}, {30, 30}},
      {{6, 6}, {4, 44, 4}, {1, 101, 101, 1}},
      {{10, 10}, {10, 85, 10}, {5, 255, 255, 5}},
  };
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 3; ++k) {
      auto h = hodge_vector(from_gamma(hypersurface_gamma(d, k))).h;
      c.expect(h == rows[d - 3][k - 1], "hypersurface " + std::to_string(d) + "," + std::to_string(k) + " gave " + hs(h));
    }
  const std::vector<GammaVector> cubic = {
      {-33, -8, -2, 1, 4, 16, 22},   {-48, -15, -12, 5, 16, 24, 30}, {-36, -9, -4, 3, 8, 18, 20},
      {-48, -12, -3, 1, 6, 24, 32},  {-33, -16, -4, 2, 8, 11, 32},   {-48, -12, -3, 6, 16, 17, 24},
      {-33, -10, -7, 5, 11, 14, 20}, {-36, -16, -9, 3, 8, 18, 32},   {-33, -4, -1, 2, 8, 11, 17},
      {-36, -9, -8, 4, 15, 16, 18},  {-21, -20, -16, 7, 8, 10, 32}};
  for (auto &g : cubic) c.expect(hodge_vector(from_gamma(g)).h == std::vector<int>{1, 20, 1}, gamma_to_string(g));
  const std::vector<GammaVector> b22 = {{-60, -5, -4, -3, -2, 8, 9, 10, 12, 15, 20},
                                        {-66, -11, -6, -5, -4, -4, 1, 2, 8, 12, 18, 22, 33},
                                        {-60, -15, -9, -6, -4, -2, 3, 5, 8, 12, 18, 20, 30},
                                        {-33, -10, -6, -4, -4, -1, 2, 2, 5, 8, 11, 12, 18}};
  for (auto &g : b22) c.expect(hodge_vector(from_gamma(g)).h == std::vector<int>{1, 22, 1}, gamma_to_string(g));
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(s < 1.0, "runtime " + std::to_string(s) + " s");
}

void c2(Criterion &c) {
  auto m = mum_counts(12);
  c.expect(m.size() == 13, "length");
  std::vector<Int> head = {1, 1, 4, 4, 14, 14};
  for (int i = 0; i < 6; ++i) c.expect(m[i] == head[i], "c_" + std::to_string(i));
  for (int j = 0; 2 * j + 1 <= 12; ++j) c.expect(m[2 * j] == m[2 * j + 1], "c_2j = c_2j+1 at j = " + std::to_string(j));
  for (int n = 0; n <= 10; ++n) c.expect(m[n] == Int(std::to_string(mum_enumerate(n))), "enumeration at n = " + std::to_string(n));
}

void c3(Criterion &c) {
  auto t0 = std::chrono::steady_clock::now();
  Rat t(3, 2);
  auto q0 = parse_family("[1,2,8];[3,12]"), q1 = parse_family("[1,1,8];[3,12]"), q5 = parse_family("[1,1,1,1,1,1];[3,3,3]");
  c.expect(frobenius_poly(q0, t, 5).poly == ints({1, -1, 0, 0, 0, -1, 1}), "F5 q0");
  c.expect(frobenius_poly(q0, t, 7).poly == ints({1, 0, 0, 0, 0, 0, -1}), "F7 q0");
  auto head = [](const IntPoly &f) { return IntPoly(f.begin(), f.begin() + 4); };
  c.expect(head(frobenius_poly(q1, t, 5).poly) == ints({1, 1, 6, 16}), "F5 q1");
  c.expect(head(frobenius_poly(q1, t, 7).poly) == ints({1, -2, 12, -28}), "F7 q1");
  c.expect(head(frobenius_poly(q5, t, 5).poly) == ints({1, -9, 5 * 156, -125 * 2556}), "F5 q5");
  c.expect(head(frobenius_poly(q5, t, 7).poly) == ints({1, 12, 7 * 888, 343 * 1816}), "F7 q5");
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(s < 300, "runtime " + std::to_string(s) + " s");
}

void c4(Criterion &c) {
  auto leg = parse_family("[1,1];[2,2]");
  for (Rat t : {Rat(2), Rat(3), Rat(1, 2), Rat(-1)})
    for (u64 p : primes_up_to(97)) {
      if (prime_kind(leg, t, I(p)) != PrimeKind::Good) continue;
      c.expect(trace(leg, t, p, 1) == elliptic_ap(t, p), "Legendre t=" + t.get_str() + " p=" + std::to_string(p));
    }
  for (auto [a, b] : std::vector<std::pair<i64, i64>>{{1, 2}, {2, 3}, {3, 5}}) {
    auto f = from_gamma({-(a + b), a, b});
    auto model = trinomial_model(a, b);
    for (Rat t : {Rat(2), Rat(3), Rat(1, 2), Rat(-1)})
      for (u64 q = 2; q <= 343; ++q) {
        auto [p, e] = prime_power(q);
        if (p == 0 || prime_kind(f, t, I(p)) != PrimeKind::Good) continue;
        c.expect(trace(f, t, p, e) == Int(static_cast<long>(root_count(model.bcm(t), q))) - 1,
                 "trinomial " + std::to_string(a) + "," + std::to_string(b) + " q=" + std::to_string(q));
      }
  }
}

void c5(Criterion &c) {
  auto f = parse_family("[1,1,1,1,1];[2,2,2,2,2]");
  auto r = conductor(f, Rat(1024), FixtureTable{});
  c.expect(r.value == 1023, "N = " + r.value.get_str());
  c.expect(r.exact && !r.uses_fixtures, "fully computed");
  for (auto &ld : r.locals) {
    c.expect(ld.c_p.has_value(), "c_p known at " + std::to_string(ld.p));
    if (ld.p == 2) {
      c.expect(ld.factor.poly == poly_mul(ints({1, -4}), ints({1, 5, 10, 80, 256})), "F2");
      c.expect(ld.c_p == 0, "c2");
    } else {
      c.expect(ld.c_p == 1, "tame c_" + std::to_string(ld.p));
    }
  }
  std::vector<u64> ps;
  for (auto &ld : r.locals) ps.push_back(ld.p);
  c.expect(ps == std::vector<u64>{2, 3, 11, 31}, "bad primes");
  auto g = parse_family("[1,1,1,1,8,8];[2,2,2,2,4,4,4,4]");
  auto ld = wild_local(g, Rat(1), 2);
  c.expect(ld.factor.poly == ints({1, 4, 96, 512, 16384}), "erased factor " + poly_to_string(ld.factor.poly));
}

void c6(Criterion &c) {
  auto f = from_gamma({-8, 3, 5});
  auto model = trinomial_model(3, 5);
  for (u64 p : {7, 11, 13}) {
    Int P = I(p);
    for (int k = -3; k <= 3; ++k) {
      std::vector<Rat> ts;
      if (k == 0) ts = {Rat(1) + Rat(P), Rat(1) + Rat(P * P), Rat(1) - Rat(P * 2, 3), Rat(1) + Rat(P * P * P, 4)};
      else
        for (Rat u : {Rat(1), Rat(2, 5), Rat(-3), Rat(7, 4)}) ts.push_back(rpow(Rat(P), k) * u);
      for (auto &t : ts) {
        if (prime_kind(f, t, P) != PrimeKind::Tame) continue;
        auto ld = tame_local(f, t, p);
        i64 d = algebra_discriminant_valuation(model.toric(t), P);
        c.expect(ld.c_p == static_cast<int>(d), "p=" + std::to_string(p) + " t=" + t.get_str());
      }
    }
  }
}

void c7(Criterion &c) {
  auto fx = FixtureTable::builtin();
  auto a = conductor(parse_family("[18];[2,2,12]"), Rat(1), fx);
  c.expect(a.value == ipow(Int(2), 6) * ipow(Int(3), 9), "N = " + a.value.get_str());
  c.expect(a.uses_fixtures, "flagged as fixture");
  for (auto &ld : a.locals) {
    c.expect(ld.factor.provenance == Provenance::Fixture, "provenance at " + std::to_string(ld.p));
    if (ld.p == 2) c.expect(ld.factor.poly == ints({1, 2}), "F2");
    if (ld.p == 3) c.expect(ld.factor.poly == ints({1}), "F3");
  }
  auto b = conductor(parse_family("[1,1,1,1,1,1,1,1];[3,3,3,3]"), Rat(1), fx);
  c.expect(b.locals.size() == 1 && b.locals[0].c_p == 9, "c3 = 9");
  c.expect(b.uses_fixtures && b.locals[0].exactness == Exactness::Fixture, "flagged as fixture");
}

void c8(Criterion &c) {
  // zigzag palindromy and weight parity, rank <= 8
  for (int n = 1; n <= 8; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      auto f = from_cyclotomic({a, b});
      auto h = hodge_vector(f);
      std::vector<int> rev(h.h.rbegin(), h.h.rend());
      bool orth = classify(f) == Classification::Orthogonal;
      c.expect(rev == h.h && h.rank() == n, "palindromy " + f.key());
      c.expect((h.w % 2 == 1) == (f.q_at_zero == 1), "parity " + f.key());
      c.expect(orth == (h.w % 2 == 0), "classification " + f.key());
    });
  // Levelt invariants, rank <= 10
  for (int n = 1; n <= 10; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      auto f = from_cyclotomic({a, b});
      auto msg = check_levelt(f, levelt(f));
      c.expect(msg.empty(), "Levelt " + f.key() + ": " + msg);
    });
  // every computed factor satisfies Deligne and Newton-over-Hodge (frobenius_poly asserts both)
  for (const char *s : {"[1,2,8];[3,12]", "[1,1,8];[3,12]", "[1,1,1,1,1,1];[3,3,3]", "[1,5];[2,3,4]", "[1,1,1,1];[4,4]"}) {
    auto f = parse_family(s);
    auto h = hodge_vector(f);
    for (u64 p : primes_up_to(30)) {
      if (prime_kind(f, Rat(3, 2), I(p)) != PrimeKind::Good) continue;
      try {
        auto F = frobenius_poly(f, Rat(3, 2), p);
        c.expect(check_root_modulus(F.poly, p, h.w).empty(), std::string("root modulus ") + s);
        c.expect(newton_over_hodge_check(F.poly, h, p).ok, std::string("Newton ") + s);
      } catch (const Error &e) {
        // a factor beyond the trace budget is not computed, so there is nothing to check
        if (e.kind() == ErrorKind::Budget) continue;
        c.expect(false, std::string(s) + " p=" + std::to_string(p) + ": " + e.what());
      }
    }
  }
  // character-choice independence
  auto q5 = parse_family("[1,1,1,1,1,1];[3,3,3]");
  Int ref = trace_split(q5, Rat(3, 2), 13);
  for (u64 s : {1, 5, 7, 11})
    for (u64 b : {1, 2, 6}) c.expect(trace_split(q5, Rat(3, 2), CharacterTable(13, 1, s, b)) == ref, "choice independence");
  // round trip on random palindromic polynomials
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    int w = 1 + 2 * static_cast<int>(rng() % 3);
    int n = 2 * (1 + static_cast<int>(rng() % 4));
    u64 p = std::vector<u64>{3, 5, 7, 11}[rng() % 4];
    IntPoly f(n + 1, 0);
    f[0] = 1;
    for (int e = 1; e <= n / 2; ++e) f[e] = Int(static_cast<long>(rng() % 61) - 30);
    for (int e = 0; e < n / 2; ++e) f[n - e] = f[e] * ipow(I(p), (n - 2 * e) * w / 2);
    auto tr = traces_from_poly(f, n);
    c.expect(assemble_frobenius(n, w, p, [&](int e) { return tr[e - 1]; }) == f, "round trip");
  }
  // mod-2 congruence across weights
  for (u64 p : {5, 7}) {
    auto a = frobenius_poly(parse_family("[1,2,8];[3,12]"), Rat(3, 2), p).poly;
    auto b = frobenius_poly(parse_family("[1,1,8];[3,12]"), Rat(3, 2), p).poly;
    auto d = frobenius_poly(q5, Rat(3, 2), p).poly;
    for (int i = 0; i <= 6; ++i) c.expect((a[i] - b[i]) % 2 == 0 && (a[i] - d[i]) % 2 == 0, "mod 2 at p=" + std::to_string(p));
  }
}

void c9(Criterion &c, bool extended) {
  for (int n = 1; n <= 12; ++n)
    for (CountMode mode : {CountMode::Raw, CountMode::ModNegation}) {
      auto one = census(n, mode, {1});
      auto many = census(n, mode, {4});
      c.expect(one.counts == many.counts && one.total == many.total, "determinism at n=" + std::to_string(n));
      c.expect(Int(std::to_string(one.total)) == census_total_dp(n, mode), "DP total at n=" + std::to_string(n));
    }
  if (!extended) return;
  CensusOptions opt;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  auto r = census(24, CountMode::ModNegation, opt);
  auto at = [&](std::vector<int> h) { return r.counts.count(h) ? r.counts.at(h) : 0; };
  c.expect(at({1, 4, 7, 7, 4, 1}) == 9905208, "(1,4,7,7,4,1) -> " + std::to_string(at({1, 4, 7, 7, 4, 1})));
  c.expect(at({9, 1, 1, 2, 1, 1, 9}) == 0, "(9,1,1,2,1,1,9)");
  c.expect(at({1, 22, 1}) == 4, "(1,22,1) -> " + std::to_string(at({1, 22, 1})));
  c.expect(r.total >= 450000000 && r.total <= 470000000, "total " + std::to_string(r.total));
}

} // namespace

int main(int argc, char **argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--extended")) extended = true;
    else {
      std::cerr << "usage: acceptance [--extended]\n";
      return 2;
    }
  }
  std::vector<std::pair<std::string, std::function<void(Criterion &)>>> all = {
      {"1 hodge engine", c1},
      {"2 mum counts", c2},
      {"3 frobenius polynomials", c3},
      {"4 oracle equivalence", c4},
      {"5 wild-prime pipeline", c5},
      {"6 tame conductor vs discriminant", c6},
      {"7 fixture regressions", c7},
      {"8 property suites", c8},
      {std::string("9 census") + (extended ? " (extended n = 24)" : ""), [&](Criterion &c) { c9(c, extended); }},
  };
  int failed = 0;
  for (auto &[name, fn] : all) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception &e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.precision(3);
    line << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << name << " (" << std::fixed << s << " s)";
    for (auto &f : c.failures) line << " | " << f;
    std::cout << line.str() << std::endl;
    if (!c.failures.empty()) ++failed;
  }
  return failed ? 1 : 0;
}
