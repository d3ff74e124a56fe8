#include "doctest.h"

#include "hgm/census.hpp"
#include "hgm/error.hpp"
#include "hgm/family.hpp"

using namespace hgm;

namespace {

ErrorKind kind_of(const std::string &s) {
  try {
    parse_family(s);
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error for " << s);
  return ErrorKind::Io;
}

// Psi-product ratio compared with the Phi-product ratio by cross multiplication
bool phi_psi_agree(const GammaVector &g, const CyclotomicPair &c) {
  IntPoly num{1}, den{1};
  for (i64 x : g) {
    i64 a = x < 0 ? -x : x;
    IntPoly psi(a + 1, 0);
    psi[0] = -1;
    psi[a] = 1;
    (x < 0 ? num : den) = poly_mul(x < 0 ? num : den, psi);
  }
  return poly_mul(num, cyclotomic_product(c.beta_side)) == poly_mul(den, cyclotomic_product(c.alpha_side));
}

Rat frac(const Int &a, const Int &b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

IntPoly negate_var(const IntPoly &f) {
  IntPoly g = f;
  for (std::size_t i = 1; i < g.size(); i += 2) g[i] = -g[i];
  return g;
}

} // namespace

TEST_CASE("parse gamma form") {
  auto f = parse_family("[-2,-2,1,1,1,1]");
  CHECK(f.cyc.alpha_side == std::vector<i64>{2, 2});
  CHECK(f.cyc.beta_side == std::vector<i64>{1, 1});
  CHECK(f.n == 2);
  CHECK(f.alpha == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  CHECK(f.beta == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("parse cyclotomic form, denominator first") {
  auto f = parse_family("[1,1];[2,2]");
  CHECK(f.gamma == GammaVector{-2, -2, 1, 1, 1, 1});
  CHECK(parse_family(" [ 1 , 1 ] ; [2,2] ").key() == f.key());
  CHECK(f.cyclotomic_string() == "[1,1];[2,2]");
}

TEST_CASE("parse errors are distinct") {
  CHECK(kind_of("[-1,1]") == ErrorKind::Degenerate);
  CHECK(kind_of("[0,1,-1]") == ErrorKind::ZeroEntry);
  CHECK(kind_of("[-2,1]") == ErrorKind::SumNonzero);
  CHECK(kind_of("[-4,2,2]") == ErrorKind::GcdNotOne);
  CHECK(kind_of("[1,2];[2]") == ErrorKind::NotDisjoint);
  CHECK(kind_of("[];[1]") == ErrorKind::EmptySide);
  CHECK(kind_of("[1,2") == ErrorKind::Parse);
  CHECK(kind_of("[1,a]") == ErrorKind::Parse);
  CHECK(kind_of("[1];[3]") == ErrorKind::Unbalanced);
  CHECK(kind_of("") == ErrorKind::Parse);
}

TEST_CASE("to_cyclotomic against polynomial expansion") {
  CHECK(to_cyclotomic({-2, -2, 1, 1, 1, 1}) == CyclotomicPair{{2, 2}, {1, 1}});
  CHECK(to_cyclotomic({-5, -2, 3, 4}) == CyclotomicPair{{5}, {3, 4}});
  CHECK(to_cyclotomic({-8, 3, 5}) == CyclotomicPair{{2, 4, 8}, {1, 3, 5}});
  for (GammaVector g : {GammaVector{-5, -2, 3, 4}, GammaVector{-8, 3, 5}, GammaVector{-21, 1, 2, 3, 4, 5, 6},
                        GammaVector{-66, -11, -6, -5, -4, -4, 1, 2, 8, 12, 18, 22, 33}})
    CHECK(phi_psi_agree(g, to_cyclotomic(g)));
}

TEST_CASE("to_gamma examples") {
  CHECK(to_gamma({{2, 2}, {1, 1}}) == GammaVector{-2, -2, 1, 1, 1, 1});
  CHECK(to_gamma({{5}, {3, 4}}) == GammaVector{-5, -2, 3, 4});
  CHECK(to_gamma({{2}, {1}}) == GammaVector{-2, 1, 1});
}

TEST_CASE("round trips over all parameters of rank <= 6") {
  int checked = 0;
  for (int n = 1; n <= 6; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      CyclotomicPair c{a, b};
      GammaVector g = unreduce(c);
      CHECK(phi_psi_agree(g, c));
      CHECK(to_cyclotomic(g) == c);
      if (gamma_primitive(a, b)) {
        auto f = from_gamma(g);
        CHECK(f.cyc == c);
        CHECK(to_gamma(to_cyclotomic(f.gamma)) == f.gamma);
        ++checked;
      }
    });
  CHECK(checked > 1000);
}

TEST_CASE("stats") {
  auto f = parse_family("[-5,-2,3,4]");
  auto s = stats(f);
  CHECK(s.vol == 7);
  CHECK(s.kappa == 1);
  CHECK(s.n == 4);
  CHECK(s.m == 60);
  CHECK(s.r == 2);

  auto leg = stats(parse_family("[1,1];[2,2]"));
  CHECK(leg.q_at_zero == 1);
  CHECK(leg.is_reflexive);
  CHECK(leg.is_mum);
  CHECK_FALSE(leg.is_intertwined);

  auto f5 = parse_family("[1,1,1,1,1];[2,2,2,2,2]");
  CHECK(stats(f5).q_at_zero == -1);
  CHECK(f5.vol >= f5.n);
}

TEST_CASE("q(0), reflexivity and twist involution against polynomial oracles") {
  for (int n = 1; n <= 6; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      auto f = from_cyclotomic({a, b});
      IntPoly qi = q_infinity(f), q0 = q_zero(f);
      Rat q_at_0 = frac(qi[0], q0[0]);
      CHECK(q_at_0 == f.q_at_zero);
      bool reflexive = poly_mul(negate_var(qi), qi) == poly_mul(negate_var(q0), q0);
      CHECK(reflexive == stats(f).is_reflexive);
      CHECK(twist_side(twist_side(a)) == a);
    });
}

TEST_CASE("series coefficients") {
  auto leg = parse_family("[-2,-2,1,1,1,1]");
  auto A = series_coefficients(leg, 10);
  CHECK(A[0] == 1);
  CHECK(A[1] == Rat(1, 4));
  CHECK(A[2] == Rat(9, 64));
  for (int k = 0; k <= 10; ++k) {
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
    CHECK(A[k] == frac(c * c, ipow(16, k)));
  }
  auto f = parse_family("[3,4];[5]");
  Rat num = Rat(1, 5) * Rat(2, 5) * Rat(3, 5) * Rat(4, 5);
  Rat den = Rat(1, 3) * Rat(2, 3) * Rat(1, 4) * Rat(3, 4);
  CHECK(series_coefficients(f, 1)[1] == num / den);
}
