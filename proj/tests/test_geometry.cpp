#include "doctest.h"

#include "hgm/arith.hpp"
#include "hgm/error.hpp"
#include "hgm/geometry.hpp"
#include "hgm/lattice.hpp"

#include <algorithm>
#include <numeric>

using namespace hgm;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<Int> vec(std::vector<long> v) { return {v.begin(), v.end()}; }

// an independently chosen model: unimodular change of the x-variables and shifts of k
ToricModel perturbed(const ToricModel &tm) {
  ToricModel o = tm;
  std::size_t d = tm.dim(), l = tm.gamma.size();
  IntMatrix A = IntMatrix::identity(d);
  for (std::size_t i = 0; i + 1 < d; ++i) A(i, i + 1) = static_cast<long>(i + 2);
  if (d >= 2) A(d - 1, 0) = 0;
  o.m = A * tm.m;
  for (std::size_t j = 0; j < l; ++j) {
    o.k[j] += 3; // multiply every monomial by u^3
    if (d) o.k[j] -= tm.m(0, j); // rescale x_1 by u
  }
  return o;
}

} // namespace

TEST_CASE("fixed table model validates") {
  GammaVector g{-5, -2, 3, 4};
  CHECK(validate(g, mat({{2, 1, 0, 3}, {0, 2, 0, 1}}), vec({0, 1, 1, 0})).empty());
  CHECK(!validate(g, mat({{2, 1, 0, 3}, {0, 4, 0, 2}}), vec({0, 1, 1, 0})).empty());
  CHECK(!validate(g, mat({{2, 1, 0, 3}, {0, 2, 0, 1}}), vec({1, 1, 1, 0})).empty());
  CHECK(toric_u_factor(g) == Rat(-64 * 27, 3125));
  ToricModel fixed{g, mat({{2, 1, 0, 3}, {0, 2, 0, 1}}), vec({0, 1, 1, 0}), toric_u_factor(g)};
  auto st = polytope_stats(fixed);
  CHECK(st.vols == vec({5, 2, 3, 4}));
  CHECK(st.genus == Int(2));
  CHECK(st.punctures == Int(5));
  CHECK(st.chi == -7);
}

TEST_CASE("generated models satisfy the contract") {
  for (auto g : std::vector<GammaVector>{{-5, -2, 3, 4}, {-8, 3, 5}, {-2, -2, 1, 1, 1, 1}, {-6, 1, 2, 3},
                                         {-12, -3, -2, 1, 1, 1, 6, 8}, {-30, 1, 4, 10, 15}, {-4, -4, 1, 1, 3, 3}}) {
    auto tm = toric_model(g);
    CHECK(validate(g, tm.m, tm.k).empty());
    CHECK(toric_model(g).m == tm.m); // deterministic
    auto st = polytope_stats(tm);
    Int half = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(st.vols[j] == Int(static_cast<long>(std::abs(g[j]))));
      half += std::abs(g[j]);
    }
    CHECK(2 * st.total == half);
    CHECK(st.total == bcm_model(g).degree);
  }
  auto st = polytope_stats(toric_model({-5, -2, 3, 4}));
  CHECK(st.genus == Int(2));
  CHECK(st.punctures == Int(5));
  CHECK(st.chi == -7);
}

TEST_CASE("splicings") {
  auto s = splicings({-12, -3, -2, 1, 1, 1, 6, 8});
  Splicing doc{{-12, -3, 1, 6, 8}, {-2, 1, 1}};
  if (doc.second < doc.first) std::swap(doc.first, doc.second);
  CHECK(std::find(s.begin(), s.end(), doc) != s.end());
  auto s2 = splicings({-2, -2, 1, 1, 1, 1});
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == Splicing{{-2, 1, 1}, {-2, 1, 1}});
  CHECK(splicings({-5, -2, 3, 4}).empty());
}

TEST_CASE("elliptic a_p") {
  // y^2 = x(1-x)(x-2) over F_5 by hand: x=0,1,2 give one point each
  i64 a5 = elliptic_ap(Rat(2), 5);
  long pts = 1;
  for (long x = 0; x < 5; ++x)
    for (long y = 0; y < 5; ++y)
      if (((y * y - x * (1 - x) * (x - 2)) % 5 + 5) % 5 == 0) ++pts;
  CHECK(a5 == 5 + 1 - pts);
  for (u64 p : primes_up_to(200)) {
    if (p < 3) continue;
    for (Rat t : {Rat(2), Rat(-1), Rat(1, 3)}) {
      if (valuation(t, Int(static_cast<unsigned long>(p))) != 0 || valuation(Rat(t - 1), Int(static_cast<unsigned long>(p))) != 0) continue;
      i64 a = elliptic_ap(t, p);
      CHECK(static_cast<double>(a * a) <= 4.0 * static_cast<double>(p));
    }
  }
  CHECK_THROWS_AS(elliptic_ap(Rat(3), 3), Error);
}

TEST_CASE("trinomial models") {
  auto tm = trinomial_model(3, 5);
  CHECK(tm.toric_string() == "5x^8 + 8tx^5 + 3t^3");
  CHECK(tm.toric(Rat(2)) == RatPoly{24, 0, 0, 0, 0, 16, 0, 0, 5});
  CHECK(tm.bcm(Rat(1)).size() == 9);
  auto q = trinomial_model(1, 1);
  auto f = q.bcm(Rat(3));
  CHECK(f == RatPoly{Rat(-3, 4), 1, -1});
  CHECK(root_count(q.bcm(Rat(-3)), 7) == 2); // discriminant 1 - t = 4
  CHECK(root_count(q.bcm(Rat(3, 2)), 7) == 0); // 1 - t = 3 is a non-residue
  for (i64 a = 1; a <= 6; ++a)
    for (i64 b = 1; b <= 6; ++b)
      if (std::gcd(a, b) == 1) {
        auto m = trinomial_model(a, b);
        CHECK(m.ej * (a + b) - m.ei * b - m.ek * a == -1);
        CHECK(m.bcm(Rat(1)).size() == static_cast<std::size_t>(a + b + 1));
      }
}

TEST_CASE("point counts: dimension zero equals trace + 1") {
  GammaVector g{-8, 3, 5};
  auto f = from_gamma(g);
  for (Rat t : {Rat(2), Rat(3), Rat(5, 7)})
    for (u64 q : {11, 13, 17, 19, 23, 29, 31, 121, 169}) {
      auto [p, e] = prime_power(q);
      Int P(static_cast<unsigned long>(p));
      if (valuation(t, P) != 0 || valuation(Rat(t - 1), P) != 0) continue;
      CHECK(Int(static_cast<unsigned long>(count_points(g, t, q))) == trace(f, t, p, static_cast<int>(e)) + 1);
      // and the trinomial itself, off x = 0
      CHECK(count_points(g, t, q) == root_count(trinomial_model(3, 5).toric(t), q));
    }
}

TEST_CASE("point counts: quadratic [-2,1,1]") {
  GammaVector g{-2, 1, 1};
  for (u64 p : {5, 7, 11, 13})
    for (long tn = 2; tn < 6; ++tn) {
      Rat t(tn);
      Int P(static_cast<unsigned long>(p));
      if (valuation(t, P) != 0 || valuation(Rat(t - 1), P) != 0) continue;
      u64 c = count_points(g, t, p);
      CHECK(c <= 2);
    }
}

TEST_CASE("point counts agree across independent toric models") {
  for (auto g : std::vector<GammaVector>{{-8, 3, 5}, {-5, -2, 3, 4}, {-6, 1, 2, 3}, {-4, -1, 2, 3}, {-2, -2, 1, 1, 1, 1}}) {
    auto a = toric_model(g);
    auto b = perturbed(a);
    CHECK(validate(g, b.m, b.k).empty());
    for (u64 q : {7, 11, 13, 25, 49}) {
      auto [p, e] = prime_power(q);
      bool bad = false;
      for (i64 x : g)
        if (x % static_cast<i64>(p) == 0) bad = true;
      if (bad || (g.size() > 5 && q > 13)) continue;
      for (Rat t : {Rat(3), Rat(-2, 5)}) {
        Int P(static_cast<unsigned long>(p));
        if (valuation(t, P) != 0 || valuation(Rat(t - 1), P) != 0) continue;
        CHECK(count_points(a, t, q) == count_points(b, t, q, 2));
      }
    }
  }
}

TEST_CASE("count errors") {
  CHECK_THROWS_AS(count_points(GammaVector{-8, 3, 5}, Rat(2), 3), Error);
  CHECK_THROWS_AS(count_points(GammaVector{-8, 3, 5}, Rat(2), 1ULL << 15), Error);
}

TEST_CASE("discriminant valuations") {
  auto tm = trinomial_model(3, 5);
  for (long p : {7, 11, 13}) {
    Int P(p);
    // ord_p(t) = 0 with t = 1 + p: a node
    CHECK(algebra_discriminant_valuation(tm.toric(Rat(1 + p)), P) == 1);
    CHECK(algebra_discriminant_valuation(tm.toric(Rat(1 + p * p)), P) == 0);
    CHECK(algebra_discriminant_valuation(tm.toric(Rat(2)), P) == 0);
    CHECK(algebra_discriminant_valuation(tm.toric(Rat(p)), P) == 6);
    CHECK(discriminant_valuation(tm.toric(Rat(1 + p)), P) == 1);
  }
}
