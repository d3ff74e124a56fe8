#include "doctest.h"

#include "hgm/census.hpp"
#include "hgm/monodromy.hpp"

#include <numeric>

using namespace hgm;

TEST_CASE("levelt invariants on examples") {
  auto leg = parse_family("[1,1];[2,2]");
  auto t = levelt(leg);
  CHECK(check_levelt(leg, t).empty());
  CHECK(determinant(t.h_1) == 1);
  CHECK(rank(t.h_1 - RatMatrix::identity(2)) == 1);
  auto f5 = parse_family("[1,1,1,1,1];[2,2,2,2,2]");
  CHECK(determinant(levelt(f5).h_1) == -1);
}

TEST_CASE("classification") {
  CHECK(classify(parse_family("[1,1];[2,2]")) == Classification::Symplectic);
  CHECK(classify(parse_family("[1,1,1,1,1];[2,2,2,2,2]")) == Classification::Orthogonal);
  auto f = parse_family("[18];[2,2,12]");
  CHECK(classify(f) == Classification::Symplectic);
}

TEST_CASE("drop rank") {
  auto f = parse_family("[-8,3,5]");
  CHECK(drop_rank(f, Cusp::Zero, 1) == 6);
  CHECK(drop_rank(f, Cusp::Zero, 15) == 0);
  CHECK(drop_rank(f, Cusp::Zero, -15) == 0);
  CHECK(drop_rank(f, Cusp::Infinity, 8) == 0);
  CHECK_THROWS(drop_rank(f, Cusp::Zero, 0));
  // semisimple cusp: h^m = I
  auto g = parse_family("[-5,-2,3,4]");
  CHECK(drop_rank(g, Cusp::Zero, g.m) == 0);
  CHECK(drop_rank(g, Cusp::Infinity, g.m) == 0);
  // unipotent cusp keeps one Jordan block
  CHECK(drop_rank(parse_family("[1,1];[2,2]"), Cusp::Zero, 2) == 1);
}

TEST_CASE("drop rank paths agree and are periodic, rank <= 8") {
  for (int n = 1; n <= 8; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      if (n > 6 && (a.size() * 7 + b.size()) % 5) return; // thin the largest ranks
      auto f = from_cyclotomic({a, b});
      for (Cusp c : {Cusp::Zero, Cusp::Infinity}) {
        LeveltTriple t = levelt(f);
        const RatMatrix &hr = c == Cusp::Zero ? t.h_0 : t.h_inf;
        IntMatrix h(f.n, f.n);
        for (int i = 0; i < f.n; ++i)
          for (int j = 0; j < f.n; ++j) h(i, j) = hr(i, j).get_num();
        IntMatrix hk = IntMatrix::identity(f.n);
        for (i64 k = 1; k <= f.m; ++k) {
          hk = hk * h;
          int r = static_cast<int>(rank(hk - IntMatrix::identity(f.n)));
          REQUIRE(r == drop_rank_eigen(f, c, k));
          REQUIRE(r == drop_rank_eigen(f, c, std::gcd(k, f.m)));
        }
      }
    });
}

TEST_CASE("levelt invariants exhaustive, rank <= 10") {
  long count = 0;
  for (int n = 1; n <= 10; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      auto f = from_cyclotomic({a, b});
      auto msg = check_levelt(f, levelt(f));
      if (!msg.empty()) FAIL(f.key() << ": " << msg);
      ++count;
    });
  CHECK(count > 100000);
}
