#include "doctest.h"

#include "hgm/census.hpp"
#include "hgm/hodge.hpp"
#include "hgm/monodromy.hpp"

using namespace hgm;

namespace {
std::vector<int> H(const std::string &s) { return hodge_vector(parse_family(s)).h; }
} // namespace

TEST_CASE("zigzag plotted heights") {
  auto z = zigzag(parse_family("[1,5];[2,3,4]"));
  std::vector<int> a, b;
  for (auto &p : z.points) (p.is_alpha ? a : b).push_back(p.height);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == std::vector<int>{-1, 0, 0, 0, 1});
  CHECK(b == std::vector<int>{0, 1, 1, 1, 2});

  auto leg = zigzag(parse_family("[1,1];[2,2]"));
  std::vector<int> la, lb;
  for (auto &p : leg.points) (p.is_alpha ? la : lb).push_back(p.height);
  CHECK(la == std::vector<int>{0, 1});
  CHECK(lb == std::vector<int>{2, 1});
}

TEST_CASE("hodge vectors") {
  auto hd = hodge_vector(parse_family("[1,5];[2,3,4]"));
  CHECK(hd.h == std::vector<int>{1, 3, 1});
  CHECK(hd.phi0 == -1);
  CHECK(H("[-21,1,2,3,4,5,6]") == std::vector<int>{1, 2, 12, 2, 1});
  CHECK(H("[-48,-15,-12,5,16,24,30]") == std::vector<int>{1, 20, 1});
  CHECK(H("[-66,-11,-6,-5,-4,-4,1,2,8,12,18,22,33]") == std::vector<int>{1, 22, 1});
  CHECK(hodge_vector(parse_family("[1,1];[2,2]")).phi0 == 0);
}

TEST_CASE("MUM heights cover each level once") {
  auto f = parse_family("[1,1,1,1,1,1];[3,3,3]");
  auto z = zigzag(f);
  std::vector<int> a;
  for (auto &p : z.points)
    if (p.is_alpha) a.push_back(p.height);
  std::sort(a.begin(), a.end());
  CHECK(a == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("t = 1 adjustment") {
  HodgeData o{{10, 1, 10}, 2, 0, {}};
  CHECK(hodge_vector_at_one(o).h == std::vector<int>{10, 0, 10});
  HodgeData s{{1, 1, 1, 1, 1, 1}, 5, 0, {}};
  CHECK(hodge_vector_at_one(s).h == std::vector<int>{1, 1, 0, 0, 1, 1});
  CHECK(hodge_vector_at_one(parse_family("[1,1,1,1,1,1,1,1,1,1,1];[2,2,2,2,2,2,2,2,2,4]")).h ==
        std::vector<int>{1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1});
  HodgeData bad{{1, 0, 1}, 2, 0, {}};
  CHECK_THROWS(hodge_vector_at_one(bad));
}

TEST_CASE("hypersurface gamma and Betti numbers") {
  CHECK(hypersurface_gamma(3, 4) == GammaVector{-33, -8, -2, 1, 4, 16, 22});
  CHECK(hypersurface_gamma(3, 1) == GammaVector{-2, -2, 1, 3});
  auto f53 = from_gamma(hypersurface_gamma(5, 3));
  CHECK(f53.n == 204);
  CHECK(hodge_vector(f53).h == std::vector<int>{1, 101, 101, 1});
  CHECK(hodge_vector(from_gamma(hypersurface_gamma(3, 1))).h == std::vector<int>{1, 1});
  CHECK(betti_primitive(3, 4).b == 22);
  CHECK(betti_primitive(6, 2).b == 105);
  CHECK(betti_primitive(6, 2).h_top == 10);
  CHECK(betti_primitive(4, 1).b == 6);
  CHECK(betti_primitive(4, 1).h_top == 3);
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 4; ++k) {
      auto f = from_gamma(hypersurface_gamma(d, k));
      auto b = betti_primitive(d, k);
      CHECK(f.n == b.b);
      if (b.h_top > 0) CHECK(hodge_vector(f).h.front() == b.h_top);
    }
}

TEST_CASE("hypersurface Hodge vectors, nonzero parts") {
  const std::vector<std::vector<std::vector<int>>> rows = {
      {{1, 1}, {6}, {5, 5}},
      {{3, 3}, {1, 19, 1}, {30, 30}},
      {{6, 6}, {4, 44, 4}, {1, 101, 101, 1}},
      {{10, 10}, {10, 85, 10}, {5, 255, 255, 5}},
  };
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 3; ++k) CHECK(hodge_vector(from_gamma(hypersurface_gamma(d, k))).h == rows[d - 3][k - 1]);
}

TEST_CASE("exhaustive zigzag properties, rank <= 8") {
  long count = 0;
  for (int n = 1; n <= 8; ++n)
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      if (!gamma_primitive(a, b)) return;
      auto f = from_cyclotomic({a, b});
      auto hd = hodge_vector(f); // throws if alpha/beta level counts differ
      auto fast = hodge_from_sides(a, b);
      REQUIRE(fast.h == hd.h);
      REQUIRE(fast.phi0 == hd.phi0);
      std::vector<int> rev(hd.h.rbegin(), hd.h.rend());
      REQUIRE(rev == hd.h);
      REQUIRE(hd.rank() == n);
      REQUIRE(hd.h.front() >= 1);
      REQUIRE((hd.w % 2 == 1) == (f.q_at_zero == 1));
      auto s = stats(f);
      REQUIRE(s.is_intertwined == (hd.h == std::vector<int>{n}));
      if (s.is_mum) REQUIRE(hd.h == std::vector<int>(n, 1));
      auto z = zigzag(f);
      int last = z.points.back().height + (z.points.back().is_alpha ? 1 : -1);
      REQUIRE(last == 0);
      ++count;
    });
  CHECK(count > 10000);
}
