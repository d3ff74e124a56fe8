#include "doctest.h"

#include "hgm/census.hpp"
#include "hgm/hodge.hpp"

#include <cstdio>
#include <filesystem>
#include <numeric>
#include <set>

using namespace hgm;

namespace {

i64 brute_totient(i64 d) {
  i64 r = 0;
  for (i64 j = 1; j <= d; ++j)
    if (std::gcd(j, d) == 1) ++r;
  return r;
}

} // namespace

TEST_CASE("cyclotomic indices and multisets") {
  for (int n = 1; n <= 8; ++n) {
    for (i64 d : cyclotomic_indices(n)) CHECK(brute_totient(d) <= n);
    for (i64 d = 1; d <= 6 * n + 6; ++d)
      if (brute_totient(d) <= n) {
        auto idx = cyclotomic_indices(n);
        CHECK(std::find(idx.begin(), idx.end(), d) != idx.end());
      }
    std::set<std::vector<i64>> seen;
    for (auto &m : cyclotomic_multisets(n)) {
      i64 s = 0;
      for (i64 d : m) s += brute_totient(d);
      CHECK(s == n);
      CHECK(std::is_sorted(m.begin(), m.end()));
      CHECK(seen.insert(m).second);
    }
  }
}

TEST_CASE("pairs are disjoint and counted consistently") {
  for (int n = 1; n <= 6; ++n) {
    u64 pairs = 0, prim = 0;
    for_each_pair(n, [&](const std::vector<i64> &a, const std::vector<i64> &b) {
      for (i64 x : a) CHECK(std::find(b.begin(), b.end(), x) == b.end());
      ++pairs;
      if (gamma_primitive(a, b)) ++prim;
    });
    auto raw = census(n, CountMode::Raw);
    auto neg = census(n, CountMode::ModNegation);
    CHECK(raw.total == prim);
    CHECK(raw.total == 2 * neg.total);
    CHECK(Int(std::to_string(pairs)) == census_total_dp(n, CountMode::Raw, false));
    u64 sum = 0;
    for (auto &[h, c] : raw.counts) {
      CHECK(std::accumulate(h.begin(), h.end(), 0) == n);
      sum += c;
    }
    CHECK(sum == raw.total);
  }
}

TEST_CASE("small census values") {
  // rank 1: Phi2/Phi1 only, up to negation
  CHECK(census(1, CountMode::ModNegation).total == 1);
  // rank 2, primitive: Legendre type [1,1];[2,2] and the other weight-zero pairs
  auto r2 = census(2, CountMode::ModNegation);
  CHECK(Int(std::to_string(r2.total)) == census_total_dp(2, CountMode::ModNegation));
  CHECK(r2.counts.count({1, 1}) == 1);
}

TEST_CASE("census is deterministic across threads and checkpoints") {
  auto base = census(9, CountMode::ModNegation);
  CensusOptions mt;
  mt.threads = 3;
  auto other = census(9, CountMode::ModNegation, mt);
  CHECK(base.counts == other.counts);
  CHECK(base.total == other.total);

  auto path = (std::filesystem::temp_directory_path() / "hgm_census_test.ckpt").string();
  std::remove(path.c_str());
  CensusOptions part;
  part.budget = base.total / 3;
  part.checkpoint_path = path;
  auto first = census(9, CountMode::ModNegation, part);
  CHECK(first.partial);
  CHECK(first.total < base.total);
  CensusOptions resume;
  resume.checkpoint_path = path;
  auto done = census(9, CountMode::ModNegation, resume);
  CHECK_FALSE(done.partial);
  CHECK(done.counts == base.counts);
  std::remove(path.c_str());
}

TEST_CASE("MUM counts match enumeration") {
  auto c = mum_counts(10);
  REQUIRE(c.size() == 11);
  CHECK(c[0] == 1);
  for (int n = 1; n <= 10; ++n) CHECK(c[n] == Int(std::to_string(mum_enumerate(n))));
  CHECK_THROWS(mum_enumerate(-1));
}
