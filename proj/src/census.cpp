#include "hgm/census.hpp"

#include "hgm/error.hpp"
#include "hgm/hodge.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace hgm {

std::vector<i64> cyclotomic_indices(int n) {
  std::vector<i64> out;
  // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2n^2
  for (i64 d = 1; d <= 2LL * n * n + 2; ++d)
    if (totient(d) <= n) out.push_back(d);
  return out;
}

namespace {

void multisets_rec(const std::vector<i64> &ds, const std::vector<i64> &phis, std::size_t from, int left,
                   std::vector<i64> &cur, const std::vector<bool> &banned,
                   const std::function<void(const std::vector<i64> &)> &fn) {
  if (left == 0) {
    fn(cur);
    return;
  }
  for (std::size_t i = from; i < ds.size(); ++i) {
    if (banned[i] || phis[i] > left) continue;
    cur.push_back(ds[i]);
    multisets_rec(ds, phis, i, left - static_cast<int>(phis[i]), cur, banned, fn);
    cur.pop_back();
  }
}

struct IndexTable {
  std::vector<i64> ds, phis;
  explicit IndexTable(int n) : ds(cyclotomic_indices(n)) {
    for (i64 d : ds) phis.push_back(totient(d));
  }
  std::size_t pos(i64 d) const { return std::lower_bound(ds.begin(), ds.end(), d) - ds.begin(); }
};

} // namespace

std::vector<std::vector<i64>> cyclotomic_multisets(int n) {
  IndexTable t(n);
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur;
  std::vector<bool> banned(t.ds.size(), false);
  multisets_rec(t.ds, t.phis, 0, n, cur, banned, [&](const std::vector<i64> &m) { out.push_back(m); });
  return out;
}

namespace {

void for_each_beta(const IndexTable &t, int n, const std::vector<i64> &alpha,
                   const std::function<void(const std::vector<i64> &, const std::vector<i64> &)> &fn) {
  std::vector<bool> banned(t.ds.size(), false);
  for (i64 d : alpha) banned[t.pos(d)] = true;
  std::vector<i64> cur;
  multisets_rec(t.ds, t.phis, 0, n, cur, banned, [&](const std::vector<i64> &b) { fn(alpha, b); });
}

} // namespace

void for_each_pair(int n, const std::function<void(const std::vector<i64> &, const std::vector<i64> &)> &fn) {
  IndexTable t(n);
  for (auto &a : cyclotomic_multisets(n)) for_each_beta(t, n, a, fn);
}

bool gamma_primitive(const std::vector<i64> &alpha_side, const std::vector<i64> &beta_side) {
  i64 g = 0;
  for (i64 x : unreduce({alpha_side, beta_side})) g = std::gcd(g, x < 0 ? -x : x);
  return g == 1;
}

namespace {

using Counts = std::map<std::vector<int>, std::uint64_t>;

std::string encode_counts(std::size_t chunk, const Counts &c) {
  std::ostringstream os;
  os << chunk << "|";
  bool first = true;
  for (auto &[h, k] : c) {
    os << (first ? "" : ";") << hodge_key(h) << "=" << k;
    first = false;
  }
  return os.str();
}

bool decode_counts(const std::string &line, std::size_t &chunk, Counts &c) {
  auto bar = line.find('|');
  if (bar == std::string::npos) return false;
  chunk = std::stoull(line.substr(0, bar));
  std::stringstream ss(line.substr(bar + 1));
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) return false;
    std::vector<int> h;
    std::stringstream hs(item.substr(0, eq));
    std::string v;
    while (std::getline(hs, v, ',')) h.push_back(std::stoi(v));
    c[h] += std::stoull(item.substr(eq + 1));
  }
  return true;
}

} // namespace

CensusRecord census(int n, CountMode mode, const CensusOptions &opt) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
  IndexTable t(n);
  std::vector<std::vector<i64>> alphas = cyclotomic_multisets(n);
  const std::size_t chunk_size = 64;
  std::size_t nchunks = (alphas.size() + chunk_size - 1) / chunk_size;

  std::vector<Counts> chunk_counts(nchunks);
  std::vector<bool> done(nchunks, false);
  if (!opt.checkpoint_path.empty()) {
    std::ifstream in(opt.checkpoint_path);
    std::string line;
    while (std::getline(in, line)) {
      std::size_t c;
      Counts m;
      if (decode_counts(line, c, m) && c < nchunks) chunk_counts[c] = m, done[c] = true;
    }
  }
  std::ofstream ckpt;
  if (!opt.checkpoint_path.empty()) ckpt.open(opt.checkpoint_path, std::ios::app);

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> examined{0};
  std::atomic<bool> over{false};
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t c = next++;
      if (c >= nchunks || over) return;
      if (done[c]) continue;
      Counts local;
      std::size_t end = std::min(alphas.size(), (c + 1) * chunk_size);
      for (std::size_t i = c * chunk_size; i < end; ++i)
        for_each_beta(t, n, alphas[i], [&](const std::vector<i64> &a, const std::vector<i64> &b) {
          if (opt.primitive_only && !gamma_primitive(a, b)) return;
          local[hodge_from_sides(a, b).h]++;
        });
      std::uint64_t cnt = 0;
      for (auto &kv : local) cnt += kv.second;
      if (opt.budget && examined.fetch_add(cnt) + cnt > opt.budget) {
        over = true;
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      chunk_counts[c] = std::move(local);
      done[c] = true;
      if (ckpt.is_open()) {
        ckpt << encode_counts(c, chunk_counts[c]) << "\n";
        ckpt.flush();
      }
    }
  };
  int th = std::max(1, opt.threads);
  std::vector<std::thread> pool;
  for (int i = 0; i < th; ++i) pool.emplace_back(worker);
  for (auto &p : pool) p.join();

  CensusRecord rec;
  rec.n = n;
  rec.mode = mode;
  for (std::size_t c = 0; c < nchunks; ++c) {
    if (!done[c]) {
      rec.partial = true;
      continue;
    }
    for (auto &[h, k] : chunk_counts[c]) rec.counts[h] += k;
  }
  if (mode == CountMode::ModNegation) {
    // gamma and -gamma share a Hodge vector and are never equal
    for (auto &[h, k] : rec.counts) {
      if (!rec.partial && k % 2) throw Error(ErrorKind::Consistency, "odd raw count under negation pairing");
      k /= 2;
    }
  }
  for (auto &[h, k] : rec.counts) rec.total += k;
  return rec;
}

Int census_total_dp(int n, CountMode mode, bool primitive_only) {
  // P[i][j] = number of disjoint pairs with totient sums (i, j)
  auto all = [](int N) {
    std::vector<std::vector<Int>> P(N + 1, std::vector<Int>(N + 1, 0));
    P[0][0] = 1;
    for (i64 d : cyclotomic_indices(N)) {
      int f = static_cast<int>(totient(d));
      auto Q = P;
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
          if (P[i][j] == 0) continue;
          for (int k = f; i + k <= N; k += f) Q[i + k][j] += P[i][j];
          for (int k = f; j + k <= N; k += f) Q[i][j + k] += P[i][j];
        }
      P = std::move(Q);
    }
    return P;
  };
  auto P = all(n);
  Int total = 0;
  if (primitive_only) {
    // parameters with g | gcd(gamma) are exactly q(T^g) for q of rank n/g
    for (i64 g : divisors(n)) total += mobius(g) * P[n / g][n / g];
  } else {
    total = P[n][n];
  }
  if (mode == CountMode::ModNegation) total /= 2;
  return total;
}

std::vector<Int> mum_counts(int n_max) {
  std::vector<Int> c(n_max + 1, 0);
  c[0] = 1;
  for (i64 k : cyclotomic_indices(n_max)) {
    if (k < 2) continue;
    i64 f = totient(k);
    for (int i = static_cast<int>(f); i <= n_max; ++i) c[i] += c[i - f];
  }
  return c;
}

std::uint64_t mum_enumerate(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "rank must be non-negative");
  if (n == 0) return 1; // the empty parameter
  std::uint64_t count = 0;
  for_each_pair(n, [&](const std::vector<i64> &, const std::vector<i64> &b) {
    if (static_cast<int>(b.size()) == n && b.back() == 1) ++count;
  });
  return count;
}

} // namespace hgm
