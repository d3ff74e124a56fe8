#include "hgm/hodge.hpp"

#include "hgm/error.hpp"

#include <algorithm>
#include <numeric>

namespace hgm {

int HodgeData::rank() const { return std::accumulate(h.begin(), h.end(), 0); }

std::string hodge_key(const std::vector<int> &h) {
  std::string s;
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s;
}

std::string HodgeData::to_string() const { return "(" + hodge_key(h) + ")"; }

namespace {

HodgeData read_levels(const std::vector<int> &alpha_heights, int phi0) {
  HodgeData hd;
  auto [lo, hi] = std::minmax_element(alpha_heights.begin(), alpha_heights.end());
  hd.w = *hi - *lo;
  hd.h.assign(hd.w + 1, 0);
  for (int y : alpha_heights) hd.h[y - *lo]++;
  hd.phi0 = phi0;
  return hd;
}

} // namespace

ZigzagDiagram zigzag(const FamilyParameter &f) {
  std::vector<std::pair<Rat, bool>> pts;
  for (auto &a : f.alpha) pts.emplace_back(a, true);
  for (auto &b : f.beta) pts.emplace_back(b, false);
  std::stable_sort(pts.begin(), pts.end(), [](auto &x, auto &y) { return x.first < y.first; });
  ZigzagDiagram z;
  int height = 0;
  for (auto &[v, a] : pts) {
    z.points.push_back({v, a, height});
    height += a ? 1 : -1;
  }
  return z;
}

HodgeData hodge_vector(const FamilyParameter &f) {
  ZigzagDiagram z = zigzag(f);
  std::vector<int> ah, bh;
  int phi0 = 0;
  for (auto &p : z.points) {
    (p.is_alpha ? ah : bh).push_back(p.height);
    phi0 = std::min(phi0, p.height);
  }
  HodgeData hd = read_levels(ah, phi0);
  HodgeData hb = read_levels(bh, phi0);
  if (hb.h != hd.h) throw Error(ErrorKind::Consistency, "alpha and beta level counts differ");
  return hd;
}

HodgeData hodge_from_sides(const std::vector<i64> &alpha_side, const std::vector<i64> &beta_side) {
  // (numerator, denominator, is_alpha)
  struct P {
    i64 j, d;
    bool a;
  };
  std::vector<P> pts;
  for (i64 d : alpha_side)
    for (i64 j = 1; j <= d; ++j)
      if (std::gcd(j, d) == 1) pts.push_back({j, d, true});
  for (i64 d : beta_side)
    for (i64 j = 1; j <= d; ++j)
      if (std::gcd(j, d) == 1) pts.push_back({j, d, false});
  std::sort(pts.begin(), pts.end(), [](const P &x, const P &y) { return x.j * y.d < y.j * x.d; });
  std::vector<int> ah;
  int height = 0, phi0 = 0;
  for (auto &p : pts) {
    if (p.a) ah.push_back(height);
    phi0 = std::min(phi0, height);
    height += p.a ? 1 : -1;
  }
  return read_levels(ah, phi0);
}

HodgeData hodge_vector_at_one(const HodgeData &g) {
  HodgeData h = g;
  if (g.w % 2 == 0) {
    if (h.h[g.w / 2] < 1) throw Error(ErrorKind::Consistency, "central Hodge number is zero");
    h.h[g.w / 2]--;
  } else {
    int a = (g.w - 1) / 2, b = (g.w + 1) / 2;
    if (h.h[a] < 1 || h.h[b] < 1) throw Error(ErrorKind::Consistency, "central Hodge numbers are zero");
    h.h[a]--;
    h.h[b]--;
  }
  return h;
}

HodgeData hodge_vector_at_one(const FamilyParameter &f) { return hodge_vector_at_one(hodge_vector(f)); }

GammaVector hypersurface_gamma(int delta, int kappa) {
  if (delta < 3 || kappa < 1) throw Error(ErrorKind::InvalidArgument, "need delta >= 3 and kappa >= 1");
  i64 e = delta - 1;
  GammaVector g;
  i64 pw = 1; // (-e)^i
  for (int i = 0; i <= kappa; ++i) {
    g.push_back(pw);
    pw *= -e;
  }
  g.push_back(pw - 1);     // (-e)^{kappa+1} - 1
  g.push_back((pw * -e + e) / (e + 1));
  std::sort(g.begin(), g.end());
  return g;
}

BettiData betti_primitive(int delta, int kappa) {
  Int e = delta - 1;
  Int b = ipow(e, kappa + 2) + (kappa % 2 ? -e : e);
  if (b % delta != 0) throw Error(ErrorKind::Consistency, "Betti formula not integral");
  Int h;
  mpz_bin_uiui(h.get_mpz_t(), delta - 1, kappa + 1);
  return {b / delta, h};
}

} // namespace hgm
