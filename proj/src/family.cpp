#include "hgm/family.hpp"

#include "hgm/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace hgm {

namespace {

std::vector<i64> parse_list(const std::string &s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error(ErrorKind::Parse, "expected bracketed list, got '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  std::vector<i64> out;
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::Parse, "empty list item in '" + s + "'");
    std::size_t i = (item[0] == '-' || item[0] == '+') ? 1 : 0;
    if (i == item.size()) throw Error(ErrorKind::Parse, "malformed integer '" + item + "'");
    for (std::size_t j = i; j < item.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(item[j])))
        throw Error(ErrorKind::Parse, "malformed integer '" + item + "'");
    if (item.size() > 12) throw Error(ErrorKind::Parse, "integer too large '" + item + "'");
    out.push_back(std::stoll(item));
  }
  if (body.back() == ',') throw Error(ErrorKind::Parse, "trailing comma in '" + s + "'");
  return out;
}

std::string join(const std::vector<i64> &v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

void populate(FamilyParameter &f) {
  auto &c = f.cyc;
  std::sort(c.alpha_side.begin(), c.alpha_side.end());
  std::sort(c.beta_side.begin(), c.beta_side.end());
  std::sort(f.gamma.begin(), f.gamma.end());
  f.alpha.clear();
  f.beta.clear();
  int na = 0, nb = 0;
  f.m = 1;
  for (i64 d : c.alpha_side) {
    for (auto &x : cyclotomic_roots(d)) f.alpha.push_back(x);
    na += static_cast<int>(totient(d));
    f.m = std::lcm(f.m, d);
  }
  for (i64 d : c.beta_side) {
    for (auto &x : cyclotomic_roots(d)) f.beta.push_back(x);
    nb += static_cast<int>(totient(d));
    f.m = std::lcm(f.m, d);
  }
  std::sort(f.alpha.begin(), f.alpha.end());
  std::sort(f.beta.begin(), f.beta.end());
  if (na != nb) throw Error(ErrorKind::Unbalanced, "numerator degree " + std::to_string(na) +
                                                       " vs denominator degree " + std::to_string(nb));
  f.n = na;
  f.l = static_cast<int>(f.gamma.size());
  f.kappa = f.l - 3;
  f.vol = 0;
  f.r = 0;
  for (i64 g : f.gamma) {
    f.vol += g < 0 ? -g : g;
    f.r += g < 0;
  }
  f.vol /= 2;
  auto ones = std::count(c.alpha_side.begin(), c.alpha_side.end(), 1) +
              std::count(c.beta_side.begin(), c.beta_side.end(), 1);
  f.q_at_zero = ones % 2 ? -1 : 1;
}

void check_gcd(const GammaVector &g) {
  i64 d = 0;
  for (i64 x : g) d = std::gcd(d, x < 0 ? -x : x);
  if (d != 1) throw Error(ErrorKind::GcdNotOne, "gcd of " + join(g) + " is " + std::to_string(d));
}

} // namespace

std::string gamma_to_string(const GammaVector &g) { return join(g); }

std::vector<Rat> cyclotomic_roots(i64 d) {
  std::vector<Rat> r;
  for (i64 j = 1; j <= d; ++j)
    if (std::gcd(j, d) == 1) r.emplace_back(Rat(static_cast<long>(j), static_cast<long>(d)));
  for (auto &x : r) x.canonicalize();
  return r;
}

CyclotomicPair to_cyclotomic(const GammaVector &gamma) {
  std::map<i64, i64> a, b;
  for (i64 g : gamma) {
    if (g == 0) throw Error(ErrorKind::ZeroEntry, "gamma entries must be nonzero");
    for (i64 d : divisors(g < 0 ? -g : g)) (g < 0 ? a : b)[d]++;
  }
  CyclotomicPair c;
  std::map<i64, i64> all = a;
  for (auto &[d, k] : b) all[d];
  for (auto &[d, k] : all) {
    i64 x = a.count(d) ? a[d] : 0, y = b.count(d) ? b[d] : 0;
    for (i64 i = 0; i < x - std::min(x, y); ++i) c.alpha_side.push_back(d);
    for (i64 i = 0; i < y - std::min(x, y); ++i) c.beta_side.push_back(d);
  }
  if (c.alpha_side.empty() && c.beta_side.empty())
    throw Error(ErrorKind::Degenerate, "parameter reduces to rank 0");
  if (c.alpha_side.empty() || c.beta_side.empty())
    throw Error(ErrorKind::EmptySide, "one cyclotomic side is empty");
  return c;
}

GammaVector unreduce(const CyclotomicPair &cyc) {
  std::map<i64, i64> net;
  i64 top = 1;
  for (i64 d : cyc.alpha_side) net[d]++, top = std::max(top, d);
  for (i64 d : cyc.beta_side) net[d]--, top = std::max(top, d);
  GammaVector g;
  // q = prod_d Phi_d^{net_d} = prod_e Psi_e^{c_e}, c_e = sum_{e|d} mu(d/e) net_d
  for (i64 e = 1; e <= top; ++e) {
    i64 ce = 0;
    for (auto &[d, k] : net)
      if (d % e == 0) ce += mobius(d / e) * k;
    for (i64 i = 0; i < (ce < 0 ? -ce : ce); ++i) g.push_back(ce > 0 ? -e : e);
  }
  std::sort(g.begin(), g.end());
  return g;
}

GammaVector to_gamma(const CyclotomicPair &cyc) {
  GammaVector g = unreduce(cyc);
  check_gcd(g);
  return g;
}

FamilyParameter from_gamma(GammaVector gamma) {
  if (gamma.empty()) throw Error(ErrorKind::EmptySide, "empty gamma vector");
  i64 sum = 0;
  for (i64 g : gamma) {
    if (g == 0) throw Error(ErrorKind::ZeroEntry, "gamma entries must be nonzero");
    sum += g;
  }
  if (sum != 0) throw Error(ErrorKind::SumNonzero, "sum of " + join(gamma) + " is " + std::to_string(sum));
  check_gcd(gamma);
  FamilyParameter f;
  f.gamma = std::move(gamma);
  f.cyc = to_cyclotomic(f.gamma);
  populate(f);
  return f;
}

FamilyParameter from_cyclotomic(CyclotomicPair cyc) {
  if (cyc.alpha_side.empty() || cyc.beta_side.empty())
    throw Error(ErrorKind::EmptySide, "both cyclotomic sides must be nonempty");
  for (i64 d : cyc.alpha_side)
    if (d < 1) throw Error(ErrorKind::ZeroEntry, "cyclotomic indices must be positive");
  for (i64 d : cyc.beta_side) {
    if (d < 1) throw Error(ErrorKind::ZeroEntry, "cyclotomic indices must be positive");
    if (std::find(cyc.alpha_side.begin(), cyc.alpha_side.end(), d) != cyc.alpha_side.end())
      throw Error(ErrorKind::NotDisjoint, "Phi_" + std::to_string(d) + " appears on both sides");
  }
  i64 na = 0, nb = 0;
  for (i64 d : cyc.alpha_side) na += totient(d);
  for (i64 d : cyc.beta_side) nb += totient(d);
  if (na != nb) throw Error(ErrorKind::Unbalanced, "numerator degree " + std::to_string(na) +
                                                       " vs denominator degree " + std::to_string(nb));
  FamilyParameter f;
  f.cyc = std::move(cyc);
  f.gamma = to_gamma(f.cyc);
  populate(f);
  return f;
}

FamilyParameter parse_family(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorKind::Parse, "empty parameter text");
  auto semi = s.find(';');
  if (semi == std::string::npos) return from_gamma(parse_list(s));
  CyclotomicPair c;
  c.beta_side = parse_list(s.substr(0, semi));
  c.alpha_side = parse_list(s.substr(semi + 1));
  return from_cyclotomic(std::move(c));
}

std::string FamilyParameter::key() const { return join(gamma); }

std::string FamilyParameter::cyclotomic_string() const {
  return join(cyc.beta_side) + ";" + join(cyc.alpha_side);
}

std::vector<i64> twist_side(const std::vector<i64> &side) {
  std::vector<i64> out;
  for (i64 d : side) {
    if (d == 1) out.push_back(2);
    else if (d == 2) out.push_back(1);
    else if (d % 4 == 2) out.push_back(d / 2);
    else if (d % 2 == 1) out.push_back(2 * d);
    else out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FamilyStats stats(const FamilyParameter &f) {
  FamilyStats s{f.n, f.l, f.kappa, f.vol, f.m, f.r, f.q_at_zero, false, false, false};
  s.is_reflexive = twist_side(f.cyc.alpha_side) == f.cyc.beta_side;
  s.is_mum = std::all_of(f.cyc.beta_side.begin(), f.cyc.beta_side.end(), [](i64 d) { return d == 1; }) &&
             static_cast<int>(f.cyc.beta_side.size()) == f.n;
  std::vector<std::pair<Rat, int>> pts;
  for (auto &a : f.alpha) pts.emplace_back(a, 0);
  for (auto &b : f.beta) pts.emplace_back(b, 1);
  std::sort(pts.begin(), pts.end());
  s.is_intertwined = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].second == pts[i + 1].second) s.is_intertwined = false;
  return s;
}

std::vector<Rat> series_coefficients(const FamilyParameter &f, int K) {
  std::vector<Rat> A{Rat(1)};
  for (int k = 0; k < K; ++k) {
    Rat x = A.back();
    for (auto &a : f.alpha) x *= a + k;
    for (auto &b : f.beta) x /= b + k;
    A.push_back(x);
  }
  return A;
}

IntPoly q_infinity(const FamilyParameter &f) { return cyclotomic_product(f.cyc.alpha_side); }
IntPoly q_zero(const FamilyParameter &f) { return cyclotomic_product(f.cyc.beta_side); }

} // namespace hgm
