#pragma once

#include "hgm/numtheory.hpp"
#include "hgm/poly.hpp"

#include <string>
#include <vector>

namespace hgm {

using GammaVector = std::vector<i64>;

struct CyclotomicPair {
  std::vector<i64> alpha_side; // Phi_d factors of the numerator q_inf
  std::vector<i64> beta_side;  // Phi_d factors of the denominator q_0
  bool operator==(const CyclotomicPair &o) const = default;
};

struct FamilyParameter {
  GammaVector gamma;
  CyclotomicPair cyc;
  std::vector<Rat> alpha, beta;
  int n = 0;
  int l = 0;
  int kappa = 0;
  i64 vol = 0;
  i64 m = 1;
  int r = 0;
  int q_at_zero = 1;

  // canonical text form, used for cache and fixture keys
  std::string key() const;
  std::string cyclotomic_string() const;
};

struct FamilyStats {
  int n, l, kappa;
  i64 vol, m;
  int r, q_at_zero;
  bool is_reflexive, is_mum, is_intertwined;
};

FamilyParameter parse_family(const std::string &text);
FamilyParameter from_gamma(GammaVector gamma);
FamilyParameter from_cyclotomic(CyclotomicPair cyc);

CyclotomicPair to_cyclotomic(const GammaVector &gamma);
GammaVector to_gamma(const CyclotomicPair &cyc);
// validates without throwing gcd errors, used by enumeration
GammaVector unreduce(const CyclotomicPair &cyc);

FamilyStats stats(const FamilyParameter &param);
std::vector<i64> twist_side(const std::vector<i64> &side);
std::vector<Rat> series_coefficients(const FamilyParameter &param, int K);

// roots j/d of Phi_d as rationals in (0,1]
std::vector<Rat> cyclotomic_roots(i64 d);
IntPoly q_infinity(const FamilyParameter &param);
IntPoly q_zero(const FamilyParameter &param);

std::string gamma_to_string(const GammaVector &g);

} // namespace hgm
