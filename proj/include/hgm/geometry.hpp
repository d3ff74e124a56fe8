#pragma once

#include "hgm/family.hpp"
#include "hgm/matrix.hpp"
#include "hgm/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgm {

// Laurent polynomial sum_i u^{k_i} x^{m_{*i}} on the torus (G_m)^d, d = l - 2
struct ToricModel {
  GammaVector gamma;
  IntMatrix m;          // d x l
  std::vector<Int> k;   // gamma . k = 1
  Rat u_factor;         // u = u_factor * t
  std::size_t dim() const { return m.rows(); }
  Rat u(const Rat &t) const { return u_factor * t; }
  std::string equation() const;
};

// y_j with sum y_j = 0 and prod_{gamma>0} y^gamma = u prod_{gamma<0} y^{-gamma}
struct BcmModel {
  GammaVector gamma;
  std::vector<i64> lhs, rhs; // exponent vectors of the two monomials
  i64 degree = 0;
  Rat u_factor;
  std::string equation() const;
};

ToricModel toric_model(const GammaVector &gamma);
BcmModel bcm_model(const GammaVector &gamma);
Rat toric_u_factor(const GammaVector &gamma);
// empty string if valid, else the failed invariant
std::string validate(const GammaVector &gamma, const IntMatrix &m, const std::vector<Int> &k);

struct PolytopeStats {
  std::vector<Int> vols;
  Int total;
  Int chi;
  std::optional<Int> genus, punctures;
};
PolytopeStats polytope_stats(const ToricModel &model);

using Splicing = std::pair<GammaVector, GammaVector>;
std::vector<Splicing> splicings(const GammaVector &gamma);

constexpr u64 kCountBudget = 1ULL << 30;
constexpr u64 kCountMaxQ = 1ULL << 14;

// points of the toric model over F_q on (F_q^x)^d; p must be good
u64 count_points(const ToricModel &model, const Rat &t, u64 q, int threads = 1);
u64 count_points(const GammaVector &gamma, const Rat &t, u64 q, int threads = 1);

// a_p of y^2 = x(1-x)(x-t)
i64 elliptic_ap(const Rat &t, u64 p);

struct TrinomialModel {
  i64 a = 1, b = 1;
  int s = 1;          // sign of the middle coefficient
  int ei = 0, ej = 1, ek = 0; // powers of t on the three monomials
  // y^a (1-y)^b - a^a b^b (a+b)^{-(a+b)} t
  RatPoly bcm(const Rat &t) const;
  // b t^ei x^{a+b} + s (a+b) t^ej x^b + a t^ek
  RatPoly toric(const Rat &t) const;
  std::string toric_string() const;
};
TrinomialModel trinomial_model(i64 a, i64 b);

// distinct roots in F_q of a polynomial with p-integral coefficients
u64 root_count(const RatPoly &f, u64 q);
// ord_p of the polynomial discriminant
i64 discriminant_valuation(const RatPoly &f, const Int &p);
// ord_p of the discriminant of Q_p[x]/(f) when every Newton segment is tamely ramified
// and, at slope 0 with a double root, the local factor is a node
i64 algebra_discriminant_valuation(const RatPoly &f, const Int &p);

} // namespace hgm
