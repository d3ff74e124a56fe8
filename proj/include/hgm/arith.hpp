#pragma once

#include "hgm/family.hpp"
#include "hgm/ffield.hpp"
#include "hgm/hodge.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace hgm {

enum class PrimeKind { Good, Tame, Wild };
const char *prime_kind_name(PrimeKind k);

PrimeKind prime_kind(const FamilyParameter &param, const Rat &t, const Int &p);
std::vector<Int> bad_primes(const FamilyParameter &param, const Rat &t);

// Characters: omega(g^k) = zeta_{q-1}^{k*s}, psi(x) = zeta_p^{Tr(b x)}
class CharacterTable {
public:
  CharacterTable(u64 p, int e, u64 s = 1, u64 b = 1);
  const FiniteField &field() const { return *ff_; }
  u64 q() const { return ff_->q(); }
  u64 p() const { return ff_->p(); }
  u64 s() const { return s_; }
  u64 b() const { return b_; }
  // omega exponent of x != 0, as an element of Z/(q-1)
  u64 omega_exp(u64 x) const;
  u64 psi_exp(u64 x) const { return ff_->trace(ff_->mul(b_, x)); }

private:
  std::shared_ptr<FiniteField> ff_;
  u64 s_, b_;
};

// element of Z[zeta_N] stored on the power basis of Z[x]/(x^N - 1)
struct CyclotomicElement {
  u64 N = 1;
  std::vector<Int> c;

  CyclotomicElement() = default;
  explicit CyclotomicElement(u64 n) : N(n), c(n, 0) {}
  static CyclotomicElement constant(u64 n, const Int &v);

  CyclotomicElement operator*(const CyclotomicElement &o) const;
  CyclotomicElement operator+(const CyclotomicElement &o) const;
  CyclotomicElement conj() const;
  // canonical residues modulo Phi_N, degree < phi(N)
  IntPoly reduced() const;
  bool equals(const CyclotomicElement &o) const { return reduced() == o.reduced(); }
  bool equals(const Int &v) const { return reduced() == (v == 0 ? IntPoly{} : IntPoly{v}); }
};

// g(omega^a, psi) in Z[zeta_{(q-1)p}]
CyclotomicElement gauss_sum(const CharacterTable &ctx, u64 a);

// Jacobi-sum trace at a split prime power, exact via reduction modulo several primes
Int trace_split(const FamilyParameter &param, const Rat &t, u64 q);
Int trace_split(const FamilyParameter &param, const Rat &t, const CharacterTable &ctx);

class PadicContext {
public:
  PadicContext(u64 p, int digits);
  u64 p() const { return p_; }
  int digits() const { return digits_; }
  u64 modulus() const { return mod_; }
  // inputs are reduced modulo this (p^(digits+1) for p = 2)
  u64 input_modulus() const { return extmod_; }
  // Gamma_p(n) mod p^digits for an integer n >= 0
  u64 gamma_int(u64 n) const;
  // Gamma_p(k / (q-1)) mod p^digits
  u64 gamma_frac(u64 k, u64 qm1) const;
  // Teichmuller lift of a unit mod p^digits
  u64 teichmuller(u64 c) const;

private:
  struct Impl;
  u64 p_;
  int digits_;
  u64 mod_ = 0;    // p^digits
  u64 extmod_ = 0; // p^(digits+1) when p = 2, else mod_
  std::shared_ptr<const Impl> impl_;
};

// largest allowed working modulus in bits
constexpr int kPadicCapBits = 61;
// largest q handled by the Gauss-sum expansion (memory is linear in q)
constexpr u64 kTraceMaxQ = 1ULL << 24;

struct TraceRequest {
  GammaVector gamma; // possibly erased
  int phi0 = 0;
  Rat arg;           // epsilon * M' * t, a p-adic unit
  u64 p = 0;
  int e = 1;
  Int bound;         // Deligne bound for the snap
};

Int gamma_form_trace(const TraceRequest &req);

// p-adic path, any power of a good prime
Int trace(const FamilyParameter &param, const Rat &t, u64 p, int e);
// erased trace at the bottom of the wild ramp
Int trace_erased(const FamilyParameter &param, const Rat &t, u64 p, int e);

// invariants used by both the erased trace and the wild local data
Rat gamma_scale(const GammaVector &gamma); // epsilon * prod |gamma_j|^gamma_j
i64 k_crit(const GammaVector &gamma, u64 p);
GammaVector erase_gamma(const GammaVector &gamma, u64 p);
int erased_degree(const FamilyParameter &param, u64 p);

// Deligne bound deg * q^{w/2}, rounded up
Int deligne_bound(int degree, int w, u64 q);

// run the engine on the reduction of t even when p divides t - 1 (degeneration)
Int trace_degenerate(const FamilyParameter &param, const Rat &t, u64 p, int e);

} // namespace hgm
