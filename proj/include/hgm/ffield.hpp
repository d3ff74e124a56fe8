#pragma once

#include "hgm/numtheory.hpp"

#include <cstdint>
#include <vector>

namespace hgm {

// F_q with q = p^e, elements encoded as integers 0..q-1 whose base-p digits are
// coordinates in a polynomial basis; 0 is zero and 1 is one. The basis polynomial
// is chosen so that x is a primitive element, giving log/exp tables.
class FiniteField {
public:
  FiniteField(u64 p, int e);

  u64 p() const { return p_; }
  int e() const { return e_; }
  u64 q() const { return q_; }

  u64 add(u64 a, u64 b) const;
  u64 sub(u64 a, u64 b) const;
  u64 neg(u64 a) const { return sub(0, a); }
  u64 mul(u64 a, u64 b) const {
    if (!a || !b) return 0;
    u64 s = log_[a] + log_[b];
    return exp_[s >= q_ - 1 ? s - (q_ - 1) : s];
  }
  u64 inv(u64 a) const { return exp_[(q_ - 1 - log_[a]) % (q_ - 1)]; }
  u64 pow(u64 a, i64 k) const;
  // discrete log to the base of the fixed primitive element; a != 0
  u64 log(u64 a) const { return log_[a]; }
  u64 exp(u64 k) const { return exp_[k % (q_ - 1)]; }
  // absolute trace to F_p
  u64 trace(u64 a) const { return tr_[a]; }
  // image of an integer or p-integral rational in the prime field
  u64 from_int(const Int &x) const { return reduce_mod(x, p_); }
  u64 from_rat(const Rat &x) const { return reduce_mod(x, p_); }
  const std::vector<u64> &modulus() const { return modulus_; }

private:
  u64 p_, q_;
  int e_;
  std::vector<u64> modulus_; // monic, low to high, degree e
  std::vector<u64> exp_, log_, tr_;
  std::vector<u64> ppow_;
};

} // namespace hgm
