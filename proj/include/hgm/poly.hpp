#pragma once

#include "hgm/numtheory.hpp"

#include <string>
#include <vector>

namespace hgm {

// dense integer polynomial, coefficient of x^i at index i
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

void trim(IntPoly &f);
void trim(RatPoly &f);
IntPoly poly_mul(const IntPoly &a, const IntPoly &b);
IntPoly poly_add(const IntPoly &a, const IntPoly &b);
// exact division; throws if the remainder is nonzero
IntPoly poly_divexact(const IntPoly &a, const IntPoly &b);
RatPoly to_rat(const IntPoly &f);
// returns false if some coefficient is not integral
bool to_int(const RatPoly &f, IntPoly &out);

const IntPoly &cyclotomic(i64 d);
IntPoly cyclotomic_product(const std::vector<i64> &ds);

RatPoly rpoly_mul(const RatPoly &a, const RatPoly &b);
void rpoly_divmod(const RatPoly &a, const RatPoly &b, RatPoly &q, RatPoly &r);
RatPoly rpoly_gcd(RatPoly a, RatPoly b);
RatPoly rpoly_derivative(const RatPoly &f);
Rat resultant(const RatPoly &f, const RatPoly &g);
Rat discriminant(const RatPoly &f);

std::string poly_to_string(const IntPoly &f, const std::string &var = "x");

} // namespace hgm
