#pragma once

#include "hgm/family.hpp"
#include "hgm/matrix.hpp"

namespace hgm {

struct LeveltTriple {
  RatMatrix h_inf, h_1, h_0;
};

enum class Classification { Orthogonal, Symplectic };
enum class Cusp { Zero, Infinity };

const char *classification_name(Classification c);

RatMatrix companion(const IntPoly &monic);
LeveltTriple levelt(const FamilyParameter &param);
// returns a description of the first failed invariant, empty if all hold
std::string check_levelt(const FamilyParameter &param, const LeveltTriple &t);

Classification classify(const FamilyParameter &param);

int drop_rank(const FamilyParameter &param, Cusp cusp, i64 k);
int drop_rank_matrix(const FamilyParameter &param, Cusp cusp, i64 k);
int drop_rank_eigen(const FamilyParameter &param, Cusp cusp, i64 k);

} // namespace hgm
