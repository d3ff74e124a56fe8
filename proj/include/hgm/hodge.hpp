#pragma once

#include "hgm/family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hgm {

struct ZigzagPoint {
  Rat value;
  bool is_alpha;
  int height;
};

struct ZigzagDiagram {
  std::vector<ZigzagPoint> points;
};

struct HodgeData {
  std::vector<int> h; // (h^{w,0}, ..., h^{0,w})
  int w = 0;
  int phi0 = 0;
  std::optional<int> sigma;

  int rank() const;
  std::string to_string() const;
};

ZigzagDiagram zigzag(const FamilyParameter &param);
HodgeData hodge_vector(const FamilyParameter &param);
// Hodge vector straight from the cyclotomic sides, no FamilyParameter needed
HodgeData hodge_from_sides(const std::vector<i64> &alpha_side, const std::vector<i64> &beta_side);

HodgeData hodge_vector_at_one(const HodgeData &generic);
HodgeData hodge_vector_at_one(const FamilyParameter &param);

GammaVector hypersurface_gamma(int delta, int kappa);

struct BettiData {
  Int b;
  Int h_top;
};
BettiData betti_primitive(int delta, int kappa);

// comma-joined serialization used as map key
std::string hodge_key(const std::vector<int> &h);

} // namespace hgm
