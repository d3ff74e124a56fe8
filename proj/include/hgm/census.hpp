#pragma once

#include "hgm/family.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hgm {

enum class CountMode { Raw, ModNegation };

struct CensusOptions {
  int threads = 1;
  bool primitive_only = true;     // gcd(gamma) = 1
  std::uint64_t budget = 0;       // max parameters examined, 0 = unlimited
  std::string checkpoint_path;    // empty = no checkpointing
};

struct CensusRecord {
  int n = 0;
  CountMode mode = CountMode::ModNegation;
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t total = 0;
  bool partial = false;
};

// cyclotomic indices d with phi(d) <= n
std::vector<i64> cyclotomic_indices(int n);
// all multisets of indices with totient sum n, each sorted ascending
std::vector<std::vector<i64>> cyclotomic_multisets(int n);

// visits every disjoint pair (alpha_side, beta_side) of rank n
void for_each_pair(int n, const std::function<void(const std::vector<i64> &, const std::vector<i64> &)> &fn);

bool gamma_primitive(const std::vector<i64> &alpha_side, const std::vector<i64> &beta_side);

CensusRecord census(int n, CountMode mode, const CensusOptions &opt = {});
// generating-function total of valid parameters of rank n
Int census_total_dp(int n, CountMode mode, bool primitive_only = true);

std::vector<Int> mum_counts(int n_max);
std::uint64_t mum_enumerate(int n);

} // namespace hgm
