#pragma once

#include "hgm/arith.hpp"
#include "hgm/family.hpp"
#include "hgm/hodge.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hgm {

enum class Provenance { Computed, ErasedPartial, Fixture, Degeneration };
const char *provenance_name(Provenance p);
Provenance parse_provenance(const std::string &s);

struct EulerFactor {
  u64 p = 0;
  IntPoly poly; // 1 + a_1 x + ...; empty when only the degree is known
  int degree = 0;
  Provenance provenance = Provenance::Computed;
  bool known() const { return !poly.empty(); }
};

// ---------------------------------------------------------------- traces and cache

// On-disk memo. Lines are `param|t|p|e|trace` or `param|t|p|coeffs|c_p|provenance`.
class Cache {
public:
  explicit Cache(std::string path);
  const std::string &path() const { return path_; }
  std::optional<Int> trace(const std::string &param, const Rat &t, u64 p, int e) const;
  void put_trace(const std::string &param, const Rat &t, u64 p, int e, const Int &v);
  struct FactorRecord {
    IntPoly poly;
    std::optional<int> c_p;
    Provenance provenance;
  };
  std::optional<FactorRecord> factor(const std::string &param, const Rat &t, u64 p) const;
  void put_factor(const std::string &param, const Rat &t, u64 p, const FactorRecord &rec);
  std::size_t size() const;

private:
  void load();
  void append(const std::string &line);
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, Int> traces_;
  std::map<std::string, FactorRecord> factors_;
};

// rewrites a cache file sorted and deduplicated; conflicting records are an error
std::size_t cache_compact(const std::string &path);

struct LContext {
  Cache *cache = nullptr;
  int threads = 1;
};

Int cached_trace(const FamilyParameter &f, const Rat &t, u64 p, int e, const LContext &ctx);

// ---------------------------------------------------------------- Frobenius polynomials

// coefficients 1 + a_1 x + ... + a_d x^d from traces c_1..c_d (exp identity)
IntPoly poly_from_traces(const std::vector<Int> &traces, int degree);
// c_1..c_count from a polynomial with constant term 1
std::vector<Int> traces_from_poly(const IntPoly &f, int count);
// Newton identities plus the functional equation a_{n-e} = eps a_e p^{(n-2e)w/2};
// for even w, traces past n/2 are requested until eps is pinned down
IntPoly assemble_frobenius(int n, int w, u64 p, const std::function<Int(int)> &trace_at, int *eps_out = nullptr);

// empty string when every complex root has |x| = p^{-w/2} within tol
std::string check_root_modulus(const IntPoly &f, u64 p, int w, double tol = 1e-9);

struct NewtonHodgeResult {
  bool ok = true;
  int failed_index = -1;
  std::vector<i64> bounds; // lower bounds for ord_p(a_k), k = 0..deg
  std::string detail;
};
NewtonHodgeResult newton_over_hodge_check(const IntPoly &f, const HodgeData &h, u64 p);

EulerFactor frobenius_poly(const FamilyParameter &f, const Rat &t, u64 p, const LContext &ctx = {});

// ---------------------------------------------------------------- bad primes

struct Fixture {
  std::string param; // FamilyParameter::key()
  Rat t;
  u64 p = 0;
  std::optional<IntPoly> poly;
  std::optional<int> c_p;
  std::string source;
};

class FixtureTable {
public:
  static const int kVersion = 1;
  // table seeded with the published local data
  static FixtureTable builtin();
  void add(const Fixture &f);
  // JSON array of {param, t, p, poly?, c_p?, source?}
  void load_json(const std::string &path);
  const Fixture *find(const FamilyParameter &f, const Rat &t, u64 p) const;
  const std::vector<Fixture> &all() const { return items_; }

private:
  std::vector<Fixture> items_;
};

Rat s_value(i64 d, u64 p);

struct SigmaProfile {
  std::vector<Rat> s_alpha, s_beta;
  Int sigma_inf, sigma_0, sigma_k;
  i64 k = 0, k_crit = 0, k_inf = 0, k_zero = 0;
};
SigmaProfile sigma_profile(const FamilyParameter &f, u64 p, i64 k);

enum class Exactness { Exact, Conjectural, BoundOnly, Fixture, Unknown };
const char *exactness_name(Exactness e);

struct LocalData {
  u64 p = 0;
  PrimeKind kind = PrimeKind::Good;
  std::optional<int> c_p; // the value (Exact/Conjectural/Fixture) or the upper bound (BoundOnly)
  Exactness exactness = Exactness::Exact;
  EulerFactor factor;
  std::optional<SigmaProfile> sigma;
  std::string note;
};

LocalData tame_local(const FamilyParameter &f, const Rat &t, u64 p, const LContext &ctx = {});
LocalData wild_local(const FamilyParameter &f, const Rat &t, u64 p, const Fixture *override_fixture = nullptr,
                     const LContext &ctx = {});
// dispatches by prime kind and applies fixtures (a disagreeing fixture is an error)
LocalData local_data(const FamilyParameter &f, const Rat &t, u64 p, const FixtureTable &fx, const LContext &ctx = {});

struct ConductorResult {
  Int value = 1;
  bool exact = true;
  bool uses_fixtures = false;
  std::vector<LocalData> locals;
};
ConductorResult conductor(const FamilyParameter &f, const Rat &t, const FixtureTable &fx, const LContext &ctx = {});

// ---------------------------------------------------------------- infinity and Dirichlet series

struct GammaFactor {
  char kind = 'R'; // Gamma_R or Gamma_C
  Rat shift;       // Gamma_kind(s + shift)
  int mult = 1;
  bool operator==(const GammaFactor &o) const { return kind == o.kind && shift == o.shift && mult == o.mult; }
};
struct GammaFactorSet {
  int w = 0;
  std::vector<GammaFactor> factors;
  int real_dimension() const;
};
GammaFactorSet gamma_factors(const HodgeData &h, std::optional<int> sigma = std::nullopt);

std::vector<Int> dirichlet_coefficients(const FamilyParameter &f, const Rat &t, u64 n_max, const FixtureTable &fx,
                                        const LContext &ctx = {});

struct SatoTateSample {
  u64 p;
  Int a_p;
  double normalized; // a_p / p^{w/2}
};
std::vector<SatoTateSample> sato_tate_samples(const FamilyParameter &f, const Rat &t, u64 p_max,
                                              const LContext &ctx = {});

// JSON document for external analytic tools
std::string export_json(const FamilyParameter &f, const Rat &t, u64 n_max, const FixtureTable &fx,
                        std::optional<int> sigma, const LContext &ctx = {});

} // namespace hgm
