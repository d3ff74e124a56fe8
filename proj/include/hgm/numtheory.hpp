#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hgm {

using Int = mpz_class;
using Rat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

i64 totient(i64 n);
int mobius(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<Int> prime_factors(Int n);
bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
i64 lcm64(i64 a, i64 b);

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
// inverse of a unit modulo m (m need not be prime)
u64 invmod(u64 a, u64 m);

// ord_p of a nonzero integer/rational; zero gives a large sentinel
constexpr int kInfValuation = 1 << 28;
int valuation(const Int &x, const Int &p);
int valuation(const Rat &x, const Int &p);
inline int valuation(i64 x, i64 p) { return valuation(Int(x), Int(p)); }

// reduction of a p-integral rational modulo m (denominator must be a unit)
u64 reduce_mod(const Rat &x, u64 m);
u64 reduce_mod(const Int &x, u64 m);

// parses "a", "-a", "a/b"
Rat parse_rational(const std::string &s);
std::string to_string(const Rat &x);
std::string to_string(const Int &x);

Int ipow(const Int &b, unsigned long e);
Rat rpow(const Rat &b, long e);

// smallest q = p^e check; returns (p, e) or (0, 0)
std::pair<u64, int> prime_power(u64 q);

} // namespace hgm
