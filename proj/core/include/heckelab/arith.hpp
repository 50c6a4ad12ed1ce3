#pragma once

// Elementary integer arithmetic shared by the modules.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace heckelab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Prime factorization by trial division, ascending primes.
std::vector<std::pair<i64, int>> factorize(i64 n);

bool is_prime(i64 n);

// All primes in [lo, hi], ascending.
std::vector<i64> primes_in_range(i64 lo, i64 hi);

bool is_perfect_square(i64 n);

// floor(sqrt(n)) for n >= 0, exact.
i64 isqrt(i64 n);

i64 mod(i64 a, i64 m);

i64 pow_mod(i64 base, i64 exp, i64 m);

// Inverse of a modulo prime p; a must be nonzero mod p.
i64 inv_mod(i64 a, i64 p);

// Quadratic residue test for a mod odd prime p (0 counts as a square).
bool is_square_mod(i64 a, i64 p);

// Fundamental discriminant test (d != 1, d = 1 mod 4 squarefree, or d = 4m with m = 2,3 mod 4 squarefree).
bool is_fundamental_discriminant(i64 d);

// Writes a negative discriminant D = f^2 d_K with d_K fundamental. Requires D < 0, D = 0,1 mod 4.
struct DiscriminantSplit {
  i64 conductor;
  i64 fundamental;
};
DiscriminantSplit split_discriminant(i64 disc);

std::string to_string(i128 v);

}  // namespace heckelab
