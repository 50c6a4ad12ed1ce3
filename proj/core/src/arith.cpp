#include "heckelab/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "heckelab/error.hpp"

namespace heckelab {

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n <= 0) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> primes_in_range(i64 lo, i64 hi) {
  std::vector<i64> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<i64>(lo, 2);
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (i64 p = 2; p * p <= hi; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (i64 m = p * p; m <= hi; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  for (i64 n = lo; n <= hi; ++n)
    if (!composite[static_cast<std::size_t>(n)]) out.push_back(n);
  return out;
}

i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt of negative");
  i64 r = static_cast<i64>(__builtin_sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  const i64 r = isqrt(n);
  return r * r == n;
}

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 pow_mod(i64 base, i64 exp, i64 m) {
  i128 result = 1 % m;
  i128 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<i64>(result);
}

i64 inv_mod(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) throw DomainError("inv_mod: not invertible");
  i64 old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) throw DomainError("inv_mod: not invertible");
  return mod(old_s, p);
}

bool is_square_mod(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return true;
  return pow_mod(a, (p - 1) / 2, p) == 1;
}

namespace {

bool squarefree(i64 n) {
  for (const auto& [p, e] : factorize(n < 0 ? -n : n))
    if (e > 1) return false;
  return true;
}

}  // namespace

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  const i64 r = mod(d, 4);
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  const i64 m = d / 4;
  const i64 rm = mod(m, 4);
  return (rm == 2 || rm == 3) && squarefree(m);
}

DiscriminantSplit split_discriminant(i64 disc) {
  if (disc >= 0) throw DomainError("split_discriminant: discriminant must be negative");
  if (mod(disc, 4) != 0 && mod(disc, 4) != 1)
    throw ValidationError("split_discriminant: not a discriminant (must be 0 or 1 mod 4)");
  // |disc| = s * k^2 with s squarefree.
  i64 s = 1, k = 1;
  for (const auto& [p, e] : factorize(-disc)) {
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) s *= p;
  }
  const i64 d0 = -s;
  if (mod(d0, 4) == 1) return {k, d0};
  // d0 = 2,3 mod 4: fundamental is 4 d0, and k must be even since disc = 0,1 mod 4.
  return {k / 2, 4 * d0};
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace heckelab
