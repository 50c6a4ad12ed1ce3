#pragma once

// Valuations of j along T_N on a Tate curve. Exact arithmetic only.

#include <cstdint>
#include <vector>

#include "heckelab/rational.hpp"

namespace heckelab {

// Cyclic subgroup of order N of K*/q^Z, written (r, s, t) with rt = N, 0 <= s < t.
struct SubgroupTriple {
  std::int64_t r, s, t, N;
  [[nodiscard]] ExactRational ratio() const { return {r, t}; }
  friend bool operator==(const SubgroupTriple&, const SubgroupTriple&) = default;
};

// All triples with gcd(r, s, t) = 1, ordered by decreasing r then s.
std::vector<SubgroupTriple> cyclic_subgroups(std::int64_t N);

// {(r/t) v}; DomainError unless v < 0. Same order as cyclic_subgroups.
std::vector<ExactRational> valuation_orbit(const ExactRational& v, std::int64_t N);

// True iff x is not in valuation_orbit(v, N).
bool no_collision_check(const ExactRational& v, const ExactRational& x, std::int64_t N);

struct BadReductionConstant {
  std::int64_t n;                   // |a b c d| for v = c/d, x = a/b
  ExactRational valuation_floor;    // v(z^-1) = -x
};

// Requires v < 0 and x finite and nonzero.
BadReductionConstant badred_constant(const ExactRational& v, const ExactRational& x);

}  // namespace heckelab
