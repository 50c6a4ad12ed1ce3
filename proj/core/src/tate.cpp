#include "heckelab/tate.hpp"

#include <algorithm>
#include <numeric>

#include "heckelab/error.hpp"

namespace heckelab {

std::vector<SubgroupTriple> cyclic_subgroups(std::int64_t N) {
  if (N < 1) throw DomainError("cyclic_subgroups: N must be >= 1");
  std::vector<SubgroupTriple> out;
  for (std::int64_t r = N; r >= 1; --r) {
    if (N % r != 0) continue;
    const std::int64_t t = N / r;
    for (std::int64_t s = 0; s < t; ++s)
      if (std::gcd(std::gcd(r, s), t) == 1) out.push_back({r, s, t, N});
  }
  return out;
}

std::vector<ExactRational> valuation_orbit(const ExactRational& v, std::int64_t N) {
  if (v.sign() >= 0) throw DomainError("valuation_orbit: v(j) must be negative, got " + v.to_string());
  std::vector<ExactRational> out;
  for (const SubgroupTriple& g : cyclic_subgroups(N)) out.push_back(g.ratio() * v);
  return out;
}

bool no_collision_check(const ExactRational& v, const ExactRational& x, std::int64_t N) {
  const std::vector<ExactRational> orbit = valuation_orbit(v, N);
  return std::find(orbit.begin(), orbit.end(), x) == orbit.end();
}

BadReductionConstant badred_constant(const ExactRational& v, const ExactRational& x) {
  if (v.sign() >= 0) throw DomainError("badred_constant: v must be negative");
  if (x.sign() == 0) throw DomainError("badred_constant: x must be nonzero");
  const ExactRational n = abs(ExactRational(v.num()) * ExactRational(v.den()) * ExactRational(x.num()) *
                              ExactRational(x.den()));
  return {n.num(), -x};
}

}  // namespace heckelab
