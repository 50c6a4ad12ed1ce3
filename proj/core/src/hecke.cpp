#include "heckelab/hecke.hpp"

#include <cmath>
#include <numeric>

#include "heckelab/arith.hpp"
#include "heckelab/error.hpp"
#include "heckelab/parallel.hpp"

namespace heckelab {

std::vector<CosetTriple> coset_reps(std::int64_t N) {
  if (N < 1) throw DomainError("coset_reps: N must be >= 1");
  std::vector<CosetTriple> out;
  out.reserve(static_cast<std::size_t>(e_N(N)));
  for (std::int64_t alpha = 1; alpha <= N; ++alpha) {
    if (N % alpha != 0) continue;
    const std::int64_t delta = N / alpha;
    for (std::int64_t beta = 0; beta < delta; ++beta)
      if (std::gcd(std::gcd(alpha, beta), delta) == 1) out.push_back({alpha, beta, delta, N});
  }
  return out;
}

std::int64_t e_N(std::int64_t N) {
  if (N < 1) throw DomainError("e_N: N must be >= 1");
  std::int64_t e = N;
  for (const auto& [p, k] : factorize(N)) e = e / p * (p + 1);
  return e;
}

HeckeOrbit hecke_orbit(const UpperHalfPoint& tau, std::int64_t N, const Precision& prec) {
  const std::vector<CosetTriple> cosets = coset_reps(N);
  const UpperHalfPoint base = tau.with_precision(prec.bits + 32);
  auto points = ordered_map(cosets.size(), [&](std::size_t i) {
    const CosetTriple& c = cosets[i];
    PointValues v = eval_point(apply(c.matrix(), base), prec);
    return OrbitPoint{c, std::move(v.reduced), std::move(v.j), std::move(v.log_petersson)};
  });
  return {N, tau, prec, std::move(points)};
}

std::vector<BigComplex> orbit_j_values(const UpperHalfPoint& tau, std::int64_t N, const Precision& prec) {
  const std::vector<CosetTriple> cosets = coset_reps(N);
  const UpperHalfPoint base = tau.with_precision(prec.bits + 32);
  return ordered_map(cosets.size(), [&](std::size_t i) { return eval_j(apply(cosets[i].matrix(), base), prec); });
}

double multiset_tolerance(const Precision& prec) {
  return std::ldexp(1.0, -static_cast<int>(prec.bits) + 20);
}

bool j_close(const BigComplex& a, const BigComplex& b, double rel_tol) {
  BigFloat scale = abs(a);
  const BigFloat sb = abs(b);
  if (sb > scale) scale = sb;
  if (scale < 1.0) scale = BigFloat(1L, scale.precision());
  const BigFloat diff = abs(a - b);
  return diff <= scale * BigFloat(rel_tol, scale.precision());
}

SymmetryReport orbit_symmetry_check(const UpperHalfPoint& y_tau, std::int64_t N, const Precision& prec) {
  const HeckeOrbit orbit = hecke_orbit(y_tau, N, prec);
  const BigComplex jy = eval_j(y_tau, prec);
  const double tol = multiset_tolerance(prec);
  SymmetryReport report;
  for (const OrbitPoint& p : orbit.points) {
    const HeckeOrbit back = hecke_orbit(p.tau, N, prec);
    bool found = false;
    for (const OrbitPoint& q : back.points) {
      if (j_close(q.j, jy, tol)) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.passed = false;
      report.offending.push_back(p.coset);
    }
  }
  return report;
}

EquiFraction equi_fraction(const HeckeOrbit& orbit, double im_threshold) {
  if (!(im_threshold > 0.0)) throw DomainError("equi_fraction: im_threshold must be > 0");
  std::size_t above = 0;
  for (const OrbitPoint& p : orbit.points)
    if (p.tau.im() >= im_threshold) ++above;
  const double fraction = static_cast<double>(above) / static_cast<double>(orbit.points.size());
  const double prediction = std::min(1.0, (3.0 / M_PI) / im_threshold);
  return {fraction, prediction};
}

std::size_t close_point_count(const HeckeOrbit& orbit, const BigComplex& z, double eta) {
  if (!(eta > 0.0)) throw DomainError("close_point_count: eta must be > 0");
  std::size_t count = 0;
  for (const OrbitPoint& p : orbit.points)
    if (abs(p.j - z) <= eta) ++count;
  return count;
}

}  // namespace heckelab
