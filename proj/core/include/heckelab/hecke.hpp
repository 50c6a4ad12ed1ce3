#pragma once

// Degree-N Hecke cosets, orbits T_N*y on X(1), and orbit statistics.

#include <cstdint>
#include <vector>

#include "heckelab/numerics.hpp"

namespace heckelab {

// Coset of (alpha beta; 0 delta): alpha*delta = N, 0 <= beta < delta, gcd(alpha, beta, delta) = 1.
struct CosetTriple {
  std::int64_t alpha = 1;
  std::int64_t beta = 0;
  std::int64_t delta = 1;
  std::int64_t N = 1;

  [[nodiscard]] ModularMatrix matrix() const { return {alpha, beta, 0, delta}; }
  friend bool operator==(const CosetTriple&, const CosetTriple&) = default;
};

// All cosets in lexicographic (alpha, beta) order; size e_N.
std::vector<CosetTriple> coset_reps(std::int64_t N);

// N * prod_{p | N} (1 + 1/p)
std::int64_t e_N(std::int64_t N);

struct OrbitPoint {
  CosetTriple coset;
  UpperHalfPoint tau;  // reduced
  BigComplex j;
  BigFloat log_petersson;  // log ||Delta||(tau)
};

// T_N*y with multiplicity: exactly e_N points in coset order.
struct HeckeOrbit {
  std::int64_t N;
  UpperHalfPoint base;
  Precision prec;
  std::vector<OrbitPoint> points;
};

HeckeOrbit hecke_orbit(const UpperHalfPoint& tau, std::int64_t N, const Precision& prec = Precision());

// Just the j-values of T_N*y, in coset order.
std::vector<BigComplex> orbit_j_values(const UpperHalfPoint& tau, std::int64_t N, const Precision& prec = Precision());

// Relative tolerance used for j-multiset comparisons: 2^-(bits-20).
double multiset_tolerance(const Precision& prec);

// |a - b| <= tol * max(1, |a|, |b|)
bool j_close(const BigComplex& a, const BigComplex& b, double rel_tol);

struct SymmetryReport {
  bool passed = true;
  std::vector<CosetTriple> offending;
};

// For every alpha in T_N*y, checks that j(y) occurs in T_N*alpha.
SymmetryReport orbit_symmetry_check(const UpperHalfPoint& y_tau, std::int64_t N,
                                    const Precision& prec = Precision());

struct EquiFraction {
  double fraction;    // share of orbit points with Im >= threshold
  double prediction;  // min(1, (3/pi)/threshold)
};

EquiFraction equi_fraction(const HeckeOrbit& orbit, double im_threshold);

std::size_t close_point_count(const HeckeOrbit& orbit, const BigComplex& z, double eta);

}  // namespace heckelab
