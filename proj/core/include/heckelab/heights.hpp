#pragma once

// Archimedean height sums over Hecke orbits.
//
// For a base point y whose j-invariant is a rational integer every point of
// T_N*y is an algebraic integer, so the cusp section Delta meets the orbit at
// no finite place and the height of T_N*y reduces to the archimedean sum
//     H_N = - sum_i log ||Delta||(tau_i),
// which is compared against 6 e_N log N. All of this is over Q (d = d' = 1).

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heckelab/hecke.hpp"
#include "heckelab/numerics.hpp"

namespace heckelab {

struct HeightSeriesPoint {
  std::int64_t N;
  std::int64_t e_N;
  BigFloat value;       // H_N
  BigFloat normalized;  // H_N / (6 e_N log N)
  std::vector<std::string> warnings;
};

// Sum in a fixed pairwise tree so the result does not depend on scheduling.
BigFloat pairwise_sum(const std::vector<BigFloat>& terms);

HeightSeriesPoint cusp_height(const UpperHalfPoint& y_tau, std::int64_t N, const Precision& prec = Precision());

// S_N = sum_i log(|z - j(tau_i)| ||Delta||(tau_i)).
BigFloat local_arch_sum(const UpperHalfPoint& y_tau, const BigComplex& z, std::int64_t N,
                        const Precision& prec = Precision());

struct PhiValue {
  mpz_class value;          // prod_{alpha in T_N*y} (z - alpha), rounded
  unsigned bits_used;       // precision at which rounding succeeded
  double residual;          // distance of the product to the returned integer
};

// True for the thirteen rational CM j-invariants.
bool is_rational_cm_j(std::int64_t j);

// Product over the orbit, evaluated numerically and rounded to Z. Precision is
// estimated from log|product| and then doubled until the rounding residual is
// below 1e-6. CM bases are refused unless allow_cm_base is set.
PhiValue phi_value(std::int64_t y, std::int64_t z, std::int64_t N, const Precision& prec = Precision(),
                   bool allow_cm_base = false);

struct IdentityResidual {
  double residual;   // (log|phi| - S_N)/(6 e_N log N) - 1
  BigFloat log_phi;
  BigFloat local_sum;
  unsigned phi_bits;
};

IdentityResidual global_identity_residual(std::int64_t y, std::int64_t z, std::int64_t N,
                                          const Precision& prec = Precision());

struct IntegralEstimate {
  double estimate;
  double std_error;
  std::size_t samples;
  std::size_t rejected;  // samples too close to a preimage of z
};

// Monte-Carlo mean of log(|z - j| ||Delta||) over the fundamental domain with
// the normalized hyperbolic measure.
IntegralEstimate heuristic_integral(const BigComplex& z, std::size_t samples, const Precision& prec = Precision(),
                                    std::uint64_t seed = 0);

}  // namespace heckelab
