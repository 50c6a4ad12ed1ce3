#pragma once

// CM points as fixed points of integral matrices, condition (P), and the
// archimedean near-CM and density experiments.

#include <cstdint>
#include <optional>
#include <vector>

#include "heckelab/numerics.hpp"
#include "heckelab/rational.hpp"

namespace heckelab {

struct CmPoint {
  ModularMatrix matrix;  // det M, fixes tau0
  std::int64_t trace;    // t, with t^2 < 4M
  UpperHalfPoint tau0;
  std::int64_t conductor;         // f
  std::int64_t fundamental_disc;  // d_K, t^2 - 4M = f^2 d_K
  std::int64_t M;
  BigComplex j;
};

struct ConditionPVerdict {
  std::int64_t N;
  std::int64_t p;
  bool satisfies;
};

// p odd: N is not a square mod p. p = 2: N = 3 mod 4.
ConditionPVerdict condition_p(std::int64_t N, std::int64_t p);

struct OrderIndex {
  std::int64_t conductor;         // index of Z[alpha] in the maximal order
  std::int64_t fundamental_disc;  // d_K
};

// alpha^2 - t alpha + N = 0; splits t^2 - 4N = f^2 d_K. DomainError if t^2 >= 4N.
OrderIndex order_index(std::int64_t t, std::int64_t N);

struct LemmaCheck {
  bool passed = true;
  std::size_t checked = 0;  // (N, t) pairs examined
  struct Counterexample {
    std::int64_t N, t, conductor;
  };
  std::optional<Counterexample> counterexample;
};

// For every N <= n_max satisfying (P) and every t^2 < 4N: gcd(f, p) = 1.
LemmaCheck condition_p_lemma_check(std::int64_t p, std::int64_t n_max);

// Axis-parallel box in H with rational corners; y_min > 0.
struct HalfPlaneBox {
  ExactRational x_min, x_max, y_min, y_max;
};

struct CoefficientBound {
  double k0 = 0;                // max(|a|,|b|,|c|,|d|)/sqrt(N) over the enumeration
  std::size_t matrices = 0;     // det-N matrices mapping a sample of the box into the box
  bool im_identity_exact = true;  // Im f(tau) = N Im(tau)/|c tau + d|^2 on every sample
};

// grid: samples per side (grid + 1 points each way).
CoefficientBound coefficient_bound_check(const HalfPlaneBox& box, std::int64_t N, int grid = 8);

// Fixed point in H of a non-scalar matrix; nullopt when (a+d)^2 >= 4 det.
std::optional<CmPoint> fixed_point(const ModularMatrix& matrix, const Precision& prec = Precision());

// One reduced CM point per j-value for all M <= M_max, in (M, t) order.
std::vector<CmPoint> enumerate_cm_points(std::int64_t M_max, const Precision& prec = Precision());

struct Separation {
  double c_obs;
  std::size_t first, second;  // indices into the input of the minimizing pair
};

// min over pairs with |j| <= j_box_bound of |j1 - j2| sqrt(M1 M2) (sqrt M1 + sqrt M2).
Separation min_separation_constant(const std::vector<CmPoint>& points, double j_box_bound);

struct NearCm {
  CmPoint point;
  double displacement;  // |tau - f(tau)|
  double distance;      // |tau - tau0|
  double ratio;         // distance / displacement (0 when tau is the fixed point)
  double k1;            // 1 / sqrt(Im tau Im f(tau))
};

// Recovers the fixed point of `matrix` near tau and verifies
// |tau - tau0| <= K1 sqrt(N) |tau - f(tau)|. nullopt for non-elliptic matrices;
// DomainError if |tau - f(tau)| exceeds max_displacement; ThresholdError when
// the bound fails.
std::optional<NearCm> near_cm_finder(const UpperHalfPoint& tau, const UpperHalfPoint& coset_image,
                                     const ModularMatrix& matrix, const Precision& prec = Precision(),
                                     double max_displacement = 1.0);

struct DensityRow {
  std::int64_t N;
  BigFloat best_distance;  // min over T_N*y of |alpha - z|
  bool member;             // best_distance <= N^-D
};

struct DensityExperiment {
  std::vector<DensityRow> rows;
  std::size_t members = 0;
  double density = 0;  // members / N_max
};

DensityExperiment density_experiment(const UpperHalfPoint& y_tau, const BigComplex& z, int D, std::int64_t N_max,
                                     const Precision& prec = Precision());

}  // namespace heckelab
