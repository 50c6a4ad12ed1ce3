#include "heckelab/cm.hpp"

#include <cmath>
#include <numeric>

#include "heckelab/arith.hpp"
#include "heckelab/error.hpp"
#include "heckelab/hecke.hpp"
#include "heckelab/lattices.hpp"
#include "heckelab/parallel.hpp"

namespace heckelab {

ConditionPVerdict condition_p(std::int64_t N, std::int64_t p) {
  if (N < 1) throw DomainError("condition_p: N must be >= 1");
  if (!is_prime(p)) throw DomainError("condition_p: p must be prime");
  if (p == 2) return {N, p, mod(N, 4) == 3};
  return {N, p, !is_square_mod(N, p)};
}

OrderIndex order_index(std::int64_t t, std::int64_t N) {
  if (t * t >= 4 * N) throw DomainError("order_index: need t^2 < 4N");
  const DiscriminantSplit s = split_discriminant(t * t - 4 * N);
  return {s.conductor, s.fundamental};
}

LemmaCheck condition_p_lemma_check(std::int64_t p, std::int64_t n_max) {
  LemmaCheck out;
  for (std::int64_t N = 1; N <= n_max; ++N) {
    if (!condition_p(N, p).satisfies) continue;
    for (std::int64_t t = -isqrt(4 * N - 1); t * t < 4 * N; ++t) {
      ++out.checked;
      const OrderIndex idx = order_index(t, N);
      if (std::gcd(idx.conductor, p) != 1) {
        out.passed = false;
        out.counterexample = LemmaCheck::Counterexample{N, t, idx.conductor};
        return out;
      }
    }
  }
  return out;
}

namespace {

struct RationalComplex {
  ExactRational re, im;
};

RationalComplex mul(const RationalComplex& u, const RationalComplex& v) {
  return {u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re};
}

bool in_box(const HalfPlaneBox& box, const ExactRational& x, const ExactRational& y) {
  return box.x_min <= x && x <= box.x_max && box.y_min <= y && y <= box.y_max;
}

}  // namespace

CoefficientBound coefficient_bound_check(const HalfPlaneBox& box, std::int64_t N, int grid) {
  if (N < 1) throw DomainError("coefficient_bound_check: N must be >= 1");
  if (box.y_min.sign() <= 0 || box.y_min > box.y_max || box.x_min > box.x_max)
    throw DomainError("coefficient_bound_check: box must satisfy 0 < y_min <= y_max, x_min <= x_max");
  if (grid < 1) throw DomainError("coefficient_bound_check: grid must be >= 1");

  std::vector<RationalComplex> samples;
  for (int i = 0; i <= grid; ++i)
    for (int k = 0; k <= grid; ++k)
      samples.push_back({box.x_min + (box.x_max - box.x_min) * ExactRational(i, grid),
                         box.y_min + (box.y_max - box.y_min) * ExactRational(k, grid)});

  // |c tau + d|^2 = N Im(tau)/Im f(tau) <= N y_max/y_min =: R^2 for tau, f(tau) in the box.
  const double r = std::sqrt(static_cast<double>(N) * box.y_max.to_double() / box.y_min.to_double());
  const double xabs = std::max(std::fabs(box.x_min.to_double()), std::fabs(box.x_max.to_double()));
  const auto c_max = static_cast<std::int64_t>(std::floor(r / box.y_min.to_double()));
  CoefficientBound out;
  const double sqrt_n = std::sqrt(static_cast<double>(N));

  auto try_matrix = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    bool hit = false;
    for (const RationalComplex& tau : samples) {
      const RationalComplex num{ExactRational(a) * tau.re + ExactRational(b), ExactRational(a) * tau.im};
      const RationalComplex den{ExactRational(c) * tau.re + ExactRational(d), ExactRational(c) * tau.im};
      const ExactRational den_norm = den.re * den.re + den.im * den.im;
      // f(tau) = num * conj(den) / |den|^2
      const RationalComplex prod = mul(num, {den.re, -den.im});
      const ExactRational fx = prod.re / den_norm;
      const ExactRational fy = prod.im / den_norm;
      if (fy != ExactRational(N) * tau.im / den_norm) out.im_identity_exact = false;
      if (in_box(box, fx, fy)) {
        hit = true;
        break;
      }
    }
    if (!hit) return;
    ++out.matrices;
    const std::int64_t m = std::max({std::llabs(a), std::llabs(b), std::llabs(c), std::llabs(d)});
    out.k0 = std::max(out.k0, static_cast<double>(m) / sqrt_n);
  };

  // Sign normalized: c > 0, or c = 0 and d > 0.
  for (std::int64_t c = 0; c <= c_max; ++c) {
    const auto d_max = static_cast<std::int64_t>(std::floor(r + static_cast<double>(c) * xabs));
    const std::int64_t a_max = d_max;
    for (std::int64_t d = (c == 0 ? 1 : -d_max); d <= d_max; ++d) {
      if (c == 0) {
        if (N % d != 0) continue;
        const std::int64_t a = N / d;
        const auto b_max = static_cast<std::int64_t>(std::ceil(xabs * static_cast<double>(a + d)));
        for (std::int64_t b = -b_max; b <= b_max; ++b) try_matrix(a, b, 0, d);
        continue;
      }
      for (std::int64_t a = -a_max; a <= a_max; ++a) {
        const std::int64_t num = a * d - N;
        if (num % c != 0) continue;
        try_matrix(a, num / c, c, d);
      }
    }
  }
  return out;
}

std::optional<CmPoint> fixed_point(const ModularMatrix& m, const Precision& prec) {
  if (m.is_scalar()) throw DomainError("fixed_point: matrix is a homothety");
  const std::int64_t M = m.det();
  if (M < 1) throw ValidationError("fixed_point: determinant must be >= 1");
  const std::int64_t t = m.trace();
  if (t * t >= 4 * M) return std::nullopt;
  const unsigned bits = prec.bits + 32;
  // Roots of c tau^2 + (d - a) tau - b = 0; c != 0 since (a - d)^2 < 0 is impossible.
  BigFloat re = BigFloat(m.a - m.d, bits) / (2 * m.c);
  BigFloat im = sqrt(BigFloat(4 * M - t * t, bits)) / (2 * std::llabs(m.c));
  UpperHalfPoint tau0(std::move(re), std::move(im));
  const OrderIndex idx = order_index(t, M);
  BigComplex j = eval_j(tau0, prec);
  return CmPoint{m, t, tau0.with_precision(prec.bits), idx.conductor, idx.fundamental_disc, M, std::move(j)};
}

std::vector<CmPoint> enumerate_cm_points(std::int64_t M_max, const Precision& prec) {
  if (M_max < 1) throw DomainError("enumerate_cm_points: M_max must be >= 1");
  struct Candidate {
    std::int64_t M, t, A, B, C;
  };
  std::vector<Candidate> cands;
  for (std::int64_t M = 1; M <= M_max; ++M) {
    for (std::int64_t t = -isqrt(4 * M - 1); t * t < 4 * M; ++t) {
      const std::int64_t D = t * t - 4 * M;
      // Reduced forms (A, B, C) of discriminant D, primitive or not.
      for (std::int64_t A = 1; 3 * A * A <= -D; ++A) {
        for (std::int64_t B = -A + 1; B <= A; ++B) {
          if (mod(B - D, 2) != 0 || (B * B - D) % (4 * A) != 0) continue;
          const std::int64_t C = (B * B - D) / (4 * A);
          if (C < A || (A == C && B < 0)) continue;
          cands.push_back({M, t, A, B, C});
        }
      }
    }
  }
  const auto evaluated = ordered_map(cands.size(), [&](std::size_t i) {
    const Candidate& c = cands[i];
    // Matrix ((t-B)/2, -C; A, (t+B)/2) has trace t, det M and fixes (-B + sqrt D)/(2A).
    const ModularMatrix m{(c.t - c.B) / 2, -c.C, c.A, (c.t + c.B) / 2};
    return *fixed_point(m, prec);
  });
  const double tol = multiset_tolerance(prec);
  std::vector<CmPoint> out;
  for (const CmPoint& p : evaluated) {
    bool dup = false;
    for (const CmPoint& q : out) {
      if (j_close(p.j, q.j, tol)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

Separation min_separation_constant(const std::vector<CmPoint>& points, double j_box_bound) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (abs(points[i].j) <= j_box_bound) idx.push_back(i);
  if (idx.size() < 2) throw DomainError("min_separation_constant: need at least two points inside the j-box");
  std::optional<Separation> best;
  BigFloat best_value;
  for (std::size_t u = 0; u < idx.size(); ++u) {
    for (std::size_t v = u + 1; v < idx.size(); ++v) {
      const CmPoint& p = points[idx[u]];
      const CmPoint& q = points[idx[v]];
      const BigFloat gap = abs(p.j - q.j);
      if (gap.is_zero()) continue;
      const mpfr_prec_t bits = gap.precision();
      const BigFloat sm1 = sqrt(BigFloat(static_cast<long>(p.M), bits));
      const BigFloat sm2 = sqrt(BigFloat(static_cast<long>(q.M), bits));
      const BigFloat value = gap * sm1 * sm2 * (sm1 + sm2);
      if (!best || value < best_value) {
        best_value = value;
        best = Separation{0, idx[u], idx[v]};
      }
    }
  }
  if (!best) throw DomainError("min_separation_constant: all points share one j-value");
  best->c_obs = best_value.to_double();
  return *best;
}

std::optional<NearCm> near_cm_finder(const UpperHalfPoint& tau, const UpperHalfPoint& coset_image,
                                     const ModularMatrix& matrix, const Precision& prec, double max_displacement) {
  if (matrix.is_scalar()) throw DomainError("near_cm_finder: matrix is a homothety");
  const unsigned bits = prec.bits + 32;
  const BigComplex t = tau.as_complex().with_precision(bits);
  const BigComplex image = coset_image.as_complex().with_precision(bits);
  const BigComplex expected = apply(matrix, t);
  const BigFloat scale = abs(expected) > 1.0 ? abs(expected) : BigFloat(1L, bits);
  if (abs(expected - image) > scale * BigFloat(std::ldexp(1.0, -static_cast<int>(prec.bits) + 16), bits))
    throw ValidationError("near_cm_finder: coset_image is not matrix * tau");

  const double displacement = abs(t - image).to_double();
  if (displacement > max_displacement)
    throw DomainError("near_cm_finder: |tau - f(tau)| = " + std::to_string(displacement) +
                      " exceeds the threshold " + std::to_string(max_displacement));
  std::optional<CmPoint> fp = fixed_point(matrix, prec);
  if (!fp) return std::nullopt;

  const double distance = abs(t - fp->tau0.as_complex().with_precision(bits)).to_double();
  const double k1 = 1.0 / std::sqrt(tau.im().to_double() * coset_image.im().to_double());
  const double sqrt_n = std::sqrt(static_cast<double>(matrix.det()));
  const double ratio = displacement > 0 ? distance / displacement : 0.0;
  const double slack = std::ldexp(1.0, -static_cast<int>(prec.bits) + 16);
  if (displacement > 0 ? ratio > k1 * sqrt_n * (1 + 1e-9) : distance > slack)
    throw ThresholdError("near_cm_finder: |tau - tau0| exceeds K1 sqrt(N) |tau - f(tau)|", ratio / sqrt_n);
  return NearCm{std::move(*fp), displacement, distance, ratio, k1};
}

DensityExperiment density_experiment(const UpperHalfPoint& y_tau, const BigComplex& z, int D, std::int64_t N_max,
                                     const Precision& prec) {
  if (D < 1) throw DomainError("density_experiment: D must be >= 1");
  if (N_max < 1) throw DomainError("density_experiment: N_max must be >= 1");
  DensityExperiment out;
  const BigComplex zc = z.with_precision(prec.bits);
  for (std::int64_t N = 1; N <= N_max; ++N) {
    std::optional<BigFloat> best;
    for (const BigComplex& a : orbit_j_values(y_tau, N, prec)) {
      BigFloat d = abs(a - zc);
      if (!best || d < *best) best = std::move(d);
    }
    const BigFloat threshold = pow(BigFloat(static_cast<long>(N), prec.bits), -static_cast<long>(D));
    const bool member = *best <= threshold;
    if (member) ++out.members;
    out.rows.push_back({N, std::move(*best), member});
  }
  out.density = static_cast<double>(out.members) / static_cast<double>(N_max);
  return out;
}

}  // namespace heckelab
