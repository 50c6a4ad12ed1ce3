#include "heckelab/heights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

BigFloat pairwise(const std::vector<BigFloat>& t, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return t[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise(t, lo, mid) + pairwise(t, mid, hi);
}

BigFloat six_e_log(std::int64_t N, mpfr_prec_t bits) {
  return log(BigFloat(static_cast<long>(N), bits)) * (6L * static_cast<long>(e_N(N)));
}

BigComplex integer_point(std::int64_t v, unsigned bits) {
  return {BigFloat(static_cast<long>(v), bits), BigFloat(0L, bits)};
}

}  // namespace

BigFloat pairwise_sum(const std::vector<BigFloat>& terms) {
  if (terms.empty()) return BigFloat(0L, kDefaultBits);
  return pairwise(terms, 0, terms.size());
}

HeightSeriesPoint cusp_height(const UpperHalfPoint& y_tau, std::int64_t N, const Precision& prec) {
  if (N < 2) throw DomainError("cusp_height: N must be >= 2 (log N > 0)");
  HeightSeriesPoint out{N, e_N(N), BigFloat(prec.bits), BigFloat(prec.bits), {}};
  const BigComplex jy = eval_j(y_tau, prec);
  const long nearest = jy.re.round_to_long();
  const double tol = std::max(1.0, std::fabs(jy.re.to_double())) * std::ldexp(1.0, -static_cast<int>(prec.bits) + 20);
  if (abs(jy - integer_point(nearest, prec.bits)).to_double() > tol)
    out.warnings.push_back("j(y) = " + jy.re.to_string(12) + (jy.im.sign() < 0 ? "" : "+") + jy.im.to_string(6) +
                           "i is not a rational integer; finite places are not accounted for");

  const HeckeOrbit orbit = hecke_orbit(y_tau, N, prec);
  std::vector<BigFloat> terms;
  terms.reserve(orbit.points.size());
  for (const OrbitPoint& p : orbit.points) terms.push_back(-p.log_petersson);
  out.value = pairwise_sum(terms);
  out.normalized = out.value / six_e_log(N, prec.bits);
  return out;
}

BigFloat local_arch_sum(const UpperHalfPoint& y_tau, const BigComplex& z, std::int64_t N, const Precision& prec) {
  const HeckeOrbit orbit = hecke_orbit(y_tau, N, prec);
  const BigFloat zscale = abs(z) > 1.0 ? abs(z) : BigFloat(1L, prec.bits);
  const BigFloat floor = zscale * BigFloat(std::ldexp(1.0, -static_cast<int>(prec.bits) + 8), prec.bits);
  std::vector<BigFloat> terms;
  terms.reserve(orbit.points.size());
  for (const OrbitPoint& p : orbit.points) {
    const BigFloat dist = abs(z - p.j);
    if (dist <= floor)
      throw CoincidenceError("z coincides with an orbit point (coset alpha=" + std::to_string(p.coset.alpha) +
                             ", beta=" + std::to_string(p.coset.beta) + ") at working precision");
    terms.push_back(log(dist) + p.log_petersson);
  }
  return pairwise_sum(terms);
}

bool is_rational_cm_j(std::int64_t j) {
  static constexpr std::array<std::int64_t, 13> kCm = {
      0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000, 16581375, -884736000,
      -147197952000, -262537412640768000};
  return std::find(kCm.begin(), kCm.end(), j) != kCm.end();
}

PhiValue phi_value(std::int64_t y, std::int64_t z, std::int64_t N, const Precision& prec, bool allow_cm_base) {
  if (N < 1) throw DomainError("phi_value: N must be >= 1");
  if (y == z) throw DomainError("phi_value: y and z must differ");
  if (!allow_cm_base && is_rational_cm_j(y))
    throw ValidationError("phi_value: j = " + std::to_string(y) +
                          " is a CM base point (repeated orbit values); pass allow_cm_base to override");

  // Estimate log2|product| at the caller's precision to pick the starting precision.
  const UpperHalfPoint tau_low = tau_from_j(integer_point(y, prec.bits), prec);
  double log2_prod = 0.0;
  for (const BigComplex& a : orbit_j_values(tau_low, N, prec)) {
    const BigFloat d = abs(integer_point(z, prec.bits) - a);
    if (!d.is_zero()) log2_prod += std::max(0.0, static_cast<double>(d.exponent()));
  }
  const double e = static_cast<double>(e_N(N));
  double want = log2_prod + 2.0 * std::log2(e) + std::log2(2.0 * M_PI * static_cast<double>(N)) + 64.0;
  unsigned bits = std::max<unsigned>(prec.bits, static_cast<unsigned>(std::ceil(want)));

  constexpr unsigned kMaxBits = 1U << 18;
  for (; bits <= kMaxBits; bits *= 2) {
    const Precision p(bits, prec.series_terms);
    const UpperHalfPoint tau = tau_from_j(integer_point(y, bits), p);
    const BigComplex zc = integer_point(z, bits + 32);
    BigComplex prod(BigFloat(1L, bits + 32), BigFloat(0L, bits + 32));
    for (const BigComplex& a : orbit_j_values(tau, N, p)) prod = prod * (zc - a);
    mpz_class rounded;
    BigFloat re_round(prod.re.precision());
    mpfr_rint(re_round.get(), prod.re.get(), MPFR_RNDN);
    mpfr_get_z(rounded.get_mpz_t(), re_round.get(), MPFR_RNDN);
    const BigFloat residual = hypot(prod.re - re_round, prod.im);
    if (residual < 1e-6) return {rounded, bits, residual.to_double()};
  }
  throw PrecisionError("phi_value: rounding residual did not fall below 1e-6 within " + std::to_string(kMaxBits) +
                       " bits");
}

IdentityResidual global_identity_residual(std::int64_t y, std::int64_t z, std::int64_t N, const Precision& prec) {
  if (N < 2) throw DomainError("global_identity_residual: N must be >= 2");
  const PhiValue phi = phi_value(y, z, N, prec);
  if (phi.value == 0) throw CoincidenceError("global_identity_residual: z lies in T_N*y");
  const mpfr_prec_t bits = prec.bits + 32;
  BigFloat abs_phi(bits);
  mpz_class a = abs(phi.value);
  // log of a huge integer: mpfr_set_z rounds to `bits`, enough for the log.
  mpfr_set_z(abs_phi.get(), a.get_mpz_t(), MPFR_RNDN);
  BigFloat log_phi = log(abs_phi);
  const UpperHalfPoint tau = tau_from_j(integer_point(y, prec.bits), prec);
  BigFloat s = local_arch_sum(tau, integer_point(z, prec.bits), N, prec);
  const BigFloat ratio = (log_phi - s) / six_e_log(N, bits);
  return {ratio.to_double() - 1.0, log_phi.with_precision(prec.bits), s, phi.bits_used};
}

IntegralEstimate heuristic_integral(const BigComplex& z, std::size_t samples, const Precision& prec,
                                    std::uint64_t seed) {
  if (samples < 1) throw DomainError("heuristic_integral: samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double s_max = 2.0 / std::sqrt(3.0);
  const unsigned bits = prec.bits;
  const BigFloat two_pi_12 = pow(pi(bits + 32) * 2L, 12);
  const BigComplex zc = z.with_precision(bits + 32);
  const BigFloat zscale = abs(zc) > 1.0 ? abs(zc) : BigFloat(1L, bits + 32);
  const BigFloat eps(std::ldexp(1.0, -static_cast<int>(bits)), bits + 32);

  double sum = 0.0, sum_sq = 0.0;
  std::size_t rejected = 0;
  for (std::size_t taken = 0; taken < samples;) {
    const double x = unit(rng) - 0.5;
    const double y = 1.0 / ((1.0 - unit(rng)) * s_max);  // 1/y uniform on (0, 2/sqrt3]
    if (x * x + y * y < 1.0) continue;
    const UpperHalfPoint tau(x, y, bits);
    // |z - j| |Delta| = |z Delta - (2 pi)^12 E4^3|, which stays well conditioned up the cusp.
    const BigComplex delta = eval_delta(tau, prec).with_precision(bits + 32);
    const BigComplex e4 = eval_eisenstein_series(tau, prec).e4;
    const BigComplex g = zc * delta - pow(e4, 3) * two_pi_12;
    if (abs(g) <= abs(delta) * zscale * eps) {
      ++rejected;
      continue;
    }
    const double f = (log_abs(g) + log(BigFloat(y, bits)) * 6L).to_double();
    sum += f;
    sum_sq += f * f;
    ++taken;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n), samples, rejected};
}

}  // namespace heckelab
