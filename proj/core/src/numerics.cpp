#include "heckelab/numerics.hpp"

#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

constexpr unsigned kGuardBits = 32;
constexpr unsigned kMaxSeriesTerms = 6000;
// Beyond this the cancellation in E4^3 - E6^2 costs more than we allow.
constexpr unsigned long kMaxWorkingBits = 1UL << 22;

mpfr_prec_t working_bits(const Precision& prec) { return prec.bits + kGuardBits; }

struct DivisorSums {
  std::vector<std::uint64_t> sigma3;
  std::vector<std::uint64_t> sigma5;
};

const DivisorSums& divisor_sums() {
  static const DivisorSums table = [] {
    DivisorSums t;
    t.sigma3.assign(kMaxSeriesTerms + 1, 0);
    t.sigma5.assign(kMaxSeriesTerms + 1, 0);
    for (std::uint64_t d = 1; d <= kMaxSeriesTerms; ++d) {
      const std::uint64_t d3 = d * d * d;
      const std::uint64_t d5 = d3 * d * d;
      for (std::uint64_t m = d; m <= kMaxSeriesTerms; m += d) {
        t.sigma3[m] += d3;
        t.sigma5[m] += d5;
      }
    }
    return t;
  }();
  return table;
}

// q = exp(2 pi i tau).
BigComplex nome(const UpperHalfPoint& tau, mpfr_prec_t bits) {
  const BigFloat two_pi = pi(bits) * 2L;
  const BigFloat modulus = exp(-(two_pi * tau.im().with_precision(bits)));
  const BigComplex phase = expi(two_pi * tau.re().with_precision(bits));
  return {phase.re * modulus, phase.im * modulus};
}

// Terms n with 504 sigma5(n) |q|^n below 2^-bits, |q| = exp(-2 pi y).
unsigned terms_needed(double im, mpfr_prec_t bits) {
  const double decay = 2.0 * M_PI * im / std::log(2.0);  // bits gained per term
  for (unsigned n = 1; n <= kMaxSeriesTerms; ++n) {
    const double growth = 10.0 + 6.0 * std::log2(static_cast<double>(n) + 1.0);
    if (decay * n - growth >= static_cast<double>(bits)) return n;
  }
  throw PrecisionError("q-series would need more than " + std::to_string(kMaxSeriesTerms) +
                       " terms at " + std::to_string(bits) + " bits");
}

unsigned checked_terms(const UpperHalfPoint& reduced, const Precision& prec, mpfr_prec_t bits) {
  const unsigned need = terms_needed(reduced.im().to_double(), bits);
  if (prec.series_terms && *prec.series_terms < need)
    throw PrecisionError("series_terms=" + std::to_string(*prec.series_terms) +
                         " cannot meet the 2^-" + std::to_string(bits) + " tail bound (needs " +
                         std::to_string(need) + ")");
  return need;
}

// prod_{n=1..terms} (1 - q^n)
BigComplex euler_product(const BigComplex& q, unsigned terms, mpfr_prec_t bits) {
  BigComplex prod(BigFloat(1L, bits), BigFloat(0L, bits));
  BigComplex qn = q.with_precision(bits);
  BigComplex factor(bits);
  for (unsigned n = 1; n <= terms; ++n) {
    factor.re = BigFloat(1L, bits);
    factor.re -= qn.re;
    factor.im = -qn.im;
    prod = prod * factor;
    if (n < terms) qn = qn * q;
  }
  return prod;
}

Eisenstein eisenstein_from_nome(const BigComplex& q, unsigned terms, mpfr_prec_t bits) {
  const DivisorSums& sums = divisor_sums();
  BigFloat s4re(0L, bits), s4im(0L, bits), s6re(0L, bits), s6im(0L, bits);
  BigFloat tmp(bits);
  BigComplex qq = q.with_precision(bits);
  BigComplex qn = qq;
  for (unsigned n = 1; n <= terms; ++n) {
    mpfr_mul_ui(tmp.get(), qn.re.get(), sums.sigma3[n], MPFR_RNDN);
    s4re += tmp;
    mpfr_mul_ui(tmp.get(), qn.im.get(), sums.sigma3[n], MPFR_RNDN);
    s4im += tmp;
    mpfr_mul_ui(tmp.get(), qn.re.get(), sums.sigma5[n], MPFR_RNDN);
    s6re += tmp;
    mpfr_mul_ui(tmp.get(), qn.im.get(), sums.sigma5[n], MPFR_RNDN);
    s6im += tmp;
    if (n < terms) qn = qn * qq;
  }
  Eisenstein e{BigComplex(bits), BigComplex(bits)};
  e.e4.re = s4re * 240L + 1L;
  e.e4.im = s4im * 240L;
  e.e6.re = BigFloat(1L, bits) - s6re * 504L;
  e.e6.im = -(s6im * 504L);
  return e;
}

// Extra bits so that E4^3 - E6^2 ~ 1728 q keeps `bits` significant bits.
mpfr_prec_t cancellation_bits(const UpperHalfPoint& reduced, mpfr_prec_t bits) {
  const double lost = 2.0 * M_PI * reduced.im().to_double() / std::log(2.0);
  const double total = static_cast<double>(bits) + lost + 16.0;
  if (!(total < static_cast<double>(kMaxWorkingBits)))
    throw NearCancellationError("E4^3 - E6^2 underflows the precision budget at Im tau = " +
                                reduced.im().to_string(10));
  return static_cast<mpfr_prec_t>(total);
}

struct JParts {
  BigComplex j;
  Eisenstein e;
  BigComplex disc;  // E4^3 - E6^2
};

JParts j_at_reduced(const UpperHalfPoint& reduced, const Precision& prec) {
  const mpfr_prec_t bits = cancellation_bits(reduced, working_bits(prec));
  const unsigned terms = checked_terms(reduced, prec, bits);
  const BigComplex q = nome(reduced.with_precision(static_cast<unsigned>(bits)), bits);
  Eisenstein e = eisenstein_from_nome(q, terms, bits);
  const BigComplex e4cube = pow(e.e4, 3);
  const BigComplex disc = e4cube - e.e6 * e.e6;
  if (disc.re.is_zero() && disc.im.is_zero())
    throw NearCancellationError("E4^3 - E6^2 vanished at working precision");
  // |disc| should be about 1728 |q|; a much smaller value means precision ran out.
  const long expected = (abs(q) * 1728L).exponent();
  if (abs(disc).exponent() < expected - 8)
    throw NearCancellationError("E4^3 - E6^2 lost its leading bits");
  BigComplex j = e4cube * 1728L / disc;
  return {std::move(j), std::move(e), disc};
}

BigFloat log_delta_at_reduced(const UpperHalfPoint& reduced, const Precision& prec) {
  const mpfr_prec_t bits = working_bits(prec);
  const unsigned terms = checked_terms(reduced, prec, bits);
  const BigComplex q = nome(reduced, bits);
  const BigComplex prod = euler_product(q, terms, bits);
  const BigFloat two_pi = pi(bits) * 2L;
  // log|Delta| = 12 log(2 pi) - 2 pi Im tau + 24 log|prod|
  return log(two_pi) * 12L - two_pi * reduced.im().with_precision(bits) + log_abs(prod) * 24L;
}

BigFloat round_to(const BigFloat& x, unsigned bits) { return x.with_precision(bits); }
BigComplex round_to(const BigComplex& z, unsigned bits) { return z.with_precision(bits); }

}  // namespace

Precision::Precision(unsigned b, std::optional<unsigned> terms) : bits(b), series_terms(terms) {
  if (bits < 53) throw ValidationError("precision must be at least 53 bits");
  if (series_terms && *series_terms < 1) throw ValidationError("series_terms must be >= 1");
}

UpperHalfPoint::UpperHalfPoint(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  if (!(im_ > 0.0) || !re_.is_finite() || !im_.is_finite())
    throw DomainError("point is not in the upper half-plane (Im tau must be > 0)");
}

UpperHalfPoint::UpperHalfPoint(double re, double im, unsigned bits)
    : UpperHalfPoint(BigFloat(re, bits), BigFloat(im, bits)) {}

UpperHalfPoint UpperHalfPoint::parse(const std::string& re, const std::string& im, unsigned bits) {
  return {BigFloat(re, bits), BigFloat(im, bits)};
}

UpperHalfPoint UpperHalfPoint::from_complex(const BigComplex& z) { return {z.re, z.im}; }

UpperHalfPoint UpperHalfPoint::with_precision(unsigned bits) const {
  return {re_.with_precision(bits), im_.with_precision(bits)};
}

bool UpperHalfPoint::in_fundamental_domain() const {
  // A few ulps of slack: points on the boundary arc round to either side.
  BigFloat slack(1L, precision());
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(precision()) + 4, MPFR_RNDN);
  return abs(re_) - slack <= 0.5 && norm(as_complex()) + slack >= 1.0;
}

ModularMatrix ModularMatrix::checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  ModularMatrix m{a, b, c, d};
  if (m.det() < 1) throw ValidationError("matrix determinant must be >= 1");
  return m;
}

BigComplex apply(const ModularMatrix& m, const BigComplex& tau) {
  const mpfr_prec_t bits = tau.precision();
  const BigComplex num = tau * m.a + BigComplex(BigFloat(m.b, bits), BigFloat(0L, bits));
  const BigComplex den = tau * m.c + BigComplex(BigFloat(m.d, bits), BigFloat(0L, bits));
  return num / den;
}

UpperHalfPoint apply(const ModularMatrix& m, const UpperHalfPoint& tau) {
  return UpperHalfPoint::from_complex(apply(m, tau.as_complex()));
}

Reduction reduce_to_fundamental_domain(const UpperHalfPoint& tau) {
  const mpfr_prec_t bits = tau.precision();
  BigFloat x = tau.re();
  BigFloat y = tau.im();
  ModularMatrix g = ModularMatrix::identity();
  for (int iter = 0; iter < 100000; ++iter) {
    const long n = x.round_to_long();
    if (n != 0) {
      x -= BigFloat(n, bits);
      g = ModularMatrix{1, -n, 0, 1} * g;
    }
    const BigFloat r2 = x * x + y * y;
    if (r2 >= 1.0) return {UpperHalfPoint(std::move(x), std::move(y)), g};
    // tau -> -1/tau = (-x + i y)/|tau|^2
    x = -(x / r2);
    y = y / r2;
    g = ModularMatrix{0, -1, 1, 0} * g;
  }
  throw PrecisionError("fundamental-domain reduction did not terminate");
}

unsigned series_terms_for(const UpperHalfPoint& reduced_tau, const Precision& prec) {
  return terms_needed(reduced_tau.im().to_double(), working_bits(prec));
}

Eisenstein eval_eisenstein_series(const UpperHalfPoint& tau, const Precision& prec) {
  const mpfr_prec_t bits = working_bits(prec);
  const unsigned terms = checked_terms(tau, prec, bits);
  return eisenstein_from_nome(nome(tau, bits), terms, bits);
}

BigComplex eval_delta(const UpperHalfPoint& tau, const Precision& prec) {
  const Reduction red = reduce_to_fundamental_domain(tau.with_precision(working_bits(prec)));
  const mpfr_prec_t bits = working_bits(prec);
  const unsigned terms = checked_terms(red.point, prec, bits);
  const BigComplex q = nome(red.point, bits);
  const BigComplex prod = euler_product(q, terms, bits);
  BigFloat scale = pow(pi(bits) * 2L, 12);
  BigComplex delta = q * pow(prod, 24) * scale;
  // Delta(g tau) = (c tau + d)^12 Delta(tau)
  if (red.witness.c != 0 || red.witness.d != 1) {
    const BigComplex t = tau.as_complex().with_precision(bits);
    const BigComplex factor = t * red.witness.c + red.witness.d;
    delta = delta / pow(factor, 12);
  }
  return round_to(delta, prec.bits);
}

BigComplex eval_j(const UpperHalfPoint& tau, const Precision& prec) {
  const Reduction red = reduce_to_fundamental_domain(tau.with_precision(working_bits(prec)));
  return round_to(j_at_reduced(red.point, prec).j, prec.bits);
}

BigFloat log_petersson_norm_delta(const UpperHalfPoint& tau, const Precision& prec) {
  const Reduction red = reduce_to_fundamental_domain(tau.with_precision(working_bits(prec)));
  const BigFloat log_delta = log_delta_at_reduced(red.point, prec);
  return round_to(log_delta + log(red.point.im()) * 6L, prec.bits);
}

BigFloat petersson_norm_delta(const UpperHalfPoint& tau, const Precision& prec) {
  const BigFloat lg = log_petersson_norm_delta(tau, prec).with_precision(working_bits(prec));
  return round_to(exp(lg), prec.bits);
}

PointValues eval_point(const UpperHalfPoint& tau, const Precision& prec) {
  Reduction red = reduce_to_fundamental_domain(tau.with_precision(working_bits(prec)));
  BigComplex j = j_at_reduced(red.point, prec).j;
  BigFloat lp = log_delta_at_reduced(red.point, prec) + log(red.point.im()) * 6L;
  return {red.point.with_precision(prec.bits), red.witness, round_to(j, prec.bits), round_to(lp, prec.bits)};
}

UpperHalfPoint tau_from_j(const BigComplex& target, const Precision& prec) {
  const unsigned bits = prec.bits;
  const BigFloat zero(0L, bits);
  if (target.re.is_zero() && target.im.is_zero()) {
    return {BigFloat(-0.5, bits), sqrt(BigFloat(3L, bits)) / 2L};
  }
  if (target.re == 1728.0 && target.im.is_zero()) return {zero, BigFloat(1L, bits)};

  auto newton_step = [&](const UpperHalfPoint& tau, const Precision& p) {
    const JParts parts = j_at_reduced(tau, p);
    const mpfr_prec_t wb = parts.j.precision();
    // j' = -2 pi i * 1728 E6 E4^2 / (E4^3 - E6^2)
    const BigComplex two_pi_i(BigFloat(0L, wb), pi(wb) * 2L);
    const BigComplex deriv = -(two_pi_i * parts.e.e6 * parts.e.e4 * parts.e.e4 * 1728L / parts.disc);
    const BigComplex step = (parts.j - target.with_precision(wb)) / deriv;
    return step;
  };

  // Coarse start.
  const unsigned coarse_bits = 64;
  const Precision coarse(coarse_bits);
  UpperHalfPoint tau(0.0, 1.0, coarse_bits);
  const double tabs = abs(target).to_double();
  if (tabs > 1e5) {
    const double arg = atan2(target.im, target.re).to_double();
    tau = UpperHalfPoint(-arg / (2 * M_PI), std::log(tabs) / (2 * M_PI), coarse_bits);
  } else {
    double best = INFINITY;
    for (int ix = -25; ix <= 25; ++ix) {
      for (int iy = 0; iy <= 110; ++iy) {
        const double x = ix * 0.02;
        const double y = 0.85 + iy * 0.02;
        if (x * x + y * y < 1.0) continue;
        const UpperHalfPoint t(x, y, coarse_bits);
        const double dist = abs(j_at_reduced(t, coarse).j - target).to_double();
        if (dist < best) {
          best = dist;
          tau = t;
        }
      }
    }
  }

  unsigned level = coarse_bits;
  for (;;) {
    const Precision p(level);
    tau = reduce_to_fundamental_domain(tau.with_precision(level + kGuardBits)).point;
    for (int it = 0; it < 60; ++it) {
      const BigComplex step = newton_step(tau, p);
      BigComplex next = tau.as_complex().with_precision(level + kGuardBits) - step;
      if (!(next.im > 0.0)) next.im = tau.im() / 2L;
      tau = reduce_to_fundamental_domain(UpperHalfPoint::from_complex(next)).point;
      const long tol_exp = -static_cast<long>(level) + 8;
      if (abs(step).exponent() < tol_exp || abs(step).is_zero()) break;
    }
    if (level >= bits) break;
    level = std::min(level * 2, bits);
  }

  const BigComplex j = j_at_reduced(tau, prec).j;
  const BigFloat scale = abs(target) > 1.0 ? abs(target) : BigFloat(1L, bits);
  const BigFloat err = abs(j - target) / scale;
  if (err.exponent() > -static_cast<long>(bits) + 24)
    throw PrecisionError("tau_from_j did not converge (relative residual " + err.to_string(6) + ")");
  return tau.with_precision(bits);
}

}  // namespace heckelab
