#include "heckelab/bigfloat.hpp"

#include <climits>
#include <stdexcept>
#include <vector>

namespace heckelab {

BigFloat::BigFloat(const std::string& text, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
}

long BigFloat::exponent() const {
  if (mpfr_zero_p(v_)) return LONG_MIN / 2;
  return mpfr_get_exp(v_);
}

long BigFloat::round_to_long() const {
  BigFloat r(precision());
  mpfr_rint(r.v_, v_, MPFR_RNDN);
  if (!mpfr_fits_slong_p(r.v_, MPFR_RNDN)) throw std::overflow_error("value does not fit in long");
  return mpfr_get_si(r.v_, MPFR_RNDN);
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

namespace {

void widen_to(BigFloat& x, mpfr_prec_t bits) {
  if (x.precision() < bits) mpfr_prec_round(x.get(), bits, MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(*this, o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(*this, o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(*this, o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(*this, o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, long k) {
  BigFloat r(a.precision());
  mpfr_mul_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
BigFloat operator*(long k, const BigFloat& a) { return a * k; }
BigFloat operator/(const BigFloat& a, long k) {
  BigFloat r(a.precision());
  mpfr_div_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
BigFloat operator+(const BigFloat& a, long k) {
  BigFloat r(a.precision());
  mpfr_add_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, long k) {
  BigFloat r(a.precision());
  mpfr_sub_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}

#define HECKELAB_UNARY(name, fn)                 \
  BigFloat name(const BigFloat& x) {             \
    BigFloat r(x.precision());                   \
    fn(r.get(), x.get(), MPFR_RNDN);             \
    return r;                                    \
  }
HECKELAB_UNARY(abs, mpfr_abs)
HECKELAB_UNARY(sqrt, mpfr_sqrt)
HECKELAB_UNARY(exp, mpfr_exp)
HECKELAB_UNARY(log, mpfr_log)
HECKELAB_UNARY(sin, mpfr_sin)
HECKELAB_UNARY(cos, mpfr_cos)
#undef HECKELAB_UNARY

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(max_prec(x, y));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, long k) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}
BigFloat pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
BigFloat log2_const(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  *this = *this * o;
  return *this;
}
BigComplex& BigComplex::operator/=(const BigComplex& o) {
  *this = *this / o;
  return *this;
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  // Scale by the larger component of b to avoid overflow of |b|^2.
  if (abs(b.re) >= abs(b.im)) {
    const BigFloat r = b.im / b.re;
    const BigFloat den = b.re + b.im * r;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  const BigFloat r = b.re / b.im;
  const BigFloat den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}
BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }
BigComplex operator*(const BigComplex& a, long k) { return {a.re * k, a.im * k}; }
BigComplex operator+(const BigComplex& a, long k) { return {a.re + k, a.im}; }
BigComplex operator-(const BigComplex& a, long k) { return {a.re - k, a.im}; }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }
BigFloat log_abs(const BigComplex& z) { return log(hypot(z.re, z.im)); }

BigComplex expi(const BigFloat& theta) {
  BigFloat s(theta.precision());
  BigFloat c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {std::move(c), std::move(s)};
}

BigComplex exp(const BigComplex& z) {
  const BigFloat m = exp(z.re);
  BigComplex u = expi(z.im);
  return {u.re * m, u.im * m};
}

BigComplex pow(const BigComplex& z, unsigned k) {
  BigComplex result(BigFloat(1L, z.precision()), BigFloat(0L, z.precision()));
  BigComplex base = z;
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

}  // namespace heckelab
