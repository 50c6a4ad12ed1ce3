#pragma once

// RAII wrapper over MPFR with explicit per-value precision, plus a minimal
// complex type on top. Binary operations round into max(prec(lhs), prec(rhs)).

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace heckelab {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  BigFloat(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(long x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(int x, mpfr_prec_t bits) : BigFloat(static_cast<long>(x), bits) {}
  // Parses decimal text exactly to the given precision; throws std::invalid_argument.
  BigFloat(const std::string& text, mpfr_prec_t bits);

  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  // Same value rounded to another precision.
  [[nodiscard]] BigFloat with_precision(mpfr_prec_t bits) const {
    BigFloat r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 0.5 <= |x|/2^e < 1; very negative for zero.
  [[nodiscard]] long exponent() const;
  // Nearest integer (ties to even); throws std::overflow_error outside long range.
  [[nodiscard]] long round_to_long() const;
  // Significant-digit text, locale independent and reproducible.
  [[nodiscard]] std::string to_string(int digits = 20) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  BigFloat& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
  BigFloat& operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }
  BigFloat& operator-=(long k) { mpfr_sub_si(v_, v_, k, MPFR_RNDN); return *this; }

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b) {
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) {
  return a.precision() > b.precision() ? a.precision() : b.precision();
}

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, long k);
BigFloat operator*(long k, const BigFloat& a);
BigFloat operator/(const BigFloat& a, long k);
BigFloat operator+(const BigFloat& a, long k);
BigFloat operator-(const BigFloat& a, long k);

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long k);
BigFloat pi(mpfr_prec_t bits);
BigFloat log2_const(mpfr_prec_t bits);

// x + iy with both parts at (usually) the same precision.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(double r, double i, mpfr_prec_t bits) : re(r, bits), im(i, bits) {}

  [[nodiscard]] mpfr_prec_t precision() const { return max_prec(re, im); }
  [[nodiscard]] BigComplex with_precision(mpfr_prec_t bits) const {
    return {re.with_precision(bits), im.with_precision(bits)};
  }
  [[nodiscard]] bool is_finite() const { return re.is_finite() && im.is_finite(); }

  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigFloat& s);
BigComplex operator*(const BigComplex& a, long k);
BigComplex operator+(const BigComplex& a, long k);
BigComplex operator-(const BigComplex& a, long k);

BigComplex conj(const BigComplex& z);
BigFloat norm(const BigComplex& z);  // |z|^2
BigFloat abs(const BigComplex& z);
// log|z| without forming |z|^2.
BigFloat log_abs(const BigComplex& z);
// e^{i*theta}
BigComplex expi(const BigFloat& theta);
BigComplex exp(const BigComplex& z);
BigComplex pow(const BigComplex& z, unsigned k);

}  // namespace heckelab
