#pragma once

// Upper half-plane arithmetic: reduction to the standard fundamental domain and
// evaluation of Delta, E4, E6, j and the Petersson norm of Delta.
//
// Every series is summed after reduction, where |q| <= exp(-pi*sqrt(3)), so
// the number of terms needed for 2^-bits accuracy is about bits/7.85.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "heckelab/bigfloat.hpp"

namespace heckelab {

// Working precision. series_terms, when set, caps the q-series length and
// makes evaluation fail with PrecisionError if the cap is too short.
struct Precision {
  unsigned bits = 128;
  std::optional<unsigned> series_terms;

  Precision() = default;
  explicit Precision(unsigned b, std::optional<unsigned> terms = std::nullopt);

  [[nodiscard]] Precision doubled() const { return Precision(bits * 2, series_terms); }
};

inline constexpr unsigned kDefaultBits = 128;

// tau = re + i*im with im > 0.
class UpperHalfPoint {
 public:
  UpperHalfPoint(BigFloat re, BigFloat im);
  UpperHalfPoint(double re, double im, unsigned bits = kDefaultBits);
  // Decimal text for each part, parsed at the given precision.
  static UpperHalfPoint parse(const std::string& re, const std::string& im, unsigned bits = kDefaultBits);
  static UpperHalfPoint from_complex(const BigComplex& z);

  [[nodiscard]] const BigFloat& re() const { return re_; }
  [[nodiscard]] const BigFloat& im() const { return im_; }
  [[nodiscard]] BigComplex as_complex() const { return {re_, im_}; }
  [[nodiscard]] mpfr_prec_t precision() const { return max_prec(re_, im_); }
  [[nodiscard]] UpperHalfPoint with_precision(unsigned bits) const;
  // |Re| <= 1/2 and |tau| >= 1, up to a few ulps at the point's precision.
  [[nodiscard]] bool in_fundamental_domain() const;

 private:
  BigFloat re_;
  BigFloat im_;
};

// Integer matrix acting by Moebius transformation; det >= 1.
struct ModularMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  [[nodiscard]] std::int64_t det() const { return a * d - b * c; }
  [[nodiscard]] std::int64_t trace() const { return a + d; }
  [[nodiscard]] bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  [[nodiscard]] bool is_scalar() const { return b == 0 && c == 0 && a == d; }

  static ModularMatrix identity() { return {}; }
  // Throws ValidationError if det < 1.
  static ModularMatrix checked(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  friend ModularMatrix operator*(const ModularMatrix& x, const ModularMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const ModularMatrix&, const ModularMatrix&) = default;
};

// (a*tau + b)/(c*tau + d), computed at the precision of tau.
UpperHalfPoint apply(const ModularMatrix& m, const UpperHalfPoint& tau);
BigComplex apply(const ModularMatrix& m, const BigComplex& tau);

struct Reduction {
  UpperHalfPoint point;
  ModularMatrix witness;  // witness * tau == point, det 1
};

// Reduces into |Re| <= 1/2, |tau| >= 1 by translations and tau -> -1/tau.
Reduction reduce_to_fundamental_domain(const UpperHalfPoint& tau);

// (2 pi)^12 q prod (1 - q^n)^24.
BigComplex eval_delta(const UpperHalfPoint& tau, const Precision& prec = Precision());

// 1728 E4^3 / (E4^3 - E6^2).
BigComplex eval_j(const UpperHalfPoint& tau, const Precision& prec = Precision());

// |Delta(tau)| (Im tau)^6.
BigFloat petersson_norm_delta(const UpperHalfPoint& tau, const Precision& prec = Precision());

// log ||Delta||(tau), evaluated without forming exp(-2 pi Im tau).
BigFloat log_petersson_norm_delta(const UpperHalfPoint& tau, const Precision& prec = Precision());

struct Eisenstein {
  BigComplex e4;
  BigComplex e6;
};

// E4 and E6 at tau (no reduction, no weight factor): the raw q-series.
Eisenstein eval_eisenstein_series(const UpperHalfPoint& tau, const Precision& prec = Precision());

// Both j and log||Delta|| at once from a single reduction; used by orbit code.
struct PointValues {
  UpperHalfPoint reduced;
  ModularMatrix witness;
  BigComplex j;
  BigFloat log_petersson;
};
PointValues eval_point(const UpperHalfPoint& tau, const Precision& prec = Precision());

// A point tau in the fundamental domain with j(tau) = target, found by
// Newton iteration with doubling precision. j = 0 and j = 1728 return rho and i.
UpperHalfPoint tau_from_j(const BigComplex& target, const Precision& prec = Precision());

// Number of q-series terms used at this point and precision.
unsigned series_terms_for(const UpperHalfPoint& reduced_tau, const Precision& prec);

}  // namespace heckelab
