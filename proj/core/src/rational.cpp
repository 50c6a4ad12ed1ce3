#include "heckelab/rational.hpp"

#include <numeric>
#include <stdexcept>

#include "heckelab/error.hpp"

namespace heckelab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ExactRational: multiplication overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ExactRational: addition overflow");
  return r;
}

}  // namespace

ExactRational::ExactRational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("ExactRational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

ExactRational ExactRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {n};
    }
    const std::string ns = text.substr(0, slash);
    const std::string ds = text.substr(slash + 1);
    const std::int64_t n = std::stoll(ns, &used);
    if (used != ns.size()) throw std::invalid_argument(text);
    const std::int64_t d = std::stoll(ds, &used);
    if (used != ds.size()) throw std::invalid_argument(text);
    return {n, d};
  } catch (const std::logic_error&) {
    throw ValidationError("not a rational 'num/den': '" + text + "'");
  }
}

std::string ExactRational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  const std::int64_t n = checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g));
  return {n, checked_mul(a.den_ / g, b.den_)};
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) { return a + (-b); }

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  // Denominators are positive, so both gcds are >= 1.
  const std::int64_t n = checked_mul(a.num_ / g1, b.num_ / g2);
  const std::int64_t d = checked_mul(a.den_ / g2, b.den_ / g1);
  return {n, d};
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.num_ == 0) throw DomainError("ExactRational: division by zero");
  return a * ExactRational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

ExactRational abs(const ExactRational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace heckelab
