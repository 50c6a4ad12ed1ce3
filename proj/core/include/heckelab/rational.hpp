#pragma once

// Exact rationals over 64-bit integers. Every operation is overflow-checked
// and throws std::overflow_error instead of wrapping.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace heckelab {

class ExactRational {
 public:
  constexpr ExactRational() = default;
  ExactRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  ExactRational(std::int64_t n, std::int64_t d);

  // "n" or "n/d", optional sign; throws ValidationError.
  static ExactRational parse(const std::string& text);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  [[nodiscard]] std::string to_string() const;

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a) { return {-a.num_, a.den_}; }
  ExactRational& operator+=(const ExactRational& o) { return *this = *this + o; }
  ExactRational& operator-=(const ExactRational& o) { return *this = *this - o; }
  ExactRational& operator*=(const ExactRational& o) { return *this = *this * o; }

  friend bool operator==(const ExactRational&, const ExactRational&) = default;
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) { return os << r.to_string(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

ExactRational abs(const ExactRational& r);

}  // namespace heckelab

template <>
struct std::hash<heckelab::ExactRational> {
  std::size_t operator()(const heckelab::ExactRational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003U ^ std::hash<std::int64_t>{}(r.den());
  }
};
