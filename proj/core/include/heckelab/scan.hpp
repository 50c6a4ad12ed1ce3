#pragma once

// Frobenius traces of curves over Q at primes p >= 5, geometric-isogeny
// detection by trace powers, and the prime scans built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/rational.hpp"

namespace heckelab {

// y^2 = x^3 + a4 x + a6 over Q; ValidationError if singular.
struct CurveQ {
  ExactRational a4, a6;

  CurveQ(ExactRational a4_, ExactRational a6_);
  // "a4,a6" with each part "n" or "n/d".
  static CurveQ parse(const std::string& text);
  friend bool operator==(const CurveQ&, const CurveQ&) = default;
};

enum class ReductionType { Supersingular, Ordinary };

struct TraceRecord {
  std::int64_t p = 0;
  std::int64_t a_p = 0;
  ReductionType kind = ReductionType::Supersingular;
  // Ordinary only: a_p^2 - 4p = conductor^2 * cm_fundamental_disc.
  std::int64_t cm_fundamental_disc = 0;
  std::int64_t conductor = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// |{(x, y) : y^2 = x^3 + a x + b}| + 1 over F_p, for an odd prime p and a, b reduced mod p.
std::int64_t count_points_mod(std::int64_t a, std::int64_t b, std::int64_t p);

// Classifies a trace; ValidationError if |a_p| > 2 sqrt(p).
TraceRecord classify_trace(std::int64_t a_p, std::int64_t p);

// BadReductionError when p divides a denominator or the discriminant; DomainError for p < 5 or composite p.
TraceRecord count_points(const CurveQ& curve, std::int64_t p);

// a_{p^k} from a_0 = 2, a_1 = a_p, a_{k+1} = a_p a_k - p a_{k-1}.
__int128 trace_power(std::int64_t a_p, std::int64_t p, int k);

inline constexpr int kMaxIsogenyPower = 12;

// Minimal k <= max_k with a_{p^k} equal on both sides.
std::optional<int> geom_isogenous(const TraceRecord& left, const TraceRecord& right, int max_k = kMaxIsogenyPower);

struct ScanHit {
  std::int64_t p;
  int k;
  TraceRecord left, right;
};

struct ScanResult {
  std::vector<ScanHit> hits;
  std::vector<std::int64_t> skipped;  // bad-reduction primes
};

ScanResult scan_pair(const CurveQ& left, const CurveQ& right, std::int64_t p_min, std::int64_t p_max);

struct TraceTable {
  std::vector<TraceRecord> records;
  std::vector<std::int64_t> skipped;
};

// Good-reduction trace records for all primes in [p_min, p_max], ascending.
TraceTable trace_table(const CurveQ& curve, std::int64_t p_min, std::int64_t p_max);

// Ordinary primes whose reduction has CM by the field of discriminant d_K.
std::vector<std::int64_t> cm_field_hits(const CurveQ& curve, std::int64_t d_K, std::int64_t p_min,
                                        std::int64_t p_max);

struct CoincidenceStatistic {
  std::int64_t observed = 0;
  double heuristic = 0;   // c * sum_{p <= p_max} 1/sqrt(p)
  double calibration = 0; // c, fitted on p <= p_max/2
};

CoincidenceStatistic coincidence_statistic(const CurveQ& left, const CurveQ& right, std::int64_t p_max);

}  // namespace heckelab
