#include "heckelab/scan.hpp"

#include <cmath>
#include <cstdlib>

#include "heckelab/arith.hpp"
#include "heckelab/cm.hpp"
#include "heckelab/error.hpp"
#include "heckelab/parallel.hpp"

namespace heckelab {

CurveQ::CurveQ(ExactRational a4_, ExactRational a6_) : a4(a4_), a6(a6_) {
  if (ExactRational(4) * a4 * a4 * a4 + ExactRational(27) * a6 * a6 == ExactRational(0))
    throw ValidationError("singular curve: 4 a4^3 + 27 a6^2 = 0");
}

CurveQ CurveQ::parse(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw ValidationError("curve must be given as 'a4,a6', got '" + text + "'");
  return {ExactRational::parse(text.substr(0, comma)), ExactRational::parse(text.substr(comma + 1))};
}

std::int64_t count_points_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
  // chi[r] = Legendre symbol (r/p).
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  a = mod(a, p);
  b = mod(b, p);
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = ((x * x % p + a) % p * x + b) % p;
    sum += chi[static_cast<std::size_t>(rhs)];
  }
  return p + 1 + sum;
}

TraceRecord classify_trace(std::int64_t a_p, std::int64_t p) {
  if (a_p * a_p > 4 * p) throw ValidationError("trace " + std::to_string(a_p) + " violates the Hasse bound at p = " +
                                                std::to_string(p));
  TraceRecord rec;
  rec.p = p;
  rec.a_p = a_p;
  if (a_p == 0) return rec;
  const OrderIndex idx = order_index(a_p, p);
  rec.kind = ReductionType::Ordinary;
  rec.cm_fundamental_disc = idx.fundamental_disc;
  rec.conductor = idx.conductor;
  return rec;
}

namespace {

std::int64_t reduce_mod(const ExactRational& r, std::int64_t p) {
  return mod(mod(r.num(), p) * inv_mod(mod(r.den(), p), p), p);
}

}  // namespace

TraceRecord count_points(const CurveQ& curve, std::int64_t p) {
  if (p < 5 || !is_prime(p)) throw DomainError("count_points: p must be a prime >= 5, got " + std::to_string(p));
  if (curve.a4.den() % p == 0 || curve.a6.den() % p == 0)
    throw BadReductionError("bad reduction at p = " + std::to_string(p) + ": denominator vanishes");
  const std::int64_t a = reduce_mod(curve.a4, p);
  const std::int64_t b = reduce_mod(curve.a6, p);
  if ((4 * (a * a % p) % p * a + 27 * (b * b % p)) % p == 0)
    throw BadReductionError("bad reduction at p = " + std::to_string(p) + ": discriminant vanishes");
  return classify_trace(p + 1 - count_points_mod(a, b, p), p);
}

namespace {


__int128 checked_mul(__int128 x, __int128 y) {
  __int128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("trace_power: 128-bit overflow");
  return r;
}

__int128 checked_sub(__int128 x, __int128 y) {
  __int128 r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("trace_power: 128-bit overflow");
  return r;
}

}  // namespace

__int128 trace_power(std::int64_t a_p, std::int64_t p, int k) {
  if (p < 2) throw DomainError("trace_power: p must be >= 2");
  if (k < 0) throw DomainError("trace_power: k must be >= 0");
  if (static_cast<__int128>(a_p) * a_p > 4 * static_cast<__int128>(p))
    throw ValidationError("trace_power: |a_p| > 2 sqrt(p)");
  __int128 prev = 2;
  __int128 cur = a_p;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    const __int128 next = checked_sub(checked_mul(a_p, cur), checked_mul(p, prev));
    prev = cur;
    cur = next;
  }
  return cur;
}

std::optional<int> geom_isogenous(const TraceRecord& left, const TraceRecord& right, int max_k) {
  if (left.p != right.p)
    throw ValidationError("geom_isogenous: records at different primes " + std::to_string(left.p) + " and " +
                          std::to_string(right.p));
  for (int k = 1; k <= max_k; ++k)
    if (trace_power(left.a_p, left.p, k) == trace_power(right.a_p, right.p, k)) return k;
  return std::nullopt;
}

namespace {

void check_range(std::int64_t p_min, std::int64_t p_max) {
  if (p_min < 5) throw DomainError("scan: p_min must be >= 5");
  if (p_min > p_max) throw DomainError("scan: p_min must not exceed p_max");
}

}  // namespace

TraceTable trace_table(const CurveQ& curve, std::int64_t p_min, std::int64_t p_max) {
  check_range(p_min, p_max);
  const std::vector<std::int64_t> primes = primes_in_range(p_min, p_max);
  const auto rows = ordered_map(primes.size(), [&](std::size_t i) -> std::optional<TraceRecord> {
    try {
      return count_points(curve, primes[i]);
    } catch (const BadReductionError&) {
      return std::nullopt;
    }
  });
  TraceTable out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (rows[i]) {
      out.records.push_back(*rows[i]);
    } else {
      out.skipped.push_back(primes[i]);
    }
  }
  return out;
}

ScanResult scan_pair(const CurveQ& left, const CurveQ& right, std::int64_t p_min, std::int64_t p_max) {
  const TraceTable lt = trace_table(left, p_min, p_max);
  const TraceTable rt = trace_table(right, p_min, p_max);
  ScanResult out;
  std::size_t i = 0;
  std::size_t j = 0;
  for (std::int64_t p : primes_in_range(p_min, p_max)) {
    const bool lgood = i < lt.records.size() && lt.records[i].p == p;
    const bool rgood = j < rt.records.size() && rt.records[j].p == p;
    if (lgood && rgood) {
      if (auto k = geom_isogenous(lt.records[i], rt.records[j])) out.hits.push_back({p, *k, lt.records[i], rt.records[j]});
    } else {
      out.skipped.push_back(p);
    }
    i += lgood;
    j += rgood;
  }
  return out;
}

std::vector<std::int64_t> cm_field_hits(const CurveQ& curve, std::int64_t d_K, std::int64_t p_min,
                                        std::int64_t p_max) {
  if (d_K >= 0 || !is_fundamental_discriminant(d_K))
    throw ValidationError("cm_field_hits: " + std::to_string(d_K) + " is not a negative fundamental discriminant");
  std::vector<std::int64_t> out;
  for (const TraceRecord& r : trace_table(curve, p_min, p_max).records)
    if (r.kind == ReductionType::Ordinary && r.cm_fundamental_disc == d_K) out.push_back(r.p);
  return out;
}

CoincidenceStatistic coincidence_statistic(const CurveQ& left, const CurveQ& right, std::int64_t p_max) {
  CoincidenceStatistic out;
  if (p_max < 5) return out;
  const TraceTable lt = trace_table(left, 5, p_max);
  const TraceTable rt = trace_table(right, 5, p_max);
  double half_sum = 0;
  double full_sum = 0;
  std::int64_t half_observed = 0;
  std::size_t j = 0;
  for (const TraceRecord& l : lt.records) {
    while (j < rt.records.size() && rt.records[j].p < l.p) ++j;
    if (j == rt.records.size() || rt.records[j].p != l.p) continue;
    const double w = 1.0 / std::sqrt(static_cast<double>(l.p));
    const bool equal = l.a_p == rt.records[j].a_p;
    full_sum += w;
    out.observed += equal;
    if (2 * l.p <= p_max) {
      half_sum += w;
      half_observed += equal;
    }
  }
  out.calibration = half_sum > 0 ? static_cast<double>(half_observed) / half_sum : 0.0;
  out.heuristic = out.calibration * full_sum;
  return out;
}

}  // namespace heckelab
