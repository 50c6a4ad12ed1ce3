#include "oracles.hpp"

#include <cmath>
#include <numeric>

namespace oracle {

namespace {

// Power series mod q^n.
using Series = std::vector<mpz_class>;

Series mul(const Series& a, const Series& b, std::size_t n) {
  Series r(n, 0);
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; i + k < n && k < b.size(); ++k) r[i + k] += a[i] * b[k];
  }
  return r;
}

mpz_class sigma(int k, long n) {
  mpz_class s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) {
      mpz_class t;
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
      s += t;
    }
  }
  return s;
}

}  // namespace

std::vector<mpz_class> j_coefficients(int terms) {
  const auto n = static_cast<std::size_t>(terms + 1);
  Series e4(n), eta24(n, 0);
  e4[0] = 1;
  for (std::size_t k = 1; k < n; ++k) e4[k] = 240 * sigma(3, static_cast<long>(k));
  // prod (1 - q^m)^24 mod q^n
  eta24[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = n; i-- > m;) eta24[i] -= eta24[i - m];
    }
  }
  // 1 / prod(1-q^m)^24
  Series inv(n, 0);
  inv[0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    mpz_class s = 0;
    for (std::size_t k = 1; k <= i; ++k) s += eta24[k] * inv[i - k];
    inv[i] = -s;
  }
  const Series e4cube = mul(mul(e4, e4, n), e4, n);
  return mul(e4cube, inv, n);  // j = q^-1 * E4^3 / prod(1-q^m)^24
}

std::pair<double, double> j_from_q_expansion(double x, double y, int terms, mpfr_prec_t bits, const char* x_text,
                                             const char* y_text) {
  const std::vector<mpz_class> c = j_coefficients(terms);
  mpfr_t two_pi, xr, yr, mod, arg, t, s, cs, acc_re, acc_im, cf;
  mpfr_inits2(bits, two_pi, xr, yr, mod, arg, t, s, cs, acc_re, acc_im, cf, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(two_pi, MPFR_RNDN);
  mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
  if (x_text) mpfr_set_str(xr, x_text, 10, MPFR_RNDN); else mpfr_set_d(xr, x, MPFR_RNDN);
  if (y_text) mpfr_set_str(yr, y_text, 10, MPFR_RNDN); else mpfr_set_d(yr, y, MPFR_RNDN);
  mpfr_set_zero(acc_re, 1);
  mpfr_set_zero(acc_im, 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const long e = static_cast<long>(k) - 1;
    // q^e = exp(-2 pi y e) * (cos(2 pi x e) + i sin(2 pi x e))
    mpfr_mul_si(t, two_pi, -e, MPFR_RNDN);
    mpfr_mul(mod, t, yr, MPFR_RNDN);
    mpfr_exp(mod, mod, MPFR_RNDN);
    mpfr_mul_si(arg, two_pi, e, MPFR_RNDN);
    mpfr_mul(arg, arg, xr, MPFR_RNDN);
    mpfr_sin_cos(s, cs, arg, MPFR_RNDN);
    mpfr_set_z(cf, c[k].get_mpz_t(), MPFR_RNDN);
    mpfr_mul(cf, cf, mod, MPFR_RNDN);
    mpfr_mul(t, cf, cs, MPFR_RNDN);
    mpfr_add(acc_re, acc_re, t, MPFR_RNDN);
    mpfr_mul(t, cf, s, MPFR_RNDN);
    mpfr_add(acc_im, acc_im, t, MPFR_RNDN);
  }
  const std::pair<double, double> out{mpfr_get_d(acc_re, MPFR_RNDN), mpfr_get_d(acc_im, MPFR_RNDN)};
  mpfr_clears(two_pi, xr, yr, mod, arg, t, s, cs, acc_re, acc_im, cf, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double delta_from_eisenstein(double y, int terms, mpfr_prec_t bits) {
  mpfr_t q, qn, e4, e6, t, u;
  mpfr_inits2(bits, q, qn, e4, e6, t, u, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(q, MPFR_RNDN);
  mpfr_mul_d(q, q, -2.0 * y, MPFR_RNDN);
  mpfr_exp(q, q, MPFR_RNDN);
  mpfr_set_ui(e4, 1, MPFR_RNDN);
  mpfr_set_ui(e6, 1, MPFR_RNDN);
  mpfr_set_ui(qn, 1, MPFR_RNDN);
  for (int n = 1; n <= terms; ++n) {
    mpfr_mul(qn, qn, q, MPFR_RNDN);
    mpfr_set_z(t, sigma(3, n).get_mpz_t(), MPFR_RNDN);
    mpfr_mul(t, t, qn, MPFR_RNDN);
    mpfr_mul_ui(t, t, 240, MPFR_RNDN);
    mpfr_add(e4, e4, t, MPFR_RNDN);
    mpfr_set_z(t, sigma(5, n).get_mpz_t(), MPFR_RNDN);
    mpfr_mul(t, t, qn, MPFR_RNDN);
    mpfr_mul_ui(t, t, 504, MPFR_RNDN);
    mpfr_sub(e6, e6, t, MPFR_RNDN);
  }
  mpfr_pow_ui(t, e4, 3, MPFR_RNDN);
  mpfr_sqr(u, e6, MPFR_RNDN);
  mpfr_sub(t, t, u, MPFR_RNDN);
  mpfr_div_ui(t, t, 1728, MPFR_RNDN);
  mpfr_const_pi(u, MPFR_RNDN);
  mpfr_mul_ui(u, u, 2, MPFR_RNDN);
  mpfr_pow_ui(u, u, 12, MPFR_RNDN);
  mpfr_mul(t, t, u, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clears(q, qn, e4, e6, t, u, static_cast<mpfr_ptr>(nullptr));
  return out;
}

mpz_class phi2(const mpz_class& x, const mpz_class& y) {
  return x * x * x + y * y * y - x * x * y * y + 1488 * (x * x * y + x * y * y) - 162000 * (x * x + y * y) +
         mpz_class(40773375) * x * y + mpz_class("8748000000") * (x + y) - mpz_class("157464000000000");
}

std::int64_t jacobi_r2(std::int64_t n) {
  if (n == 0) return 1;
  std::int64_t d1 = 0, d3 = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    d1 += d % 4 == 1;
    d3 += d % 4 == 3;
  }
  return 4 * (d1 - d3);
}

std::int64_t jacobi_r4(std::int64_t n) {
  if (n == 0) return 1;
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0 && d % 4 != 0) s += d;
  return 8 * s;
}

std::int64_t cyclic_subgroup_count(std::int64_t N) {
  // Element (x, y) of (Z/N)^2 has order N / gcd(x, y, N).
  std::int64_t order_n = 0;
  for (std::int64_t x = 0; x < N; ++x)
    for (std::int64_t y = 0; y < N; ++y)
      order_n += std::gcd(std::gcd(x, y), N) == 1;
  std::int64_t phi = 0;
  for (std::int64_t k = 1; k <= N; ++k) phi += std::gcd(k, N) == 1;
  return order_n / phi;
}

mpz_class frobenius_power_trace(std::int64_t a_p, std::int64_t p, int k) {
  // pi = (a + sqrt(D))/2, D = a^2 - 4p. Track 2^k pi^k = u + v sqrt(D).
  const mpz_class a = a_p;
  const mpz_class D = a * a - 4 * mpz_class(p);
  mpz_class u = 1, v = 0;
  for (int i = 0; i < k; ++i) {
    const mpz_class nu = u * a + v * D;
    const mpz_class nv = u + v * a;
    u = nu;
    v = nv;
  }
  // pi^k + conj(pi)^k = 2u / 2^k
  mpz_class two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return 2 * u / two_k;
}

std::int64_t trace_over_fp2(std::int64_t a, std::int64_t b, std::int64_t p) {
  // F_{p^2} = F_p[s]/(s^2 - n). Elements (x0, x1).
  std::int64_t n = 2;
  auto legendre = [p](std::int64_t v) {
    v %= p;
    if (v < 0) v += p;
    std::int64_t r = 1, base = v, e = (p - 1) / 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  while (legendre(n) != p - 1) ++n;
  // Count squares: the norm map; z is a square in F_{p^2} iff z^((p^2-1)/2) = 1.
  using E = std::pair<std::int64_t, std::int64_t>;
  auto mulp = [&](E x, E y) -> E {
    return {(x.first * y.first + x.second * y.second % p * n) % p, (x.first * y.second + x.second * y.first) % p};
  };
  const std::int64_t half = (p * p - 1) / 2;
  std::int64_t count = 1;  // point at infinity
  for (std::int64_t x0 = 0; x0 < p; ++x0) {
    for (std::int64_t x1 = 0; x1 < p; ++x1) {
      const E x{x0, x1};
      E rhs = mulp(mulp(x, x), x);
      rhs.first = (rhs.first + a * x0 + b) % p;
      rhs.second = (rhs.second + a * x1) % p;
      rhs.first = (rhs.first % p + p) % p;
      rhs.second = (rhs.second % p + p) % p;
      if (rhs.first == 0 && rhs.second == 0) {
        count += 1;
        continue;
      }
      E r{1, 0}, base = rhs;
      for (std::int64_t e = half; e; e >>= 1) {
        if (e & 1) r = mulp(r, base);
        base = mulp(base, base);
      }
      if (r.first == 1 && r.second == 0) count += 2;
    }
  }
  return p * p + 1 - count;
}

std::int64_t brute_point_count(std::int64_t a, std::int64_t b, std::int64_t p) {
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y)
      count += ((y * y - x * x % p * x - a * x - b) % p + p) % p == 0;
  return count;
}

std::uint64_t brute_lattice_count(const std::vector<std::int64_t>& gram, int rank, std::int64_t value, bool exact,
                                  std::int64_t box) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(rank), -box);
  std::uint64_t count = 0;
  while (true) {
    std::int64_t q = 0;
    for (int i = 0; i < rank; ++i)
      for (int k = 0; k < rank; ++k) q += v[static_cast<std::size_t>(i)] * gram[static_cast<std::size_t>(i * rank + k)] * v[static_cast<std::size_t>(k)];
    count += exact ? q == value : q <= value;
    int i = 0;
    while (i < rank && v[static_cast<std::size_t>(i)] == box) v[static_cast<std::size_t>(i++)] = -box;
    if (i == rank) break;
    ++v[static_cast<std::size_t>(i)];
  }
  return count;
}

}  // namespace oracle
