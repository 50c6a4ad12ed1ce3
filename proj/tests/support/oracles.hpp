#pragma once

// Independent reference implementations used only by the tests. None of
// these call into the library's evaluation code.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

// MPFR complex pair with fixed precision, deliberately separate from BigComplex.
struct Cx {
  mpfr_t re, im;
  explicit Cx(mpfr_prec_t bits) {
    mpfr_inits2(bits, re, im, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
  }
  Cx(const Cx&) = delete;
  Cx& operator=(const Cx&) = delete;
  ~Cx() { mpfr_clears(re, im, static_cast<mpfr_ptr>(nullptr)); }
};

// Integer q-expansion coefficients of j(q) = q^-1 + 744 + 196884 q + ...:
// coeffs[k] is the coefficient of q^(k-1).
std::vector<mpz_class> j_coefficients(int terms);

// j(x + iy) from the exact q-expansion; needs y large enough for `terms` to converge.
std::pair<double, double> j_from_q_expansion(double x, double y, int terms, mpfr_prec_t bits, const char* x_text = nullptr,
                                             const char* y_text = nullptr);

// Delta(iy) = (2 pi)^12 (E4^3 - E6^2)/1728 from divisor sums, real for purely imaginary tau.
double delta_from_eisenstein(double y, int terms, mpfr_prec_t bits);

// Classical level-2 modular polynomial Phi_2(X, Y).
mpz_class phi2(const mpz_class& x, const mpz_class& y);

// r_2(n), r_4(n) by Jacobi's formulas.
std::int64_t jacobi_r2(std::int64_t n);
std::int64_t jacobi_r4(std::int64_t n);

// Number of cyclic subgroups of order N in (Z/N)^2, counted through elements of order N.
std::int64_t cyclic_subgroup_count(std::int64_t N);

// a_{p^k} = pi^k + conj(pi)^k computed in Z[(a + sqrt(a^2 - 4p))/2] with big integers.
mpz_class frobenius_power_trace(std::int64_t a_p, std::int64_t p, int k);

// p^2 + 1 - |E(F_{p^2})| by enumeration over F_p(sqrt(n)) for a non-residue n.
std::int64_t trace_over_fp2(std::int64_t a, std::int64_t b, std::int64_t p);

// Number of affine points + 1 over F_p, computed with Euler's criterion per x.
std::int64_t brute_point_count(std::int64_t a, std::int64_t b, std::int64_t p);

// |{v in Z^rank : v^T G v <= bound}| (or == bound when exact) for an integer Gram matrix, naive box search.
std::uint64_t brute_lattice_count(const std::vector<std::int64_t>& gram, int rank, std::int64_t value, bool exact,
                                  std::int64_t box);

}  // namespace oracle
