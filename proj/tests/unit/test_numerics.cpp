#include <doctest.h>

#include <cmath>

#include <random>

#include "heckelab/error.hpp"
#include "heckelab/numerics.hpp"
#include "oracles.hpp"

using namespace heckelab;

namespace {

double rel_err(const BigComplex& got, double re, double im = 0.0) {
  const BigComplex want(re, im, got.precision());
  const double scale = std::max(1.0, std::hypot(re, im));
  return abs(got - want).to_double() / scale;
}

bool same_point(const UpperHalfPoint& a, const UpperHalfPoint& b, double tol) {
  return abs(a.as_complex() - b.as_complex()) < tol;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("precision and point validation") {
    CHECK_THROWS_AS(Precision(52), ValidationError);
    CHECK_NOTHROW(Precision(53));
    CHECK_THROWS_AS(UpperHalfPoint(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(UpperHalfPoint(1.0, -2.0), DomainError);
    CHECK_THROWS_AS(ModularMatrix::checked(1, 1, 1, 1), ValidationError);
  }

  TEST_CASE("reduction of 7 + i is a translation") {
    const Reduction r = reduce_to_fundamental_domain(UpperHalfPoint(7.0, 1.0));
    CHECK(same_point(r.point, UpperHalfPoint(0.0, 1.0), 1e-30));
    CHECK(r.witness == ModularMatrix{1, -7, 0, 1});
  }

  TEST_CASE("reduction of i/2 is the inversion") {
    const Reduction r = reduce_to_fundamental_domain(UpperHalfPoint(0.0, 0.5));
    CHECK(same_point(r.point, UpperHalfPoint(0.0, 2.0), 1e-30));
    CHECK(r.witness == ModularMatrix{0, -1, 1, 0});
  }

  TEST_CASE("reduction of 0.3 + 0.1i lands in the domain and the witness reproduces it") {
    const UpperHalfPoint tau(0.3, 0.1);
    const Reduction r = reduce_to_fundamental_domain(tau);
    CHECK(r.point.in_fundamental_domain());
    CHECK(r.witness.det() == 1);
    CHECK(same_point(apply(r.witness, tau), r.point, 1e-30));
  }

  TEST_CASE("reduction is idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-5, 5), im(0.01, 3);
    for (int k = 0; k < 200; ++k) {
      const Reduction r = reduce_to_fundamental_domain(UpperHalfPoint(re(rng), im(rng)));
      const Reduction again = reduce_to_fundamental_domain(r.point);
      CHECK(again.witness.is_identity());
      CHECK(same_point(again.point, r.point, 0.0 + 1e-35));
    }
  }

  TEST_CASE("classical j values") {
    CHECK(rel_err(eval_j(UpperHalfPoint(0.0, 1.0)), 1728) < 1e-30);
    CHECK(rel_err(eval_j(UpperHalfPoint(0.0, 2.0)), 287496) < 1e-10);
    const UpperHalfPoint rho(BigFloat(0.5, 128), sqrt(BigFloat(3L, 128)) / 2);
    CHECK(abs(eval_j(rho)) < 1e-25);
  }

  TEST_CASE("j agrees with the exact q-expansion oracle") {
    for (auto [x, y] : {std::pair{0.0, 2.0}, {0.13, 1.4}, {-0.41, 1.05}, {0.5, 3.0}}) {
      const auto [re, im] = oracle::j_from_q_expansion(x, y, 80, 256);
      CHECK(rel_err(eval_j(UpperHalfPoint(x, y)), re, im) < 1e-14);
    }
  }

  TEST_CASE("Delta at 2i agrees with the Eisenstein oracle") {
    const BigComplex d = eval_delta(UpperHalfPoint(0.0, 2.0));
    const double want = oracle::delta_from_eisenstein(2.0, 60, 256);
    CHECK(std::fabs(d.re.to_double() / want - 1) < std::ldexp(1.0, -(53 - 10)));
    CHECK(std::fabs(d.im.to_double()) < 1e-30 * std::fabs(want));
  }

  TEST_CASE("Delta(i) is real and positive; Delta is 1-periodic") {
    const BigComplex d = eval_delta(UpperHalfPoint(0.0, 1.0));
    CHECK(d.re > 0.0);
    CHECK(abs(d.im) < 1e-30);
    const UpperHalfPoint tau = UpperHalfPoint::parse("0.21", "0.9");
    const BigComplex a = eval_delta(tau);
    const BigComplex b = eval_delta(apply(ModularMatrix{1, 1, 0, 1}, tau));
    CHECK(abs(a - b) / abs(a) < 1e-30);
  }

  TEST_CASE("Petersson norm examples") {
    const UpperHalfPoint tau(0.17, 1.3);
    const UpperHalfPoint inv = apply(ModularMatrix{0, -1, 1, 0}, tau);
    const BigFloat a = petersson_norm_delta(tau);
    CHECK(abs(a - petersson_norm_delta(inv)) / a < 1e-30);
    CHECK(petersson_norm_delta(UpperHalfPoint(0.0, 1.0)) > 0.0);
    CHECK(petersson_norm_delta(UpperHalfPoint(0.0, 10.0)) <= petersson_norm_delta(UpperHalfPoint(0.0, 2.0)));
    const BigFloat lg = log_petersson_norm_delta(tau);
    CHECK(abs(lg - log(a)) < 1e-30);
  }

  TEST_CASE("modular invariance on random points") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> re(-3, 3), im(0.05, 10);
    const Precision prec(128);
    const double tol = std::ldexp(1.0, -(128 - 16));
    for (int k = 0; k < 1000; ++k) {
      const UpperHalfPoint tau(re(rng), im(rng));
      const PointValues v = eval_point(tau, prec);
      const BigComplex j_reduced = eval_j(v.reduced, prec);
      CHECK(abs(j_reduced - v.j).to_double() <= tol * std::max(1.0, abs(v.j).to_double()));
      const BigFloat n1 = petersson_norm_delta(tau, prec);
      const BigFloat n2 = petersson_norm_delta(v.reduced, prec);
      CHECK(abs(n1 - n2).to_double() <= tol * n2.to_double());
    }
  }

  TEST_CASE("conjugation symmetry j(-conj tau) = conj j(tau)") {
    for (auto [x, y] : {std::pair{0.3, 1.1}, {-0.2, 0.7}, {0.45, 2.2}}) {
      const BigComplex a = eval_j(UpperHalfPoint(x, y));
      const BigComplex b = eval_j(UpperHalfPoint(-x, y));
      CHECK(abs(a - conj(b)) / std::max(1.0, abs(a).to_double()) < 1e-30);
    }
  }

  TEST_CASE("series cap too short raises a precision error") {
    CHECK_THROWS_AS(eval_j(UpperHalfPoint(0.0, 1.0), Precision(128, 2)), PrecisionError);
    CHECK_NOTHROW(eval_j(UpperHalfPoint(0.0, 1.0), Precision(128, 40)));
    CHECK(series_terms_for(UpperHalfPoint(0.0, 1.0), Precision(128)) <= 40);
  }

  TEST_CASE("tau_from_j inverts j") {
    for (double t : {1.0, -5000.0, 1e6, 0.5}) {
      const BigComplex target(t, 0.0, 160);
      const UpperHalfPoint tau = tau_from_j(target, Precision(160));
      CHECK(tau.in_fundamental_domain());
      CHECK(rel_err(eval_j(tau, Precision(160)), t) < 1e-35);
    }
    const UpperHalfPoint i = tau_from_j(BigComplex(1728.0, 0.0, 128));
    CHECK(same_point(i, UpperHalfPoint(0.0, 1.0), 1e-30));
  }
}
