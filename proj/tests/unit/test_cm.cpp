#include <doctest.h>

#include <cmath>

#include "heckelab/arith.hpp"
#include "heckelab/cm.hpp"
#include "heckelab/error.hpp"
#include "heckelab/hecke.hpp"

using namespace heckelab;

TEST_SUITE("cm") {
  TEST_CASE("condition (P) examples") {
    CHECK(condition_p(3, 2).satisfies);
    CHECK(condition_p(2, 5).satisfies);
    CHECK_FALSE(condition_p(4, 5).satisfies);
    CHECK_FALSE(condition_p(5, 5).satisfies);  // 0 is a square
    CHECK_FALSE(condition_p(1, 2).satisfies);
    CHECK_THROWS_AS(condition_p(3, 4), DomainError);
  }

  TEST_CASE("order index examples") {
    auto check = [](std::int64_t t, std::int64_t N, std::int64_t f, std::int64_t d) {
      const OrderIndex o = order_index(t, N);
      CHECK(o.conductor == f);
      CHECK(o.fundamental_disc == d);
    };
    check(0, 1, 1, -4);
    check(2, 5, 2, -4);
    check(1, 1, 1, -3);
    check(3, 7, 1, -19);
    check(0, 9, 3, -4);
    CHECK_THROWS_AS(order_index(2, 1), DomainError);
  }

  TEST_CASE("order index reconstructs t^2 - 4N exactly") {
    for (std::int64_t N = 1; N <= 300; ++N) {
      for (std::int64_t t = -isqrt(4 * N - 1); t * t < 4 * N; ++t) {
        const OrderIndex o = order_index(t, N);
        CHECK(o.conductor * o.conductor * o.fundamental_disc == t * t - 4 * N);
        CHECK(is_fundamental_discriminant(o.fundamental_disc));
      }
    }
  }

  TEST_CASE("condition (P) lemma") {
    CHECK(condition_p_lemma_check(3, 1).passed);
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
      const LemmaCheck c = condition_p_lemma_check(p, 2000);
      CHECK(c.passed);
      CHECK(c.checked > 0);
      CHECK_FALSE(c.counterexample.has_value());
    }
    // At p = 2 the index statement fails: alpha = sqrt(-3) has norm 3 = 3 mod 4 but Z[sqrt(-3)] has index 2.
    const LemmaCheck two = condition_p_lemma_check(2, 2000);
    CHECK_FALSE(two.passed);
    REQUIRE(two.counterexample.has_value());
    CHECK(two.counterexample->N == 3);
    CHECK(two.counterexample->t == 0);
    CHECK(two.counterexample->conductor == 2);
  }

  TEST_CASE("coefficient bound") {
    const CoefficientBound one = coefficient_bound_check({ExactRational(-1, 10), ExactRational(1, 10), ExactRational(9, 10),
                                                          ExactRational(11, 10)},
                                                         1);
    CHECK(one.k0 >= 1.0);
    CHECK(one.im_identity_exact);
    const HalfPlaneBox box{ExactRational(-1, 2), ExactRational(1, 2), 1, 2};
    const CoefficientBound coarse = coefficient_bound_check(box, 6, 4);
    const CoefficientBound fine = coefficient_bound_check(box, 6, 8);
    CHECK(coarse.matrices > 0);
    CHECK(std::isfinite(fine.k0));
    CHECK(fine.k0 >= coarse.k0);
    CHECK(fine.k0 <= 2 * coarse.k0 + 1);
    CHECK(fine.im_identity_exact);
  }

  TEST_CASE("fixed points") {
    const auto s = fixed_point({0, -1, 1, 0});
    REQUIRE(s);
    CHECK(abs(s->tau0.as_complex() - BigComplex(0.0, 1.0, 128)) < 1e-35);
    CHECK(s->trace == 0);
    CHECK(s->conductor == 1);
    CHECK(s->fundamental_disc == -4);
    const auto t = fixed_point({0, -2, 1, 0});
    REQUIRE(t);
    CHECK(abs(t->tau0.im() - sqrt(BigFloat(2L, 128))) < 1e-35);
    CHECK(t->fundamental_disc == -8);
    CHECK_FALSE(fixed_point({1, 1, 0, 1}).has_value());
    CHECK_THROWS_AS(fixed_point({3, 0, 0, 3}), DomainError);
  }

  TEST_CASE("enumerated CM points") {
    const auto pts = enumerate_cm_points(6);
    bool has_sqrt2 = false;
    bool has_1728 = false;
    for (const CmPoint& p : pts) {
      CHECK(p.trace * p.trace < 4 * p.M);
      CHECK(p.matrix.det() == p.M);
      CHECK(p.tau0.in_fundamental_domain());
      // c tau^2 + (d - a) tau - b = 0
      const BigComplex tau = p.tau0.as_complex();
      const BigComplex res = tau * tau * p.matrix.c + tau * (p.matrix.d - p.matrix.a) - p.matrix.b;
      CHECK(abs(res) < std::ldexp(1.0, -(128 - 16)));
      if (abs(p.tau0.as_complex() - BigComplex(BigFloat(128), sqrt(BigFloat(2L, 128)))) < 1e-30) has_sqrt2 = true;
      if (abs(p.j - 1728) < 1e-20) has_1728 = true;
    }
    CHECK(has_sqrt2);
    CHECK(has_1728);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) CHECK_FALSE(j_close(pts[a].j, pts[b].j, multiset_tolerance(Precision())));
  }

  TEST_CASE("separation constant") {
    const auto pts = enumerate_cm_points(2);
    std::vector<CmPoint> pair{pts[0], pts[1]};
    const Separation s = min_separation_constant(pair, 1e7);
    const double sm1 = std::sqrt(static_cast<double>(pair[0].M)), sm2 = std::sqrt(static_cast<double>(pair[1].M));
    CHECK(s.c_obs == doctest::Approx(abs(pair[0].j - pair[1].j).to_double() * sm1 * sm2 * (sm1 + sm2)));
    CHECK_THROWS_AS(min_separation_constant({pts[0], pts[0]}, 1e7), DomainError);
    double prev = 1e300;
    for (std::int64_t m : {4, 10, 20}) {
      const double c = min_separation_constant(enumerate_cm_points(m), 1e7).c_obs;
      CHECK(c > 0);
      CHECK(c <= prev);
      prev = c;
    }
  }

  TEST_CASE("near-CM finder") {
    const ModularMatrix m{0, -2, 1, 0};
    const UpperHalfPoint tau0(BigFloat(128), sqrt(BigFloat(2L, 128)));
    const auto exact = near_cm_finder(tau0, apply(m, tau0), m);
    REQUIRE(exact);
    CHECK(exact->displacement < 1e-30);
    const UpperHalfPoint tau(BigFloat(1e-6, 128), sqrt(BigFloat(2L, 128)));
    const auto near = near_cm_finder(tau, apply(m, tau), m);
    REQUIRE(near);
    CHECK(abs(near->point.tau0.as_complex() - tau0.as_complex()) < 1e-30);
    CHECK(near->ratio <= near->k1 * std::sqrt(2.0));
    const ModularMatrix parabolic{1, 2, 0, 1};
    const UpperHalfPoint far(0.0, 5.0);
    CHECK_FALSE(near_cm_finder(far, apply(parabolic, far), parabolic, Precision(), 3.0).has_value());
    CHECK_THROWS_AS(near_cm_finder(far, apply(parabolic, far), parabolic), DomainError);
    CHECK_THROWS_AS(near_cm_finder(tau, tau, m), ValidationError);
  }

  TEST_CASE("density experiment examples") {
    const UpperHalfPoint y(0.3, 1.7);
    CHECK(density_experiment(y, BigComplex(128), 200, 20).members == 0);
    const DensityExperiment self = density_experiment(y, eval_j(y), 4, 10);
    CHECK(self.rows.front().member);
    CHECK(self.rows.size() == 10);
  }
}
