/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrk/matrange.hpp"
#include "mrk/numrange.hpp"
#include "oracles.hpp"

using namespace mrk;
using namespace mrk::matrange;

namespace {

CMat jordan2(double r = 1.0) {
  CMat t = CMat::Zero(2, 2);
  t(0, 1) = r;
  return t;
}

}  // namespace

TEST_CASE("membership against the known Jordan range") {
  CMat x = CMat::Zero(2, 2);
  x(0, 0) = 0.3;
  x(1, 1) = -0.2;
  MembershipVerdict in = membership(jordan2(), x);
  CHECK(in.status == Membership::Member);
  REQUIRE(in.witness.has_value());
  CHECK((in.witness->apply(jordan2()) - x).norm() <= in.tol);
  CHECK(ucp::validate(*in.witness).pass);

  MembershipVerdict out = membership(jordan2(), CMat(0.6 * CMat::Identity(2, 2)));
  CHECK(out.status == Membership::NonMember);
  CHECK(out.distance > 10.0 * out.tol);
}

TEST_CASE("scalar images of range values are members with explicit witnesses") {
  Rng rng(139);
  for (int trial = 0; trial < 5; ++trial) {
    CMat t = ginibre(3, 3, rng);
    CVec x = random_unit_vector(3, rng);
    const Complex c = (x.adjoint() * (t * x))(0, 0);
    const int n = 2;
    MembershipVerdict v = membership(t, CMat(c * CMat::Identity(n, n)));
    CHECK(v.status == Membership::Member);

    // the state map itself is a valid witness
    ucp::ChoiMap sm = ucp::state_map(x, n);
    CHECK((sm.apply(t) - c * CMat::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("nu_n") {
  SupremumResult jn = nu_n(jordan2(), 2);
  CHECK(jn.value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(jn.converged);
  CHECK(ucp::validate(jn.witness).pass);

  const Complex alpha(0.4, -0.9);
  for (int n : {1, 3}) {
    SupremumResult sc = nu_n(CMat(alpha * CMat::Identity(2, 2)), n);
    CHECK(sc.value == doctest::Approx(n * std::abs(alpha)).epsilon(1e-6));
  }

  Rng rng(149);
  for (int trial = 0; trial < 3; ++trial) {
    CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
    const double om = numrange::numerical_radius(t).omega;
    SupremumResult r = nu_n(t, 2);
    CHECK(std::abs(r.value - 2.0 * om) <= 1e-4);
    CHECK(r.lower_bound <= r.value + 1e-9);
    CHECK(r.value <= r.upper_bound + 1e-4);
  }
}

TEST_CASE("omega_n") {
  for (double r : {0.5, 3.0}) {
    for (int n : {2, 3}) {
      SupremumResult res = omega_n(jordan2(r), n);
      CHECK(res.value == doctest::Approx(n * r / 2.0).epsilon(1e-4));
      CHECK(res.converged);
    }
  }

  CMat normal = CMat::Zero(3, 3);
  normal(0, 0) = 1;
  normal(1, 1) = -2;
  normal(2, 2) = Complex(0, 1);
  SupremumResult eq = omega_n(normal, 2);
  CHECK(eq.value == doctest::Approx(4.0).epsilon(1e-4));

  SupremumResult id = omega_n(CMat::Identity(2, 2), 3);
  CHECK(id.value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("sup_opnorm") {
  SupremumResult j = sup_opnorm(jordan2(), 2);
  CHECK(j.value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(j.converged);

  const Complex alpha(-1.1, 0.4);
  SupremumResult sc = sup_opnorm(CMat(alpha * CMat::Identity(2, 2)), 2);
  CHECK(sc.value == doctest::Approx(std::abs(alpha)).epsilon(1e-6));

  Rng rng(151);
  CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
  SupremumResult r = sup_opnorm(t, 2);
  CHECK(r.value ==
        doctest::Approx(schatten_norm(t, std::numeric_limits<double>::infinity()))
            .epsilon(1e-4));
}

TEST_CASE("sup_inner_radius") {
  for (double r : {0.5, 2.0}) {
    SupremumResult res = sup_inner_radius(jordan2(r), 2);
    CHECK(res.value == doctest::Approx(r / 2.0).epsilon(1e-4));
  }

  const Complex alpha(0.3, 0.8);
  SupremumResult sc = sup_inner_radius(CMat(alpha * CMat::Identity(2, 2)), 2);
  CHECK(sc.value == doctest::Approx(std::abs(alpha)).epsilon(1e-6));

  Rng rng(157);
  CMat t = ginibre(2, 2, rng);
  SupremumResult r = sup_inner_radius(t, 2);
  CHECK(r.value == doctest::Approx(numrange::numerical_radius(t).omega).epsilon(1e-4));
}

TEST_CASE("sup_schatten_known closed forms") {
  CHECK(sup_schatten_known(KnownRange::shift(4), 1.0) == doctest::Approx(4.0));
  CHECK(sup_schatten_known(KnownRange::shift(4), 2.0) == doctest::Approx(2.0));
  CHECK(sup_schatten_known(KnownRange::shift(3),
                           std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0));
  CHECK(sup_schatten_known(KnownRange::jordan(1.0, 3), 1.0) == doctest::Approx(1.5));
  CHECK(sup_schatten_known(KnownRange::jordan(2.0, 3),
                           std::numeric_limits<double>::infinity()) ==
        doctest::Approx(2.0));
  CHECK(sup_schatten_known(KnownRange::jordan(2.0, 1), 7.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(sup_schatten_known(KnownRange::jordan(1.0, 2), 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sup_schatten_known(KnownRange::shift(2), 0.9),
                  std::invalid_argument);
}

TEST_CASE("the naive Jordan p-norm formula is refuted by the block itself") {
  // omega([[0,r],[0,0]]) = r/2 puts the block inside the range, but its
  // Frobenius norm r exceeds (r/2)*sqrt(2); hence no (r/2)*n^{1/p} closed form
  const double r = 1.0;
  CMat nil = jordan2(r);
  CHECK(numrange::numerical_radius(nil).omega == doctest::Approx(r / 2));
  CHECK(schatten_norm(nil, 2.0) == doctest::Approx(r));
  CHECK(schatten_norm(nil, 2.0) > (r / 2.0) * std::sqrt(2.0) + 0.2);

  // and a sampled scan over the range never beats the exposed p = 1 form
  Rng rng(163);
  const int n = 2;
  double worst1 = 0.0;
  for (int i = 0; i < 300; ++i) {
    CMat x = random_unit_disk_matrix(n, rng);
    const double om = numrange::numerical_radius(x).omega;
    if (om > 1e-12) x *= (r / 2.0) * rng.uniform() / om;
    worst1 = std::max(worst1, schatten_norm(x, 1.0));
  }
  CHECK(worst1 <= sup_schatten_known(KnownRange::jordan(r, n), 1.0) + 1e-6);
}

TEST_CASE("known_membership") {
  CHECK(known_membership(KnownRange::jordan(1.0, 3),
                         CMat(0.5 * CMat::Identity(3, 3)), 1e-9));
  CHECK(known_membership(KnownRange::shift(3), haar_isometry(3, 3, 41u), 1e-9));
  CMat big = CMat::Zero(2, 2);
  big(0, 1) = 1.1;
  CHECK_FALSE(known_membership(KnownRange::jordan(1.0, 2), big, 1e-9));
}

TEST_CASE("cstar_combination") {
  Rng rng(167);
  CMat x = ginibre(2, 2, rng);
  CHECK((cstar_combination({x}, {CMat::Identity(2, 2)}, 1e-10) - x).norm() == 0.0);

  CMat x2 = ginibre(2, 2, rng);
  const double inv = 1.0 / std::sqrt(2.0);
  CMat mid = cstar_combination({x, x2},
                               {CMat(inv * CMat::Identity(2, 2)),
                                CMat(inv * CMat::Identity(2, 2))},
                               1e-10);
  CHECK((mid - 0.5 * (x + x2)).norm() < 1e-12);

  CHECK_THROWS_AS(cstar_combination({x}, {CMat(0.5 * CMat::Identity(2, 2))}, 1e-10),
                  std::invalid_argument);

  // members of the Jordan range stay inside under C*-convex combinations
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3, n = 2;
    std::vector<CMat> xs, as;
    for (int j = 0; j < m; ++j) {
      xs.push_back(ucp::random_ucp(2, n, 2, rng).apply(jordan2()));
    }
    CMat stack = haar_isometry(m * n, n, rng);
    for (int j = 0; j < m; ++j) as.push_back(stack.middleRows(j * n, n));
    CMat combo = cstar_combination(xs, as, 1e-8);
    CHECK(known_membership(KnownRange::jordan(1.0, n), combo, 1e-7));
    CHECK(membership(jordan2(), combo).status == Membership::Member);
  }
}

TEST_CASE("lemma inclusion check") {
  LemmaCheck inside = lemma_inclusion_check(CMat(0.5 * CMat::Identity(2, 2)),
                                            jordan2(), 2, 1e-8, 5);
  CHECK(inside.spectral_side);
  CHECK(inside.sampled_inclusion);

  LemmaCheck outside =
      lemma_inclusion_check(CMat::Identity(2, 2), jordan2(), 2, 1e-8, 3);
  CHECK_FALSE(outside.spectral_side);
  CHECK_FALSE(outside.sampled_inclusion);

  Rng rng(173);
  CMat normal = random_normal_matrix(3, rng);
  LemmaCheck self = lemma_inclusion_check(normal, normal, 2, 1e-8, 5);
  CHECK(self.spectral_side);
  CHECK(self.sampled_inclusion);

  CHECK_THROWS_AS(lemma_inclusion_check(jordan2(), jordan2(), 2, 1e-10, 1),
                  std::invalid_argument);
}

TEST_CASE("composition inclusion") {
  CHECK(composition_inclusion_check(jordan2(), 2, 1, 10, 1e-6));

  // scalar outputs of composed maps stay in the disk of radius 1/2
  Rng rng(179);
  for (int i = 0; i < 10; ++i) {
    ucp::ChoiMap phi = ucp::random_ucp(2, 2, 2, rng);
    ucp::ChoiMap psi = ucp::random_ucp(2, 1, 2, rng);
    const Complex z = psi.apply(phi.apply(jordan2()))(0, 0);
    CHECK(numrange::contains_point(jordan2(), z, 1e-8));
  }

  const Complex alpha(0.2, 0.7);
  CHECK(composition_inclusion_check(CMat(alpha * CMat::Identity(2, 2)), 2, 2, 5,
                                    1e-6));

  CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
  CHECK(composition_inclusion_check(t, 2, 2, 10, 1e-6));
}

TEST_CASE("nu at n = 1 matches the state radius") {
  Rng rng(181);
  for (int trial = 0; trial < 3; ++trial) {
    CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
    CHECK(std::abs(nu_n(t, 1).value - numrange::state_radius_sdp(t)) <= 1e-5);
  }
}

TEST_CASE("nu invariances") {
  Rng rng(191);
  CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
  const double base = nu_n(t, 2).value;

  CMat u = haar_isometry(3, 3, rng);
  CHECK(std::abs(nu_n(CMat(u.adjoint() * t * u), 2).value - base) <= 1e-5);
  CHECK(std::abs(nu_n(adjoint(t), 2).value - base) <= 1e-5);
}

TEST_CASE("membership is adjoint covariant through the same witness") {
  Rng rng(193);
  CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
  CMat x = ucp::random_ucp(3, 2, 3, rng).apply(t);
  MembershipVerdict v = membership(t, x);
  REQUIRE(v.status == Membership::Member);
  REQUIRE(v.witness.has_value());
  // Phi(T*) = Phi(T)* for the very same Choi matrix
  CHECK((v.witness->apply(adjoint(t)) - adjoint(x)).norm() <= 2.0 * v.tol);
  CHECK(membership(adjoint(t), adjoint(x), 1e-6, &*v.witness).status ==
        Membership::Member);
}

TEST_CASE("affine covariance reuses the witness") {
  Rng rng(197);
  CMat t = ginibre(2, 2, rng);
  CMat x = ucp::random_ucp(2, 2, 2, rng).apply(t);
  MembershipVerdict v = membership(t, x);
  REQUIRE(v.status == Membership::Member);
  REQUIRE(v.witness.has_value());

  const Complex alpha(0.7, -0.3), beta(1.2, 0.5);
  CMat t2 = alpha * t + beta * CMat::Identity(2, 2);
  CMat x2 = alpha * x + beta * CMat::Identity(2, 2);
  CHECK((v.witness->apply(t2) - x2).norm() <= 4.0 * v.tol * std::abs(alpha) + 1e-9);
  CHECK(membership(t2, x2, 1e-6, &*v.witness).status == Membership::Member);
}

TEST_CASE("membership over a scalar operator is decided by the affine system") {
  const Complex alpha(0.5, -0.1);
  CMat t = alpha * CMat::Identity(3, 3);
  CHECK(membership(t, CMat(alpha * CMat::Identity(2, 2))).status ==
        Membership::Member);
  CHECK(membership(t, CMat((alpha + 0.2) * CMat::Identity(2, 2))).status ==
        Membership::NonMember);
}

TEST_CASE("bound hierarchy") {
  Rng rng(199);
  for (int trial = 0; trial < 3; ++trial) {
    CMat t = ginibre(3, 3, rng) / std::sqrt(3.0);
    const int n = 2;
    const double nu = nu_n(t, n).value;
    const double om = omega_n(t, n).value;
    const double cap =
        n * schatten_norm(t, std::numeric_limits<double>::infinity());
    CHECK(nu <= om + 1e-5);
    CHECK(om <= cap + 1e-5);
  }
}

TEST_CASE("supremum witnesses reproduce their values") {
  Rng rng(211);
  CMat t = ginibre(2, 2, rng);
  SupremumResult nu = nu_n(t, 2);
  CHECK(std::abs(std::abs(nu.witness.apply(t).trace()) - nu.value) <= 1e-6);

  SupremumResult om = omega_n(t, 2);
  CHECK(std::abs(schatten_norm(om.witness.apply(t), 1.0) - om.value) <= 1e-9);

  SupremumResult ir = sup_inner_radius(t, 2);
  CHECK(std::abs(numrange::numerical_radius(ir.witness.apply(t)).omega - ir.value) <=
        1e-9);
}

TEST_CASE("verdict serialization") {
  MembershipVerdict v = membership(jordan2(), CMat(0.5 * CMat::Identity(2, 2)));
  nlohmann::json j = to_json(v);
  CHECK(j.at("status") == "member");
  CHECK(j.contains("witness"));

  SupremumResult r = nu_n(jordan2(), 2);
  nlohmann::json jr = to_json(r);
  CHECK(jr.at("method") == "sweep_sdp");
  CHECK(jr.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-4));
}
