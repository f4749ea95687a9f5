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

#include "mrk/ucp.hpp"
#include "oracles.hpp"

using namespace mrk;
using namespace mrk::ucp;

namespace {

CMat jordan2(double r = 1.0) {
  CMat t = CMat::Zero(2, 2);
  t(0, 1) = r;
  return t;
}

CVec unit(std::initializer_list<Complex> entries) {
  CVec x(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (Complex e : entries) x(i++) = e;
  return x / x.norm();
}

}  // namespace

TEST_CASE("from_kraus: identity map") {
  ChoiMap id = from_kraus({CMat::Identity(3, 3)});
  CMat expect = CMat::Zero(9, 9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      expect += kron(basis_matrix(3, i, j), basis_matrix(3, i, j));
    }
  }
  CHECK((id.j - expect).norm() < 1e-14);
  CHECK((id.j - identity_map(3).j).norm() == 0.0);
}

TEST_CASE("from_kraus: rank-one family is the state map") {
  Rng rng(103);
  CVec x = random_unit_vector(3, rng);
  const int n = 2;
  std::vector<CMat> kraus;
  for (int a = 0; a < n; ++a) {
    CMat op = CMat::Zero(n, 3);
    op.row(a) = x.adjoint();
    kraus.push_back(op);
  }
  ChoiMap phi = from_kraus(kraus);
  for (int trial = 0; trial < 5; ++trial) {
    CMat z = ginibre(3, 3, rng);
    const Complex val = (x.adjoint() * (z * x))(0, 0);
    CHECK((phi.apply(z) - val * CMat::Identity(n, n)).norm() < 1e-12);
  }
  CHECK((phi.j - state_map(x, n).j).norm() < 1e-14);
}

TEST_CASE("from_kraus: unitary conjugation") {
  CMat u = haar_isometry(2, 2, 5u);
  ChoiMap phi = from_kraus({u});
  CMat conj = kron(CMat::Identity(2, 2), u) * identity_map(2).j *
              kron(CMat::Identity(2, 2), u).adjoint();
  CHECK((phi.j - conj).norm() < 1e-13);
}

TEST_CASE("from_kraus rejects non-unital families") {
  CHECK_THROWS_AS(from_kraus({CMat(0.5 * CMat::Identity(2, 2))}),
                  std::invalid_argument);
}

TEST_CASE("apply") {
  Rng rng(107);
  ChoiMap id = identity_map(3);
  CMat a = ginibre(3, 3, rng);
  CHECK((id.apply(a) - a).norm() < 1e-14);

  // the omega-attaining witness of the Jordan block maps to (1/2) I_n
  CVec x = unit({1.0, 1.0});
  ChoiMap sm = state_map(x, 2);
  CHECK((sm.apply(jordan2()) - 0.5 * CMat::Identity(2, 2)).norm() < 1e-12);

  ChoiMap phi = random_ucp(3, 2, 2, 11u);
  CHECK((phi.apply(CMat::Identity(3, 3)) - CMat::Identity(2, 2)).norm() < 1e-8);
  for (int trial = 0; trial < 10; ++trial) {
    CMat m = ginibre(3, 3, rng);
    CHECK((phi.apply(m.adjoint()) - phi.apply(m).adjoint()).norm() < 1e-10);
  }

  CHECK_THROWS_AS(phi.apply(CMat::Identity(2, 2)), std::invalid_argument);
}

TEST_CASE("validate") {
  UcpVerdict ok = validate(identity_map(2));
  CHECK(ok.pass);
  CHECK(ok.psd_floor >= -1e-12);
  CHECK(ok.unitality_residual < 1e-12);

  // inject a negative eigenvalue
  ChoiMap bad = identity_map(2);
  EigenDecomposition ed = eig_hermitian(bad.j);
  const CVec dir = ed.vectors.col(0);  // eigenvalue 0 direction
  bad.j -= 0.01 * (dir * dir.adjoint());
  UcpVerdict v = validate(bad);
  CHECK_FALSE(v.pass);
  CHECK(v.psd_floor == doctest::Approx(-0.01).epsilon(1e-8));

  // transpose map: positive but not completely positive; its Choi matrix is
  // the swap operator with eigenvalue -1
  ChoiMap transpose_map;
  transpose_map.k = 2;
  transpose_map.n = 2;
  transpose_map.j = CMat::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      transpose_map.j += kron(basis_matrix(2, i, j), basis_matrix(2, j, i));
    }
  }
  UcpVerdict swap = validate(transpose_map);
  CHECK_FALSE(swap.pass);
  CHECK(swap.psd_floor == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(swap.unitality_residual < 1e-12);
}

TEST_CASE("stinespring factorization") {
  StinespringForm id = stinespring(identity_map(3));
  CHECK(id.rank == 1);
  CHECK((id.v.adjoint() * id.v - CMat::Identity(3, 3)).norm() < 1e-10);
  Rng rng(109);
  CMat a = ginibre(3, 3, rng);
  CHECK((id.apply(a) - a).norm() < 1e-10);

  CVec x = random_unit_vector(2, rng);
  StinespringForm sm = stinespring(state_map(x, 3));
  CHECK(sm.rank == 3);

  ChoiMap phi = random_ucp(3, 2, 2, 13u);
  StinespringForm st = stinespring(phi);
  CHECK((st.v.adjoint() * st.v - CMat::Identity(2, 2)).norm() < 1e-10);
  for (int trial = 0; trial < 5; ++trial) {
    CMat m = ginibre(3, 3, rng);
    CHECK((st.apply(m) - phi.apply(m)).norm() < 1e-8);
  }
  ChoiMap rebuilt = from_kraus(st.kraus);
  CHECK((rebuilt.j - phi.j).norm() < 1e-7);

  ChoiMap invalid;
  invalid.k = 2;
  invalid.n = 2;
  invalid.j = -CMat::Identity(4, 4);
  CHECK_THROWS_AS(stinespring(invalid), std::invalid_argument);
}

TEST_CASE("random_ucp") {
  // r = 1 with k = n forces a unitary conjugation
  ChoiMap phi = random_ucp(2, 2, 1, 17u);
  StinespringForm st = stinespring(phi);
  REQUIRE(st.rank == 1);
  const CMat& kraus = st.kraus.front();
  CHECK((kraus * kraus.adjoint() - CMat::Identity(2, 2)).norm() < 1e-9);

  CHECK(validate(random_ucp(2, 3, 2, 19u), 1e-9).pass);

  ChoiMap a = random_ucp(3, 2, 2, 23u);
  ChoiMap b = random_ucp(3, 2, 2, 23u);
  CHECK((a.j - b.j).norm() == 0.0);

  CHECK_THROWS_AS(random_ucp(2, 3, 1, 1u), std::invalid_argument);
}

TEST_CASE("state_map") {
  CVec e1 = unit({1.0, 0.0});
  ChoiMap sm = state_map(e1, 2);
  CHECK((sm.apply(basis_matrix(2, 0, 0)) - CMat::Identity(2, 2)).norm() < 1e-12);
  CHECK(sm.apply(jordan2()).norm() < 1e-12);

  CVec bad(2);
  bad << 1.0, 1.0;
  CHECK_THROWS_AS(state_map(bad, 2), std::invalid_argument);
}

TEST_CASE("compose") {
  ChoiMap phi = random_ucp(3, 2, 2, 29u);
  ChoiMap left = compose(identity_map(2), phi);
  CHECK((left.j - phi.j).norm() < 1e-10);

  Rng rng(113);
  CVec y = random_unit_vector(2, rng);
  ChoiMap sy = state_map(y, 2);
  ChoiMap both = compose(sy, phi);
  for (int trial = 0; trial < 5; ++trial) {
    CMat a = ginibre(3, 3, rng);
    const Complex val = (y.adjoint() * (phi.apply(a) * y))(0, 0);
    CHECK((both.apply(a) - val * CMat::Identity(2, 2)).norm() < 1e-8);
  }

  ChoiMap psi = random_ucp(2, 3, 2, 31u);
  ChoiMap chained = compose(psi, phi);
  CHECK(validate(chained, 1e-8).pass);
  for (int trial = 0; trial < 5; ++trial) {
    CMat a = ginibre(3, 3, rng);
    CHECK((chained.apply(a) - psi.apply(phi.apply(a))).norm() < 1e-8);
  }

  CHECK_THROWS_AS(compose(phi, phi), std::invalid_argument);
}

TEST_CASE("kadison-schwarz gap") {
  Rng rng(127);
  // identity map: Phi(|T|^2)^{1/2} equals |Phi(T)| exactly
  CMat normal = random_normal_matrix(3, rng);
  CHECK(std::abs(kadison_schwarz_gap(identity_map(3), normal)) < 1e-9);

  // state map reduces to scalar Cauchy-Schwarz
  CVec x = random_unit_vector(3, rng);
  ChoiMap sm = state_map(x, 2);
  for (int trial = 0; trial < 10; ++trial) {
    CMat t = ginibre(3, 3, rng);
    const double expect =
        std::sqrt((x.adjoint() * (t.adjoint() * t * x))(0, 0).real()) -
        std::abs((x.adjoint() * (t * x))(0, 0));
    CHECK(kadison_schwarz_gap(sm, t) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(expect >= -1e-12);
  }

  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform() * 3);
    const int n = 2 + static_cast<int>(rng.uniform() * 3);
    ChoiMap phi = random_ucp(k, n, k, rng);
    CMat t = ginibre(k, k, rng);
    CHECK(kadison_schwarz_gap(phi, t) >= -1e-7);
  }
}

TEST_CASE("positivity transport and trace bookkeeping") {
  Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    ChoiMap phi = random_ucp(3, 3, 2, rng);
    CHECK(std::abs(phi.j.trace().real() - 3.0) < 1e-8);
    CMat g = ginibre(3, 3, rng);
    CMat psd = g * g.adjoint();
    EigenDecomposition ed = eig_hermitian(phi.apply(psd), 1e-8);
    CHECK(ed.values(0) >= -1e-8);
  }
}

TEST_CASE("choi serialization round trip") {
  ChoiMap phi = random_ucp(3, 2, 2, 37u);
  ChoiMap back = choi_from_json(to_json(phi));
  CHECK(back.k == phi.k);
  CHECK(back.n == phi.n);
  CHECK((back.j - phi.j).norm() == 0.0);
}
