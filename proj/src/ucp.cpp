/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/ucp.hpp"

#include <cmath>
#include <stdexcept>

#include "mrk/matrix_io.hpp"

namespace mrk::ucp {

namespace {

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

double min_eig(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(h), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ucp: eigensolver failed");
  }
  return es.eigenvalues().minCoeff();
}

}  // namespace

CMat ChoiMap::apply(const CMat& a) const {
  if (a.rows() != k || a.cols() != k) {
    throw std::invalid_argument("ChoiMap::apply: dimension mismatch");
  }
  // Phi(A) = sum_ij A_ij Phi(E_ij), with Phi(E_ij) sitting in block (i, j)
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < k; ++i) {
    for (int jj = 0; jj < k; ++jj) {
      out += a(i, jj) * j.block(static_cast<Eigen::Index>(i) * n,
                                static_cast<Eigen::Index>(jj) * n, n, n);
    }
  }
  return out;
}

CMat StinespringForm::apply(const CMat& a) const {
  const int r = rank;
  return v.adjoint() * kron(a, CMat::Identity(r, r)) * v;
}

ChoiMap identity_map(int k) {
  ChoiMap phi;
  phi.k = k;
  phi.n = k;
  phi.j = CMat::Zero(static_cast<Eigen::Index>(k) * k,
                     static_cast<Eigen::Index>(k) * k);
  for (int i = 0; i < k; ++i) {
    for (int jj = 0; jj < k; ++jj) {
      phi.j(static_cast<Eigen::Index>(i) * k + i,
            static_cast<Eigen::Index>(jj) * k + jj) = 1.0;
    }
  }
  return phi;
}

ChoiMap from_kraus(const std::vector<CMat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("from_kraus: empty Kraus list");
  const int n = static_cast<int>(kraus.front().rows());
  const int k = static_cast<int>(kraus.front().cols());
  CMat unit = CMat::Zero(n, n);
  for (const CMat& op : kraus) {
    if (op.rows() != n || op.cols() != k) {
      throw std::invalid_argument("from_kraus: inconsistent Kraus dimensions");
    }
    unit += op * op.adjoint();
  }
  if ((unit - CMat::Identity(n, n)).norm() > 1e-8) {
    throw std::invalid_argument("from_kraus: map is not unital (sum K K* != I)");
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(k) * n;
  CMat j = CMat::Zero(dim, dim);
  CVec w(dim);
  for (const CMat& op : kraus) {
    for (int i = 0; i < k; ++i) {
      for (int a = 0; a < n; ++a) w(static_cast<Eigen::Index>(i) * n + a) = op(a, i);
    }
    j += w * w.adjoint();
  }
  return {k, n, j};
}

UcpVerdict validate(const ChoiMap& phi, double tol) {
  UcpVerdict v;
  v.hermiticity_residual = hermiticity_error(phi.j);
  v.psd_floor = min_eig(phi.j);
  v.unitality_residual =
      (partial_trace(phi.j, phi.k, phi.n, TraceSide::Input) -
       CMat::Identity(phi.n, phi.n))
          .norm();
  v.pass = v.psd_floor >= -tol && v.unitality_residual <= tol &&
           v.hermiticity_residual <= tol;
  return v;
}

StinespringForm stinespring(const ChoiMap& phi, double tol) {
  const UcpVerdict verdict = validate(phi, tol);
  if (!verdict.pass) {
    throw std::invalid_argument("stinespring: map fails UCP validation");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(phi.j));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("stinespring: eigensolver failed");
  }
  const double cut = 1e-10 * std::max(1.0, phi.j.trace().real());

  StinespringForm form;
  for (Eigen::Index s = 0; s < es.eigenvalues().size(); ++s) {
    const double lambda = es.eigenvalues()(s);
    if (lambda <= cut) continue;
    const CVec w = std::sqrt(lambda) * es.eigenvectors().col(s);
    CMat op(phi.n, phi.k);
    for (int i = 0; i < phi.k; ++i) {
      for (int a = 0; a < phi.n; ++a) {
        op(a, i) = w(static_cast<Eigen::Index>(i) * phi.n + a);
      }
    }
    form.kraus.push_back(std::move(op));
  }
  form.rank = static_cast<int>(form.kraus.size());
  if (form.rank == 0) {
    throw std::runtime_error("stinespring: Choi matrix is numerically zero");
  }

  const int r = form.rank;
  form.v = CMat::Zero(static_cast<Eigen::Index>(phi.k) * r, phi.n);
  for (int s = 0; s < r; ++s) {
    for (int i = 0; i < phi.k; ++i) {
      for (int a = 0; a < phi.n; ++a) {
        form.v(static_cast<Eigen::Index>(i) * r + s, a) =
            std::conj(form.kraus[s](a, i));
      }
    }
  }
  return form;
}

ChoiMap random_ucp(int k, int n, int r, Rng& rng) {
  if (k <= 0 || n <= 0 || r <= 0 || static_cast<long long>(k) * r < n) {
    throw std::invalid_argument("random_ucp: need k*r >= n");
  }
  const CMat v = haar_isometry(k * r, n, rng);
  std::vector<CMat> kraus(r, CMat(n, k));
  for (int s = 0; s < r; ++s) {
    for (int i = 0; i < k; ++i) {
      for (int a = 0; a < n; ++a) {
        kraus[s](a, i) = std::conj(v(static_cast<Eigen::Index>(i) * r + s, a));
      }
    }
  }
  return from_kraus(kraus);
}

ChoiMap random_ucp(int k, int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  return random_ucp(k, n, r, rng);
}

ChoiMap state_map(const CVec& x, int n) {
  if (std::abs(x.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state_map: x must be a unit vector");
  }
  const int k = static_cast<int>(x.size());
  std::vector<CMat> kraus;
  kraus.reserve(n);
  for (int a = 0; a < n; ++a) {
    CMat op = CMat::Zero(n, k);
    for (int i = 0; i < k; ++i) op(a, i) = std::conj(x(i));
    kraus.push_back(std::move(op));
  }
  return from_kraus(kraus);
}

ChoiMap compose(const ChoiMap& psi, const ChoiMap& phi) {
  if (psi.k != phi.n) {
    throw std::invalid_argument("compose: inner dimensions do not match");
  }
  const int k = phi.k;
  const int m = psi.n;
  ChoiMap out;
  out.k = k;
  out.n = m;
  out.j = CMat::Zero(static_cast<Eigen::Index>(k) * m,
                     static_cast<Eigen::Index>(k) * m);
  for (int i = 0; i < k; ++i) {
    for (int jj = 0; jj < k; ++jj) {
      const CMat inner = phi.j.block(static_cast<Eigen::Index>(i) * phi.n,
                                     static_cast<Eigen::Index>(jj) * phi.n,
                                     phi.n, phi.n);
      out.j.block(static_cast<Eigen::Index>(i) * m,
                  static_cast<Eigen::Index>(jj) * m, m, m) = psi.apply(inner);
    }
  }
  return out;
}

double kadison_schwarz_gap(const ChoiMap& phi, const CMat& t) {
  if (!validate(phi).pass) {
    throw std::invalid_argument("kadison_schwarz_gap: map fails UCP validation");
  }
  const CMat lhs = psd_sqrt(phi.apply(t.adjoint() * t));
  const CMat rhs = matrix_abs(phi.apply(t));
  return min_eig(lhs - rhs);
}

std::vector<sdp::Constraint> unitality_constraints(int k, int n) {
  std::vector<sdp::Constraint> constr;
  constr.reserve(static_cast<std::size_t>(n) * n);
  const CMat eye = CMat::Identity(k, k);
  for (int a = 0; a < n; ++a) {
    constr.push_back({kron(eye, basis_matrix(n, a, a)), 1.0});
    for (int b = a + 1; b < n; ++b) {
      const CMat eab = basis_matrix(n, a, b);
      const CMat eba = basis_matrix(n, b, a);
      constr.push_back({kron(eye, 0.5 * (eba + eab)), 0.0});
      constr.push_back({kron(eye, (eba - eab) / Complex(0.0, 2.0)), 0.0});
    }
  }
  return constr;
}

ChoiMap nearest_ucp(int k, int n, const CMat& j0, double tol, int max_iter) {
  const sdp::SdpProblem unital(k * n, CMat(), unitality_constraints(k, n));
  CMat z = hermitize(j0);
  for (int it = 0; it < max_iter; ++it) {
    const CMat y = unital.project_affine(z);
    z = sdp::project_psd(y);
    if ((y - z).norm() <= tol && unital.residual_norm(z) <= tol) break;
  }
  return {k, n, z};
}

nlohmann::json to_json(const ChoiMap& phi) {
  return {{"k", phi.k}, {"n", phi.n}, {"J", matrix_to_json(phi.j)}};
}

ChoiMap choi_from_json(const nlohmann::json& j) {
  ChoiMap phi;
  phi.k = j.at("k").get<int>();
  phi.n = j.at("n").get<int>();
  phi.j = matrix_from_json(j.at("J"));
  if (phi.k <= 0 || phi.n <= 0 ||
      phi.j.rows() != static_cast<Eigen::Index>(phi.k) * phi.n ||
      phi.j.rows() != phi.j.cols()) {
    throw std::runtime_error("choi json: inconsistent dimensions");
  }
  return phi;
}

}  // namespace mrk::ucp
