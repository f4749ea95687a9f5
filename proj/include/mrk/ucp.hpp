/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mrk/matrix.hpp"
#include "mrk/sdp.hpp"

namespace mrk::ucp {

// A unital completely positive map Phi: M_k -> M_n represented by its Choi
// matrix J = sum_ij E_ij (x) Phi(E_ij), a (k*n) x (k*n) Hermitian matrix with
// index (i, a) -> i*n + a. Phi is CP iff J >= 0 and unital iff the input
// partial trace of J equals I_n.
//
// Convention note: apply() realizes Phi(A) = Tr_in((A^T (x) I_n) J). The
// transpose on A is forced by the E_ij basis expansion and is the classic
// source of sign bugs; it is pinned down by tests against Kraus evaluation.
struct ChoiMap {
  int k = 0;  // input dimension
  int n = 0;  // output dimension
  CMat j;

  CMat apply(const CMat& a) const;
};

struct UcpVerdict {
  double psd_floor = 0.0;            // most negative eigenvalue of J
  double unitality_residual = 0.0;   // ||Tr_in J - I_n||_F
  double hermiticity_residual = 0.0;
  bool pass = false;
};

// Phi(A) = V*(A (x) I_r)V for an isometry V: C^n -> C^k (x) C^r
struct StinespringForm {
  CMat v;  // (k*r) x n, V*V = I_n
  int rank = 0;
  std::vector<CMat> kraus;  // r operators, n x k

  CMat apply(const CMat& a) const;
};

ChoiMap identity_map(int k);

// Phi(A) = sum_s K_s A K_s*; requires sum_s K_s K_s* = I_n (unitality)
ChoiMap from_kraus(const std::vector<CMat>& kraus);

UcpVerdict validate(const ChoiMap& phi, double tol = 1e-8);

// spectral factorization of J into Kraus operators and the stacked isometry
StinespringForm stinespring(const ChoiMap& phi, double tol = 1e-8);

// Haar-random Stinespring isometry with multiplicity r; unital by construction
ChoiMap random_ucp(int k, int n, int r, std::uint64_t seed);
ChoiMap random_ucp(int k, int n, int r, Rng& rng);

// Phi_x(Z) = <Z x, x> I_n for a unit vector x
ChoiMap state_map(const CVec& x, int n);

// (psi o phi)(A) = psi(phi(A))
ChoiMap compose(const ChoiMap& psi, const ChoiMap& phi);

// lambda_min( Phi(|T|^2)^{1/2} - |Phi(T)| ), nonnegative up to tolerance for
// every valid unital CP map
double kadison_schwarz_gap(const ChoiMap& phi, const CMat& t);

// the n^2 real equalities encoding Tr_in J = I_n
std::vector<sdp::Constraint> unitality_constraints(int k, int n);

// nearest point of the UCP spectrahedron, by alternating projections from j0
ChoiMap nearest_ucp(int k, int n, const CMat& j0, double tol = 1e-11,
                    int max_iter = 20000);

nlohmann::json to_json(const ChoiMap& phi);
ChoiMap choi_from_json(const nlohmann::json& j);

}  // namespace mrk::ucp
