/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <optional>
#include <vector>

#include "mrk/matrix.hpp"

namespace mrk::numrange {

struct RangeEstimate {
  double omega = 0.0;       // numerical radius
  double theta_star = 0.0;  // maximizing angle of lambda_max(H_theta)
  CVec witness;             // unit vector with |<T x, x>| = omega
  std::vector<Complex> boundary;  // optional boundary polyline (may be empty)
  double tol = 0.0;         // achieved tolerance bound
};

// omega(T) = max_theta lambda_max(H_theta(T)) by a dense angular grid with
// golden-section refinement of the best local maxima
RangeEstimate numerical_radius(const CMat& t, double tol = 1e-10, int grid = 1024);

// <T x, x> for a top eigenvector x of H_theta(T): a boundary point of W(T)
Complex support_point(const CMat& t, double theta);

// boundary polyline at angles 2*pi*j/count
std::vector<Complex> boundary_points(const CMat& t, int count);

// z in the closure of W(T), tested against the support grid; ties within tol
// count as membership
bool contains_point(const CMat& t, Complex z, double tol);

// nu(A) = max over states rho and phases of Re(e^{i phi} Tr(rho A)),
// computed by a phi sweep of density-matrix SDPs; equals omega(A)
double state_radius_sdp(const CMat& a);

// n*omega(A) - ||A||_1, nonnegative up to tolerance
double trace_radius_inequality_gap(const CMat& a);

// every eigenvalue of T lies in the closure of W(T)
bool spectrum_containment_check(const CMat& t, double tol);

// inverse problem: unit x with <T x, x> = z, if z lies in W(T). Found by a
// boundary scan followed by two-dimensional compressions (the constructive
// side of Toeplitz-Hausdorff).
std::optional<CVec> range_witness(const CMat& t, Complex z, double tol = 1e-9);

}  // namespace mrk::numrange
