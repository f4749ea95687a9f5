/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "mrk/rng.hpp"

namespace mrk {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  CMat vectors;            // columns are orthonormal eigenvectors
};

// conjugate transpose
CMat adjoint(const CMat& m);

// H_theta = (e^{i theta} T + e^{-i theta} T*) / 2, assembled exactly Hermitian
CMat rotated_hermitian_part(const CMat& t, double theta);

// full spectral decomposition of a Hermitian matrix; throws if the
// Hermiticity defect exceeds tol
EigenDecomposition eig_hermitian(const CMat& h, double tol = 1e-9);

// all eigenvalues with multiplicity, sorted by (re, im)
std::vector<Complex> spectrum(const CMat& m);

// (sum sigma_i^p)^{1/p} over singular values; p = infinity gives the
// operator norm, p = 1 the trace norm; throws for p < 1
double schatten_norm(const CMat& m, double p);

CMat kron(const CMat& a, const CMat& b);

enum class TraceSide { Input, Output };

// m acts on C^k (x) C^n with index (i, a) -> i*n + a; Input traces out the
// k-dimensional factor yielding an n x n result, Output the n-dimensional one
CMat partial_trace(const CMat& m, int k, int n, TraceSide side);

// Haar-distributed isometry via Ginibre + QR with R-diagonal phase fix
CMat haar_isometry(int rows, int cols, Rng& rng);
CMat haar_isometry(int rows, int cols, std::uint64_t seed);

// i.i.d. standard complex Gaussian entries
CMat ginibre(int rows, int cols, Rng& rng);

CMat random_hermitian(int dim, Rng& rng);
CMat random_unit_disk_matrix(int dim, Rng& rng);   // entries uniform in |z| <= 1
CMat random_normal_matrix(int dim, Rng& rng);      // U* diag(z) U, z in 2-disk
CVec random_unit_vector(int dim, Rng& rng);

CMat basis_matrix(int dim, int i, int j);          // E_ij
CMat direct_sum(const CMat& a, const CMat& b);

// Re Tr(a* b); real for Hermitian pairs
double hs_inner(const CMat& a, const CMat& b);

double hermiticity_error(const CMat& m);           // ||M - M*||_F
bool all_finite(const CMat& m);

// nearest PSD square root of a Hermitian PSD matrix (eigenvalues clipped at 0)
CMat psd_sqrt(const CMat& h);

// |M| = (M* M)^{1/2}
CMat matrix_abs(const CMat& m);

}  // namespace mrk
