/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrk {

CMat adjoint(const CMat& m) { return m.adjoint(); }

CMat rotated_hermitian_part(const CMat& t, double theta) {
  if (t.rows() != t.cols()) {
    throw std::invalid_argument("rotated_hermitian_part: matrix must be square");
  }
  const Complex phase = std::polar(1.0, theta);
  CMat g = phase * t;
  const auto d = t.rows();
  CMat h(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    h(i, i) = Complex(g(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const Complex v = 0.5 * (g(i, j) + std::conj(g(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

EigenDecomposition eig_hermitian(const CMat& h, double tol) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("eig_hermitian: matrix must be square");
  }
  if (hermiticity_error(h) > tol * std::max(1.0, h.norm())) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tol");
  }
  CMat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<Complex> spectrum(const CMat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("spectrum: matrix must be square");
  }
  Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectrum: eigensolver failed to converge");
  }
  std::vector<Complex> vals(es.eigenvalues().data(),
                            es.eigenvalues().data() + m.rows());
  std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return vals;
}

double schatten_norm(const CMat& m, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("schatten_norm: p must be >= 1");
  }
  Eigen::JacobiSVD<CMat> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0) return 0.0;
  if (std::isinf(p)) return sv(0);
  if (p == 1.0) return sv.sum();
  if (p == 2.0) return sv.norm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  return std::pow(acc, 1.0 / p);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat partial_trace(const CMat& m, int k, int n, TraceSide side) {
  if (k <= 0 || n <= 0 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(k) * n) {
    throw std::invalid_argument("partial_trace: size must factor as k*n");
  }
  if (side == TraceSide::Input) {
    CMat out = CMat::Zero(n, n);
    for (int i = 0; i < k; ++i) {
      out += m.block(static_cast<Eigen::Index>(i) * n,
                     static_cast<Eigen::Index>(i) * n, n, n);
    }
    return out;
  }
  CMat out = CMat::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out(i, j) = m.block(static_cast<Eigen::Index>(i) * n,
                          static_cast<Eigen::Index>(j) * n, n, n)
                      .trace();
    }
  }
  return out;
}

CMat ginibre(int rows, int cols, Rng& rng) {
  CMat g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  return g;
}

CMat haar_isometry(int rows, int cols, Rng& rng) {
  if (cols > rows || cols <= 0) {
    throw std::invalid_argument("haar_isometry: need 0 < cols <= rows");
  }
  CMat g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(rows, cols);
  CMat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // fix the R-diagonal phases so the distribution is Haar
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

CMat haar_isometry(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed);
  return haar_isometry(rows, cols, rng);
}

CMat random_hermitian(int dim, Rng& rng) {
  CMat g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

CMat random_unit_disk_matrix(int dim, Rng& rng) {
  CMat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = rng.unit_disk();
  }
  return m;
}

CMat random_normal_matrix(int dim, Rng& rng) {
  CMat u = haar_isometry(dim, dim, rng);
  CMat d = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) d(i, i) = 2.0 * rng.unit_disk();
  return u.adjoint() * d * u;
}

CVec random_unit_vector(int dim, Rng& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

CMat basis_matrix(int dim, int i, int j) {
  CMat e = CMat::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

double hs_inner(const CMat& a, const CMat& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

double hermiticity_error(const CMat& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

bool all_finite(const CMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

CMat psd_sqrt(const CMat& h) {
  EigenDecomposition ed = eig_hermitian(h, 1e-8);
  Eigen::VectorXd roots(ed.values.size());
  for (Eigen::Index i = 0; i < ed.values.size(); ++i) {
    roots(i) = std::sqrt(std::max(0.0, ed.values(i)));
  }
  return ed.vectors * roots.asDiagonal() * ed.vectors.adjoint();
}

CMat matrix_abs(const CMat& m) { return psd_sqrt(m.adjoint() * m); }

}  // namespace mrk
