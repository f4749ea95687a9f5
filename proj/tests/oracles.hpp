/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Test-only oracles, kept independent of the library paths they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mrk/matrix.hpp"

namespace oracles {

using mrk::CMat;
using mrk::Complex;

// characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1]
inline std::vector<Complex> charpoly(const CMat& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> c(n);
  CMat m = a;
  c[0] = -m.trace();
  for (int k = 2; k <= n; ++k) {
    m = a * (m + c[k - 2] * CMat::Identity(n, n));
    c[k - 1] = -m.trace() / static_cast<double>(k);
  }
  return c;
}

// Durand-Kerner root finder for a monic polynomial with the charpoly
// coefficient convention above
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size());
  auto eval = [&](Complex x) {
    Complex p = 1.0;
    for (int i = 0; i < n; ++i) p = p * x + c[i];
    return p;
  };
  std::vector<Complex> roots(n);
  for (int i = 0; i < n; ++i) {
    roots[i] = std::pow(Complex(0.4, 0.9), i + 1);
  }
  for (int sweep = 0; sweep < 600; ++sweep) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) denom *= roots[i] - roots[j];
      }
      const Complex delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return roots;
}

// greedy multiset match distance between two complex lists
inline double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  while (!a.empty()) {
    const Complex x = a.back();
    a.pop_back();
    std::size_t best = 0;
    for (std::size_t j = 1; j < b.size(); ++j) {
      if (std::abs(b[j] - x) < std::abs(b[best] - x)) best = j;
    }
    worst = std::max(worst, std::abs(b[best] - x));
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

inline double frobenius_entrywise(const CMat& m) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  }
  return std::sqrt(acc);
}

inline double point_segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

// distance from z to the convex hull of points, by support comparison on a
// dense direction grid (hull of eigenvalues is the range of a normal matrix)
inline double hull_violation(Complex z, const std::vector<Complex>& pts,
                             int grid = 4096) {
  double worst = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = 2.0 * mrk::kPi * j / grid;
    const Complex dir = std::polar(1.0, theta);
    double support = -1e300;
    for (const Complex& p : pts) support = std::max(support, (dir * p).real());
    worst = std::max(worst, (dir * z).real() - support);
  }
  return worst;
}

}  // namespace oracles
