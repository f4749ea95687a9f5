/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrk/sdp.hpp"

namespace mrk::numrange {

namespace {

constexpr int kSweepGrid = 1024;

struct TopEig {
  double value;
  CVec vector;
};

TopEig top_eigenpair(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("numrange: eigensolver failed");
  }
  const Eigen::Index last = h.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

double lambda_max_theta(const CMat& t, double theta) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rotated_hermitian_part(t, theta),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("numrange: eigensolver failed");
  }
  return es.eigenvalues()(t.rows() - 1);
}

// golden-section maximization; keeps the best evaluated point
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, double width) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

Complex quadratic_form(const CMat& t, const CVec& x) {
  return (x.adjoint() * (t * x))(0, 0);
}

}  // namespace

RangeEstimate numerical_radius(const CMat& t, double tol, int grid) {
  if (t.rows() != t.cols()) {
    throw std::invalid_argument("numerical_radius: matrix must be square");
  }
  if (grid < 8) grid = 8;
  (void)tol;
  const Eigen::Index d = t.rows();
  RangeEstimate est;
  est.witness = CVec::Zero(d);
  est.witness(0) = 1.0;
  if (t.norm() == 0.0) return est;

  std::vector<double> f(grid);
  for (int j = 0; j < grid; ++j) {
    f[j] = lambda_max_theta(t, 2.0 * kPi * j / grid);
  }

  // refine the best few local maxima; the support function can carry several
  // competing caps
  std::vector<int> peaks;
  for (int j = 0; j < grid; ++j) {
    const double prev = f[(j + grid - 1) % grid];
    const double next = f[(j + 1) % grid];
    if (f[j] >= prev && f[j] >= next) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return f[a] > f[b]; });
  if (peaks.size() > 3) peaks.resize(3);

  const double h = 2.0 * kPi / grid;
  const double width = 1e-12;
  double best_theta = 0.0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int j : peaks) {
    const double center = 2.0 * kPi * j / grid;
    auto [theta, val] = golden_max(
        [&](double th) { return lambda_max_theta(t, th); }, center - h, center + h, width);
    if (val > best_val) {
      best_val = val;
      best_theta = theta;
    }
  }

  TopEig top = top_eigenpair(rotated_hermitian_part(t, best_theta));
  est.omega = top.value;
  est.theta_star = best_theta < 0.0 ? best_theta + 2.0 * kPi : best_theta;
  est.witness = top.vector;
  est.tol = schatten_norm(t, std::numeric_limits<double>::infinity()) *
                (1.0 - std::cos(kPi / grid)) +
            width;
  return est;
}

Complex support_point(const CMat& t, double theta) {
  TopEig top = top_eigenpair(rotated_hermitian_part(t, theta));
  return quadratic_form(t, top.vector);
}

std::vector<Complex> boundary_points(const CMat& t, int count) {
  if (count < 3) throw std::invalid_argument("boundary_points: count must be >= 3");
  std::vector<Complex> pts(count);
  for (int j = 0; j < count; ++j) {
    pts[j] = support_point(t, 2.0 * kPi * j / count);
  }
  return pts;
}

bool contains_point(const CMat& t, Complex z, double tol) {
  if (t.rows() != t.cols()) {
    throw std::invalid_argument("contains_point: matrix must be square");
  }
  for (int j = 0; j < kSweepGrid; ++j) {
    const double theta = 2.0 * kPi * j / kSweepGrid;
    const double support = lambda_max_theta(t, theta);
    const double reach = (std::polar(1.0, theta) * z).real();
    if (reach > support + tol) return false;
  }
  return true;
}

double state_radius_sdp(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("state_radius_sdp: matrix must be square");
  }
  const int d = static_cast<int>(a.rows());
  if (a.norm() == 0.0) return 0.0;

  std::vector<sdp::Constraint> constr;
  constr.push_back({CMat::Identity(d, d), 1.0});
  sdp::SolverState warm;

  auto value_at = [&](double phi) {
    sdp::SdpProblem prob(d, -rotated_hermitian_part(a, phi), constr);
    sdp::SdpSolution sol = sdp::solve(prob, 1e-8, 200000, &warm);
    if (sol.status != sdp::SolveStatus::Optimal) {
      throw std::runtime_error("state_radius_sdp: solver did not converge");
    }
    return -sol.value;
  };

  const int grid = 64;
  std::vector<double> g(grid);
  int best = 0;
  for (int j = 0; j < grid; ++j) {
    g[j] = value_at(2.0 * kPi * j / grid);
    if (g[j] > g[best]) best = j;
  }
  const double h = 2.0 * kPi / grid;
  const double center = 2.0 * kPi * best / grid;
  auto [phi, val] = golden_max(value_at, center - h, center + h, 1e-6);
  (void)phi;
  return std::max(val, g[best]);
}

double trace_radius_inequality_gap(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("trace_radius_inequality_gap: matrix must be square");
  }
  const double n = static_cast<double>(a.rows());
  return n * numerical_radius(a).omega - schatten_norm(a, 1.0);
}

bool spectrum_containment_check(const CMat& t, double tol) {
  for (const Complex& lambda : spectrum(t)) {
    if (!contains_point(t, lambda, tol)) return false;
  }
  return true;
}

namespace {

// W(B) of a 2 x 2 matrix is the filled ellipse with foci at the eigenvalues
// and minor semi-axis m/2 where m^2 = Tr(B*B) - |l1|^2 - |l2|^2
bool ellipse_contains(const CMat& b, Complex z, double tol) {
  const Complex tr = b(0, 0) + b(1, 1);
  const Complex det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  const double m2 = std::max(
      0.0, (b.adjoint() * b).trace().real() - std::norm(l1) - std::norm(l2));
  const double major = std::sqrt(m2 + std::norm(l1 - l2));
  return std::abs(z - l1) + std::abs(z - l2) <= major + tol;
}

// unit y with <B y, y> = z for a 2 x 2 compression, via damped Gauss-Newton
// on (t, chi) -> y = (cos t, sin t e^{i chi})
std::optional<CVec> solve_2d(const CMat& b, Complex z, double accept) {
  auto eval = [&](double t, double chi) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Complex e = std::polar(1.0, chi);
    return c * c * b(0, 0) + s * s * b(1, 1) +
           c * s * (b(0, 1) * e + b(1, 0) * std::conj(e));
  };

  double best_t = 0.0, best_chi = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 16; ++i) {
    for (int j = 0; j < 24; ++j) {
      const double t = 0.5 * kPi * i / 16;
      const double chi = 2.0 * kPi * j / 24;
      const double err = std::abs(eval(t, chi) - z);
      if (err < best_err) {
        best_err = err;
        best_t = t;
        best_chi = chi;
      }
    }
  }

  double t = best_t, chi = best_chi;
  double err = best_err;
  for (int it = 0; it < 80 && err > accept * 0.01; ++it) {
    const double c = std::cos(t), s = std::sin(t);
    const Complex e = std::polar(1.0, chi);
    const Complex cross = b(0, 1) * e + b(1, 0) * std::conj(e);
    const Complex f = c * c * b(0, 0) + s * s * b(1, 1) + c * s * cross - z;
    const Complex df_dt =
        2.0 * c * s * (b(1, 1) - b(0, 0)) + (c * c - s * s) * cross;
    const Complex df_dchi =
        c * s * (Complex(0, 1) * b(0, 1) * e - Complex(0, 1) * b(1, 0) * std::conj(e));
    Eigen::Matrix2d jac;
    jac << df_dt.real(), df_dchi.real(), df_dt.imag(), df_dchi.imag();
    Eigen::Vector2d rhs(-f.real(), -f.imag());
    const Eigen::Vector2d step =
        jac.completeOrthogonalDecomposition().solve(rhs);
    double damp = 1.0;
    bool improved = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      const double t_new = t + damp * step(0);
      const double chi_new = chi + damp * step(1);
      const double err_new = std::abs(eval(t_new, chi_new) - z);
      if (err_new < err) {
        t = t_new;
        chi = chi_new;
        err = err_new;
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved) break;
  }
  if (err > accept) return std::nullopt;
  CVec y(2);
  y(0) = std::cos(t);
  y(1) = std::sin(t) * std::polar(1.0, chi);
  return y;
}

}  // namespace

std::optional<CVec> range_witness(const CMat& t, Complex z, double tol) {
  if (t.rows() != t.cols()) {
    throw std::invalid_argument("range_witness: matrix must be square");
  }
  const Eigen::Index d = t.rows();
  const double scale = std::max(1.0, t.norm());
  const double hit = std::max(1e-11 * scale, 0.01 * tol);

  if (d == 1) {
    if (std::abs(t(0, 0) - z) <= std::max(tol, hit)) {
      CVec e1(1);
      e1(0) = 1.0;
      return e1;
    }
    return std::nullopt;
  }

  // scan support points; refine the nearest one (catches boundary targets)
  const int scan = 256;
  std::vector<CVec> vecs(scan);
  std::vector<Complex> pts(scan);
  int nearest = 0;
  for (int j = 0; j < scan; ++j) {
    TopEig top = top_eigenpair(rotated_hermitian_part(t, 2.0 * kPi * j / scan));
    vecs[j] = top.vector;
    pts[j] = quadratic_form(t, top.vector);
    if (std::abs(pts[j] - z) < std::abs(pts[nearest] - z)) nearest = j;
  }
  {
    const double h = 2.0 * kPi / scan;
    const double center = 2.0 * kPi * nearest / scan;
    auto [theta, negdist] = golden_max(
        [&](double th) {
          TopEig top = top_eigenpair(rotated_hermitian_part(t, th));
          return -std::abs(quadratic_form(t, top.vector) - z);
        },
        center - h, center + h, 1e-10);
    if (-negdist <= hit) {
      return top_eigenpair(rotated_hermitian_part(t, theta)).vector;
    }
  }

  if (!contains_point(t, z, std::max(tol, 1e-9))) return std::nullopt;

  // two-dimensional compressions across pairs of support vectors: W of the
  // compression is a computable ellipse inside W(T) containing both chord
  // endpoints
  const int stride = 4;  // 64 support vectors
  for (int i = 0; i < scan; i += stride) {
    for (int j = i + stride; j < scan; j += stride) {
      const CVec& u1 = vecs[i];
      const Complex overlap = u1.dot(vecs[j]);
      CVec w = vecs[j] - overlap * u1;
      const double wn = w.norm();
      if (wn < 1e-8) continue;
      const CVec u2 = w / wn;
      CMat b(2, 2);
      const CVec tu1 = t * u1;
      const CVec tu2 = t * u2;
      b(0, 0) = u1.dot(tu1);
      b(0, 1) = u1.dot(tu2);
      b(1, 0) = u2.dot(tu1);
      b(1, 1) = u2.dot(tu2);
      if (!ellipse_contains(b, z, 1e-10 * scale)) continue;
      if (auto y = solve_2d(b, z, hit)) {
        CVec x = (*y)(0) * u1 + (*y)(1) * u2;
        x /= x.norm();
        if (std::abs(quadratic_form(t, x) - z) <= std::max(tol, hit)) return x;
      }
    }
  }
  return std::nullopt;
}

}  // namespace mrk::numrange
