/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/sdp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrk::sdp {

namespace {

constexpr double kGramCutoffRel = 1e-12;

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

struct SdpProblem::Core {
  int dim = 0;
  std::vector<CMat> ops;
  Eigen::VectorXd rhs;
  Eigen::MatrixXd gram_pinv;
  bool consistent = true;
  double ls_residual = 0.0;
};

SdpProblem::SdpProblem(int dim, CMat objective, std::vector<Constraint> constraints) {
  if (dim <= 0) throw std::invalid_argument("SdpProblem: dim must be positive");
  auto core = std::make_shared<Core>();
  core->dim = dim;

  const int m = static_cast<int>(constraints.size());
  core->ops.reserve(m);
  core->rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    CMat& a = constraints[i].op;
    if (a.rows() != dim || a.cols() != dim) {
      throw std::invalid_argument("SdpProblem: constraint dimension mismatch");
    }
    if (hermiticity_error(a) > 1e-12 * std::max(1.0, a.norm())) {
      throw std::invalid_argument("SdpProblem: constraint op must be Hermitian");
    }
    core->ops.push_back(hermitize(a));
    core->rhs(i) = constraints[i].rhs;
  }

  if (m > 0) {
    Eigen::MatrixXd gram(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        const double g = hs_inner(core->ops[i], core->ops[j]);
        gram(i, j) = g;
        gram(j, i) = g;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cutoff = kGramCutoffRel * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv(m);
    for (int i = 0; i < m; ++i) inv(i) = (ev(i) > cutoff) ? 1.0 / ev(i) : 0.0;
    core->gram_pinv =
        es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();

    // consistency of the linear system alone: residual of the least-squares
    // coefficient solve G c = b
    const Eigen::VectorXd c = core->gram_pinv * core->rhs;
    core->ls_residual = (gram * c - core->rhs).lpNorm<Eigen::Infinity>();
    core->consistent = core->ls_residual <=
                       1e-8 * std::max(1.0, core->rhs.lpNorm<Eigen::Infinity>());
  }

  core_ = std::move(core);

  if (objective.size() == 0) objective = CMat::Zero(dim, dim);
  if (objective.rows() != dim || objective.cols() != dim) {
    throw std::invalid_argument("SdpProblem: objective dimension mismatch");
  }
  if (hermiticity_error(objective) > 1e-12 * std::max(1.0, objective.norm())) {
    throw std::invalid_argument("SdpProblem: objective must be Hermitian");
  }
  objective_ = hermitize(objective);
}

SdpProblem SdpProblem::with_objective(CMat objective) const {
  SdpProblem out(*this);
  if (objective.size() == 0) objective = CMat::Zero(dim(), dim());
  if (objective.rows() != dim() || objective.cols() != dim()) {
    throw std::invalid_argument("with_objective: dimension mismatch");
  }
  if (hermiticity_error(objective) > 1e-12 * std::max(1.0, objective.norm())) {
    throw std::invalid_argument("with_objective: objective must be Hermitian");
  }
  out.objective_ = hermitize(objective);
  return out;
}

int SdpProblem::dim() const { return core_->dim; }
int SdpProblem::num_constraints() const { return static_cast<int>(core_->ops.size()); }
const CMat& SdpProblem::constraint_op(int i) const { return core_->ops[i]; }
double SdpProblem::constraint_rhs(int i) const { return core_->rhs(i); }
bool SdpProblem::affine_consistent() const { return core_->consistent; }
double SdpProblem::affine_residual() const { return core_->ls_residual; }

Eigen::VectorXd SdpProblem::residuals(const CMat& y) const {
  const int m = num_constraints();
  Eigen::VectorXd r(m);
  for (int i = 0; i < m; ++i) r(i) = hs_inner(core_->ops[i], y) - core_->rhs(i);
  return r;
}

double SdpProblem::residual_norm(const CMat& y) const {
  if (num_constraints() == 0) return 0.0;
  return residuals(y).norm();
}

CMat SdpProblem::project_affine(const CMat& y) const {
  if (!core_->consistent) {
    throw std::runtime_error("project_affine: inconsistent constraints (infeasible)");
  }
  if (num_constraints() == 0) return hermitize(y);
  const Eigen::VectorXd c = core_->gram_pinv * residuals(y);
  CMat out = y;
  for (int i = 0; i < num_constraints(); ++i) out -= c(i) * core_->ops[i];
  return hermitize(out);
}

CMat project_psd(const CMat& h) {
  if (hermiticity_error(h) > 1e-10 * std::max(1.0, h.norm())) {
    throw std::invalid_argument("project_psd: input must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(h));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("project_psd: eigensolver failed");
  }
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

SdpSolution solve(const SdpProblem& p, double tol, int max_iter, SolverState* state) {
  const int d = p.dim();
  SdpSolution sol;

  if (!p.affine_consistent()) {
    sol.status = SolveStatus::Infeasible;
    sol.primal_residual = p.affine_residual();
    sol.y = CMat::Zero(d, d);
    return sol;
  }

  // scale the objective so the penalty parameter is dimensionless
  const bool pure_feasibility = p.objective().norm() == 0.0;
  const double obj_scale = std::max(p.objective().norm(), 1e-30);
  const CMat c_scaled =
      pure_feasibility ? CMat::Zero(d, d) : CMat(p.objective() / obj_scale);

  CMat z = CMat::Zero(d, d);
  CMat u = CMat::Zero(d, d);
  double rho = 1.0;
  if (state != nullptr && state->valid && state->z.rows() == d) {
    z = state->z;
    u = state->u;
    rho = state->rho;
  }

  const double alpha = 1.6;  // over-relaxation
  const double b_scale = [&] {
    double s = 1.0;
    for (int i = 0; i < p.num_constraints(); ++i) {
      s = std::max(s, std::abs(p.constraint_rhs(i)));
    }
    return s;
  }();

  CMat y = CMat::Zero(d, d);
  double disp = 0.0;
  double window_best = std::numeric_limits<double>::infinity();
  int window_start = 0;
  const int window = 400;
  CMat u_anchor = u;
  double rho_at_anchor = rho;
  int infeasible_streak = 0;
  int growth_streak = 0;
  double z_norm_at_window = 0.0;
  int it = 0;
  SolveStatus status = SolveStatus::MaxIterations;

  for (it = 1; it <= max_iter; ++it) {
    y = p.project_affine(z - u - c_scaled / rho);
    const CMat y_relaxed = alpha * y + (1.0 - alpha) * z;
    const CMat z_old = z;
    z = project_psd(y_relaxed + u);
    u += y_relaxed - z;

    disp = (y - z).norm();
    const double dual_res = rho * (z - z_old).norm();

    if (!std::isfinite(disp) || !std::isfinite(dual_res)) {
      status = SolveStatus::NumericalError;
      break;
    }
    if (z.norm() > 1e9 * b_scale * d) {
      status = SolveStatus::Unbounded;
      break;
    }

    const double scale = std::max({1.0, y.norm(), z.norm()});
    if (disp <= 0.5 * tol * scale && dual_res <= 0.5 * tol * scale &&
        p.residual_norm(z) <= 0.8 * tol * b_scale) {
      status = SolveStatus::Optimal;
      break;
    }

    // Infeasibility signature: the displacement settles at a nonzero gap
    // while the dual variable drifts linearly at rate ~ alpha*gap per
    // iteration. A slow feasible solve has a Cauchy dual instead. Two
    // consecutive confirming windows are required past a warm-up phase.
    if (it - window_start >= window) {
      const double drift_rate =
          rho == rho_at_anchor ? (u - u_anchor).norm() / window : 0.0;
      if (it > 3 * window && disp > 0.995 * window_best &&
          disp > 10.0 * tol * scale && drift_rate > 0.5 * disp &&
          dual_res <= 1e-3 * scale) {
        if (infeasible_streak >= 1) {
          status = SolveStatus::Infeasible;
          break;
        }
        ++infeasible_streak;
      } else {
        infeasible_streak = 0;
      }

      // an objective that keeps pushing the iterate out at a steady rate
      const double z_norm = z.norm();
      if (z_norm > 50.0 * b_scale * std::sqrt(double(d)) &&
          z_norm >= 1.25 * z_norm_at_window) {
        if (++growth_streak >= 4) {
          status = SolveStatus::Unbounded;
          break;
        }
      } else {
        growth_streak = 0;
      }
      z_norm_at_window = z_norm;

      window_best = disp;
      window_start = it;
      u_anchor = u;
      rho_at_anchor = rho;
    }
    window_best = std::min(window_best, disp);

    // residual balancing
    if (it % 64 == 0 && dual_res > 0.0 && disp > 0.0) {
      if (disp > 10.0 * dual_res && rho < 1e6) {
        rho *= 2.0;
        u *= 0.5;
      } else if (dual_res > 10.0 * disp && rho > 1e-6) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }
  if (it > max_iter) it = max_iter;

  if (state != nullptr) {
    state->z = z;
    state->u = u;
    state->rho = rho;
    state->valid = true;
  }

  // report the PSD-side iterate; eig_floor is taken from the affine side,
  // which is what final clipping would remove
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(y), Eigen::EigenvaluesOnly);
  sol.eig_floor = (es.info() == Eigen::Success && d > 0) ? es.eigenvalues().minCoeff() : 0.0;
  sol.y = z;
  sol.value = hs_inner(p.objective(), sol.y);
  sol.primal_residual = p.residual_norm(sol.y);
  sol.iterations = it;
  sol.gap = disp;
  sol.status = status;
  if (status == SolveStatus::Optimal && sol.primal_residual > tol * b_scale) {
    sol.status = SolveStatus::MaxIterations;
  }
  return sol;
}

KktReport check_kkt(const SdpProblem& p, const SdpSolution& s, double tol) {
  KktReport rep;
  rep.feasibility_residual = p.residual_norm(s.y);
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(s.y), Eigen::EigenvaluesOnly);
  const double min_eig = (s.y.rows() > 0 && es.info() == Eigen::Success)
                             ? es.eigenvalues().minCoeff()
                             : 0.0;
  rep.psd_violation = std::max(0.0, -min_eig);
  rep.objective_value = hs_inner(p.objective(), s.y);
  rep.consistent =
      std::abs(rep.feasibility_residual - s.primal_residual) <= tol &&
      std::abs(rep.objective_value - s.value) <= tol * std::max(1.0, std::abs(s.value));
  return rep;
}

}  // namespace mrk::sdp
