/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <memory>
#include <vector>

#include "mrk/matrix.hpp"

namespace mrk::sdp {

// One linear equality <op, Y> = rhs on a Hermitian variable Y, where
// <A, B> = Re Tr(A* B) and op is itself Hermitian.
struct Constraint {
  CMat op;
  double rhs = 0.0;
};

// minimize <objective, Y>  subject to  <A_i, Y> = b_i,  Y >= 0 (PSD),
// Y a d x d complex Hermitian matrix. A zero objective turns solve() into a
// pure feasibility problem. The constraint Gram matrix is pseudo-inverted at
// construction so affine projections are a handful of inner products; the
// factorization is shared between copies, so with_objective() is cheap when
// sweeping many objectives over one spectrahedron.
class SdpProblem {
 public:
  SdpProblem(int dim, CMat objective, std::vector<Constraint> constraints);

  // same constraints and factorization, different linear objective
  SdpProblem with_objective(CMat objective) const;

  int dim() const;
  const CMat& objective() const { return objective_; }
  int num_constraints() const;
  const CMat& constraint_op(int i) const;
  double constraint_rhs(int i) const;

  // <A_i, Y> - b_i for all i
  Eigen::VectorXd residuals(const CMat& y) const;
  double residual_norm(const CMat& y) const;

  // orthogonal projection onto the affine subspace; throws if the
  // constraints are inconsistent
  CMat project_affine(const CMat& y) const;

  bool affine_consistent() const;
  double affine_residual() const;

 private:
  struct Core;
  std::shared_ptr<const Core> core_;
  CMat objective_;
};

enum class SolveStatus { Optimal, MaxIterations, Infeasible, Unbounded, NumericalError };

struct SdpSolution {
  CMat y;                        // Hermitian PSD (clipped at the end)
  double value = 0.0;            // <objective, y>
  double primal_residual = 0.0;  // ||residuals(y)||_2 recomputed on y
  double eig_floor = 0.0;        // most negative eigenvalue before final clipping
  SolveStatus status = SolveStatus::NumericalError;
  int iterations = 0;
  double gap = 0.0;              // converged splitting displacement (feasibility)
};

// Warm-start state carried across a sweep of related problems.
struct SolverState {
  CMat z, u;
  double rho = 1.0;
  bool valid = false;
};

// nearest (Frobenius) PSD matrix: eigenvalue clipping at zero
CMat project_psd(const CMat& h);

// Douglas-Rachford / ADMM splitting between the affine subspace and the PSD
// cone, with over-relaxation and residual-balanced penalty updates. With a
// zero objective this is the feasibility splitting; a persistent nonzero
// displacement between the two projections is reported as Infeasible with
// the converged gap.
SdpSolution solve(const SdpProblem& p, double tol = 1e-7, int max_iter = 200000,
                  SolverState* state = nullptr);

struct KktReport {
  double feasibility_residual = 0.0;
  double psd_violation = 0.0;
  double objective_value = 0.0;
  bool consistent = false;  // fields of the solution match the recomputation
};

// recompute residuals from scratch and compare with the stored solution
KktReport check_kkt(const SdpProblem& p, const SdpSolution& s, double tol);

}  // namespace mrk::sdp
