/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/matrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "mrk/numrange.hpp"
#include "mrk/sdp.hpp"

namespace mrk::matrange {

namespace {

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

// Hermitian operator whose pairing with J gives Re Tr(V Phi(T)), via
// Tr(V Phi(T)) = Tr(J (T^T (x) V))
CMat trace_functional_op(const CMat& t, const CMat& v) {
  return hermitize(kron(t.transpose(), v));
}

// the 2 n^2 real equalities encoding Phi(T) = X entrywise
std::vector<sdp::Constraint> target_constraints(const CMat& t, const CMat& x) {
  const int n = static_cast<int>(x.rows());
  std::vector<sdp::Constraint> constr;
  constr.reserve(2 * static_cast<std::size_t>(n) * n);
  const CMat tt = t.transpose();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      // Phi(T)_{ab} = Tr(J (T^T (x) E_ba))
      const CMat m = kron(tt, basis_matrix(n, b, a));
      constr.push_back({hermitize(m), x(a, b).real()});
      constr.push_back({CMat((m - m.adjoint()) / Complex(0.0, 2.0)), x(a, b).imag()});
    }
  }
  return constr;
}

void require_square(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

}  // namespace

MembershipVerdict membership(const CMat& t, const CMat& x, double tol,
                             const ucp::ChoiMap* hint, int max_iter) {
  require_square(t, "membership");
  require_square(x, "membership");
  const int k = static_cast<int>(t.rows());
  const int n = static_cast<int>(x.rows());

  MembershipVerdict verdict;
  verdict.tol = tol;

  std::vector<sdp::Constraint> constr = ucp::unitality_constraints(k, n);
  {
    std::vector<sdp::Constraint> tgt = target_constraints(t, x);
    constr.insert(constr.end(), std::make_move_iterator(tgt.begin()),
                  std::make_move_iterator(tgt.end()));
  }
  sdp::SdpProblem prob(k * n, CMat(), std::move(constr));

  // starting point: a supplied hint, a state-map witness for scalar-like
  // targets, or the maximally mixed Choi matrix
  CMat start = CMat::Identity(k * n, k * n) / static_cast<double>(k);
  if (hint != nullptr && hint->k == k && hint->n == n) {
    start = hermitize(hint->j);
  } else {
    const Complex c = x.trace() / static_cast<double>(n);
    if ((x - c * CMat::Identity(n, n)).norm() <= 0.5 * tol) {
      if (auto w = numrange::range_witness(t, c, 0.25 * tol)) {
        start = ucp::state_map(*w, n).j;
      }
    }
  }

  if (!prob.affine_consistent()) {
    // not even a Hermitian (let alone PSD) J satisfies the equalities
    const ucp::ChoiMap cand = ucp::nearest_ucp(k, n, start);
    verdict.distance = (cand.apply(t) - x).norm();
    verdict.gap = prob.affine_residual();
    verdict.status =
        verdict.distance > 10.0 * tol ? Membership::NonMember : Membership::Undecided;
    return verdict;
  }

  sdp::SolverState state;
  state.z = start;
  state.u = CMat::Zero(k * n, k * n);
  state.valid = true;
  const sdp::SdpSolution sol = sdp::solve(prob, 0.25 * tol, max_iter, &state);

  const ucp::ChoiMap cand = ucp::nearest_ucp(k, n, sol.y);
  const double dist = (cand.apply(t) - x).norm();
  verdict.distance = dist;
  verdict.gap = sol.gap;
  verdict.iterations = sol.iterations;

  if (dist <= tol && ucp::validate(cand, 1e-8).pass) {
    verdict.status = Membership::Member;
    verdict.witness = cand;
  } else if (sol.status == sdp::SolveStatus::Infeasible && dist > 10.0 * tol) {
    verdict.status = Membership::NonMember;
  } else {
    verdict.status = Membership::Undecided;
  }
  return verdict;
}

namespace {

// a solve is usable when it converged, or ran out of budget with a feasible
// iterate (ADMM tails can stall on degenerate faces long after the candidate
// stopped moving; the caller re-evaluates on a corrected witness anyway)
bool solve_usable(const sdp::SdpSolution& sol) {
  return sol.status == sdp::SolveStatus::Optimal ||
         (sol.status == sdp::SolveStatus::MaxIterations &&
          sol.primal_residual <= 1e-6);
}

}  // namespace

SupremumResult nu_n(const CMat& t, int n, double tol) {
  require_square(t, "nu_n");
  if (n <= 0) throw std::invalid_argument("nu_n: n must be positive");
  const int k = static_cast<int>(t.rows());

  const numrange::RangeEstimate est = numrange::numerical_radius(t);
  const Complex attained =
      (est.witness.adjoint() * (t * est.witness))(0, 0);

  SupremumResult res;
  res.method = SupMethod::SweepSdp;
  res.upper_bound = n * est.omega;
  res.lower_bound = n * std::abs(attained);

  const sdp::SdpProblem base(k * n, CMat(), ucp::unitality_constraints(k, n));
  const CMat eye_n = CMat::Identity(n, n);
  sdp::SolverState warm;
  bool all_ok = true;

  auto solve_at = [&](double phi, double solver_tol) {
    const CMat v = std::polar(1.0, phi) * eye_n;
    const sdp::SdpProblem prob = base.with_objective(-trace_functional_op(t, v));
    const sdp::SdpSolution sol = sdp::solve(prob, solver_tol, 40000, &warm);
    if (!solve_usable(sol)) all_ok = false;
    return -sol.value;
  };

  if (t.norm() == 0.0) {
    res.witness = ucp::state_map(est.witness, n);
    res.value = 0.0;
    res.converged = true;
    return res;
  }

  // coarse grid plus the phase of the state-map witness, then golden-section
  // refinement of the best bracket
  const int grid = 64;
  double best_phi = 0.0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const double phi = 2.0 * kPi * j / grid;
    const double g = solve_at(phi, 1e-5);
    if (g > best_val) {
      best_val = g;
      best_phi = phi;
    }
  }
  if (std::abs(attained) > 1e-12) {
    const double phi0 = -std::arg(attained);
    const double g = solve_at(phi0, 1e-5);
    if (g > best_val) {
      best_val = g;
      best_phi = phi0;
    }
  }

  // bracket width w contributes ~ n ||T|| w^2 to the value error
  const double width = std::clamp(0.1 * std::sqrt(tol), 1e-6, 1e-3);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = best_phi - 2.0 * kPi / grid;
  double b = best_phi + 2.0 * kPi / grid;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = solve_at(x1, 1e-7), f2 = solve_at(x2, 1e-7);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = solve_at(x2, 1e-7);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = solve_at(x1, 1e-7);
    }
  }
  const double phi_star = (f1 >= f2) ? x1 : x2;

  // final tight solve; the reported value is evaluated on the corrected
  // exactly-UCP witness, so it is always attained by a certified member
  solve_at(phi_star, 1e-7);
  ucp::ChoiMap witness = ucp::nearest_ucp(k, n, warm.z);
  double value =
      (std::polar(1.0, phi_star) * witness.apply(t).trace()).real();

  // fall back to the explicit state-map witness if the sweep underdelivered
  const ucp::ChoiMap state_witness = ucp::state_map(est.witness, n);
  const double state_value = n * std::abs(attained);
  if (state_value > value) {
    value = state_value;
    witness = state_witness;
  }

  res.value = value;
  res.witness = witness;
  res.converged = all_ok;
  return res;
}

namespace {

struct AscentRules {
  // linear functional factor V from the current Phi(T)
  std::function<CMat(const CMat&)> update_v;
  // true objective evaluated on Phi(T)
  std::function<double(const CMat&)> objective;
};

// deterministic Stinespring compression aligning the top singular pair of T
// with an n >= 2 output corner; reaches ||Phi(T)|| = ||T|| exactly
ucp::ChoiMap opnorm_compression(const CMat& t, int n) {
  const int k = static_cast<int>(t.rows());
  const int r = (n + k - 1) / k + 1;  // headroom so k*r >= max(n, 2)
  const int dil = k * r;
  Eigen::JacobiSVD<CMat> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // embed the top singular pair in multiplicity slot 0 of C^k (x) C^r,
  // whose index layout is (i, s) -> i*r + s
  CVec vtop = CVec::Zero(dil);
  CVec utop = CVec::Zero(dil);
  for (int i = 0; i < k; ++i) {
    vtop(static_cast<Eigen::Index>(i) * r) = svd.matrixV()(i, 0);
    utop(static_cast<Eigen::Index>(i) * r) = svd.matrixU()(i, 0);
  }

  CMat v = CMat::Zero(dil, n);
  v.col(0) = vtop;
  const Complex c = vtop.dot(utop);
  CVec g = utop - c * vtop;
  const double gn = g.norm();
  if (n >= 2 && gn > 1e-12) v.col(1) = g / gn;

  // complete remaining columns by Gram-Schmidt over the standard basis
  int col = (n >= 2 && gn > 1e-12) ? 2 : 1;
  for (int e = 0; e < dil && col < n; ++e) {
    CVec cand = CVec::Zero(dil);
    cand(e) = 1.0;
    for (int jc = 0; jc < col; ++jc) cand -= v.col(jc).dot(cand) * v.col(jc);
    const double cn = cand.norm();
    if (cn > 1e-6) {
      v.col(col) = cand / cn;
      ++col;
    }
  }
  if (col < n) throw std::runtime_error("opnorm_compression: completion failed");

  std::vector<CMat> kraus(r, CMat(n, k));
  for (int s = 0; s < r; ++s) {
    for (int i = 0; i < k; ++i) {
      for (int a = 0; a < n; ++a) {
        kraus[s](a, i) = std::conj(v(static_cast<Eigen::Index>(i) * r + s, a));
      }
    }
  }
  return ucp::from_kraus(kraus);
}

SupremumResult ascend(const CMat& t, int n, double tol, int restarts,
                      std::uint64_t seed, const AscentRules& rules,
                      double upper, double lower,
                      std::vector<ucp::ChoiMap> starts) {
  const int k = static_cast<int>(t.rows());
  SupremumResult res;
  res.method = SupMethod::AlternatingAscent;
  res.upper_bound = upper;
  res.lower_bound = lower;

  const sdp::SdpProblem base(k * n, CMat(), ucp::unitality_constraints(k, n));
  Rng rng(seed);
  while (static_cast<int>(starts.size()) < restarts) {
    starts.push_back(ucp::random_ucp(k, n, k, rng));
  }
  if (static_cast<int>(starts.size()) > restarts) starts.resize(restarts);

  double best_val = -std::numeric_limits<double>::infinity();
  ucp::ChoiMap best_witness;
  bool all_ok = true;
  bool any_stagnated = false;

  for (const ucp::ChoiMap& start : starts) {
    ucp::ChoiMap cur = start;
    double val = rules.objective(cur.apply(t));
    sdp::SolverState warm;
    warm.z = cur.j;
    warm.u = CMat::Zero(k * n, k * n);
    warm.valid = true;

    bool stagnated = false;
    for (int it = 0; it < 200; ++it) {
      const CMat v = rules.update_v(cur.apply(t));
      const sdp::SdpProblem prob = base.with_objective(-trace_functional_op(t, v));
      const sdp::SdpSolution sol = sdp::solve(prob, 1e-7, 20000, &warm);
      if (!solve_usable(sol)) all_ok = false;
      const ucp::ChoiMap cand = ucp::nearest_ucp(k, n, sol.y);
      const double cand_val = rules.objective(cand.apply(t));
      if (cand_val > val) {
        cur = cand;
      }
      if (cand_val <= val + 1e-9 * std::max(1.0, std::abs(val))) {
        val = std::max(val, cand_val);
        stagnated = true;
        break;
      }
      val = cand_val;
    }
    any_stagnated = any_stagnated || stagnated;

    if (val > best_val) {
      best_val = val;
      best_witness = cur;
    }
  }

  res.value = best_val;
  res.witness = best_witness;
  res.converged = all_ok && any_stagnated;
  (void)tol;
  return res;
}

}  // namespace

SupremumResult omega_n(const CMat& t, int n, double tol, int restarts,
                       std::uint64_t seed) {
  require_square(t, "omega_n");
  if (n <= 0) throw std::invalid_argument("omega_n: n must be positive");
  const numrange::RangeEstimate est = numrange::numerical_radius(t);
  const Complex attained = (est.witness.adjoint() * (t * est.witness))(0, 0);

  AscentRules rules;
  rules.objective = [](const CMat& m) { return schatten_norm(m, 1.0); };
  rules.update_v = [](const CMat& m) -> CMat {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixV() * svd.matrixU().adjoint();
  };

  std::vector<ucp::ChoiMap> starts;
  starts.push_back(ucp::state_map(est.witness, n));
  if (t.rows() == n) starts.push_back(ucp::identity_map(n));

  SupremumResult res = ascend(t, n, tol, restarts, seed, rules,
                              n * est.omega, n * std::abs(attained), std::move(starts));
  return res;
}

SupremumResult sup_opnorm(const CMat& t, int n, double tol, int restarts,
                          std::uint64_t seed) {
  require_square(t, "sup_opnorm");
  if (n <= 0) throw std::invalid_argument("sup_opnorm: n must be positive");
  const numrange::RangeEstimate est = numrange::numerical_radius(t);

  AscentRules rules;
  rules.objective = [](const CMat& m) {
    return schatten_norm(m, std::numeric_limits<double>::infinity());
  };
  rules.update_v = [](const CMat& m) -> CMat {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixV().col(0) * svd.matrixU().col(0).adjoint();
  };

  std::vector<ucp::ChoiMap> starts;
  if (t.norm() > 0.0 && n >= 2) starts.push_back(opnorm_compression(t, n));
  if (t.rows() == n) starts.push_back(ucp::identity_map(n));
  starts.push_back(ucp::state_map(est.witness, n));

  const double upper = schatten_norm(t, std::numeric_limits<double>::infinity());
  return ascend(t, n, tol, restarts, seed, rules, upper, est.omega,
                std::move(starts));
}

SupremumResult sup_inner_radius(const CMat& t, int n, double tol, int restarts,
                                std::uint64_t seed) {
  require_square(t, "sup_inner_radius");
  if (n <= 0) throw std::invalid_argument("sup_inner_radius: n must be positive");
  const numrange::RangeEstimate est = numrange::numerical_radius(t);
  const Complex attained = (est.witness.adjoint() * (t * est.witness))(0, 0);

  AscentRules rules;
  rules.objective = [](const CMat& m) {
    return numrange::numerical_radius(m).omega;
  };
  rules.update_v = [](const CMat& m) -> CMat {
    const numrange::RangeEstimate e = numrange::numerical_radius(m, 1e-10, 256);
    return std::polar(1.0, e.theta_star) * e.witness * e.witness.adjoint();
  };

  std::vector<ucp::ChoiMap> starts;
  starts.push_back(ucp::state_map(est.witness, n));
  if (t.rows() == n) starts.push_back(ucp::identity_map(n));

  return ascend(t, n, tol, restarts, seed, rules, est.omega, std::abs(attained),
                std::move(starts));
}

double sup_schatten_known(const KnownRange& range, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("sup_schatten_known: p must be >= 1");
  const double n = static_cast<double>(range.n);
  if (range.kind == KnownRange::Kind::UnilateralShift) {
    if (std::isinf(p)) return 1.0;
    return std::pow(n, 1.0 / p);
  }
  if (range.r <= 0.0) {
    throw std::invalid_argument("sup_schatten_known: Jordan parameter must be > 0");
  }
  if (range.n == 1) return 0.5 * range.r;
  if (p == 1.0) return 0.5 * range.r * n;
  if (std::isinf(p)) return range.r;
  throw std::invalid_argument(
      "sup_schatten_known: no closed form for the Jordan range with p not in {1, inf}");
}

bool known_membership(const KnownRange& range, const CMat& x, double tol) {
  require_square(x, "known_membership");
  if (x.rows() != range.n) {
    throw std::invalid_argument("known_membership: dimension mismatch");
  }
  if (range.kind == KnownRange::Kind::JordanNilpotent2) {
    return numrange::numerical_radius(x).omega <= 0.5 * range.r + tol;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(CMat(x.adjoint() * x), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

CMat cstar_combination(const std::vector<CMat>& xs, const std::vector<CMat>& as,
                       double tol) {
  if (xs.empty() || xs.size() != as.size()) {
    throw std::invalid_argument("cstar_combination: need equally many X_j and A_j");
  }
  const Eigen::Index n = xs.front().rows();
  CMat norm_check = CMat::Zero(n, n);
  for (std::size_t j = 0; j < as.size(); ++j) {
    if (xs[j].rows() != n || xs[j].cols() != n || as[j].rows() != n ||
        as[j].cols() != n) {
      throw std::invalid_argument("cstar_combination: dimension mismatch");
    }
    norm_check += as[j].adjoint() * as[j];
  }
  if ((norm_check - CMat::Identity(n, n)).norm() > tol) {
    throw std::invalid_argument("cstar_combination: sum A_j* A_j != I within tol");
  }
  CMat out = CMat::Zero(n, n);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    out += as[j].adjoint() * xs[j] * as[j];
  }
  return out;
}

LemmaCheck lemma_inclusion_check(const CMat& s, const CMat& t, int n, double tol,
                                 int samples, std::uint64_t seed) {
  require_square(s, "lemma_inclusion_check");
  require_square(t, "lemma_inclusion_check");
  if ((s * s.adjoint() - s.adjoint() * s).norm() > tol) {
    throw std::invalid_argument("lemma_inclusion_check: S must be normal within tol");
  }
  const int ks = static_cast<int>(s.rows());

  LemmaCheck check;
  const std::vector<Complex> eigs = spectrum(s);
  check.spectral_side = true;
  Complex offending = 0.0;
  for (const Complex& lambda : eigs) {
    if (!numrange::contains_point(t, lambda, tol)) {
      check.spectral_side = false;
      offending = lambda;
    }
  }

  const double mem_tol = 1e-6;
  check.sampled_inclusion = true;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ucp::ChoiMap phi = ucp::random_ucp(ks, n, ks, rng);
    const MembershipVerdict v = membership(t, phi.apply(s), mem_tol);
    if (v.status != Membership::Member) check.sampled_inclusion = false;
  }
  if (!check.spectral_side) {
    // the scalar image of an offending eigenvalue must be rejected
    const CMat x = offending * CMat::Identity(n, n);
    const MembershipVerdict v = membership(t, x, mem_tol);
    if (v.status != Membership::Member) check.sampled_inclusion = false;
  }
  return check;
}

bool composition_inclusion_check(const CMat& t, int n, int m, int trials,
                                 double tol, std::uint64_t seed) {
  require_square(t, "composition_inclusion_check");
  const int k = static_cast<int>(t.rows());
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const ucp::ChoiMap phi = ucp::random_ucp(k, n, k, rng);
    const ucp::ChoiMap psi = ucp::random_ucp(n, m, n, rng);
    const ucp::ChoiMap combined = ucp::compose(psi, phi);
    const CMat x = combined.apply(t);
    const MembershipVerdict v = membership(t, x, tol, &combined);
    if (v.status != Membership::Member) return false;
  }
  return true;
}

nlohmann::json to_json(const MembershipVerdict& v) {
  nlohmann::json j;
  switch (v.status) {
    case Membership::Member:
      j["status"] = "member";
      break;
    case Membership::NonMember:
      j["status"] = "non_member";
      break;
    case Membership::Undecided:
      j["status"] = "undecided";
      break;
  }
  j["distance"] = v.distance;
  j["tol"] = v.tol;
  j["gap"] = v.gap;
  j["iterations"] = v.iterations;
  if (v.witness.has_value()) j["witness"] = ucp::to_json(*v.witness);
  return j;
}

nlohmann::json to_json(const SupremumResult& r) {
  nlohmann::json j;
  j["value"] = r.value;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["method"] =
      r.method == SupMethod::SweepSdp ? "sweep_sdp" : "alternating_ascent";
  j["converged"] = r.converged;
  j["witness"] = ucp::to_json(r.witness);
  return j;
}

}  // namespace mrk::matrange
