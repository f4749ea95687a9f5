/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "verify_suites.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "mrk/matrange.hpp"
#include "mrk/matrix_io.hpp"
#include "mrk/numrange.hpp"
#include "mrk/ucp.hpp"

namespace mrk::verify {

namespace {

double inf() { return std::numeric_limits<double>::infinity(); }

// residual-style property: worst over trials must stay below the threshold
PropertyResult battery(const std::string& name, double threshold, int trials,
                       Rng& rng,
                       const std::function<double(Rng&, nlohmann::json&)>& one) {
  PropertyResult res;
  res.name = name;
  res.threshold = threshold;
  for (int i = 0; i < trials; ++i) {
    nlohmann::json instance;
    const double r = one(rng, instance);
    if (r > res.worst) res.worst = r;
    if (r > threshold && res.failure.is_null()) res.failure = instance;
  }
  res.pass = res.worst <= threshold;
  return res;
}

CMat sample_t(Rng& rng, int k) { return ginibre(k, k, rng) / std::sqrt(double(k)); }

std::vector<PropertyResult> suite_theorem_a(const Options& opt) {
  Rng rng(opt.seed);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "translation_scaling_boundary", 1e-8, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const Complex alpha(r.normal(), r.normal());
        const Complex beta(r.normal(), r.normal());
        const CMat moved = alpha * CMat::Identity(opt.k, opt.k) + beta * t;
        double worst = 0.0;
        for (int j = 0; j < 8; ++j) {
          const double theta = 2.0 * kPi * j / 8;
          const Complex lhs = numrange::support_point(moved, theta);
          const Complex rhs =
              alpha + beta * numrange::support_point(t, theta + std::arg(beta));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
        inst = {{"T", matrix_to_json(t)},
                {"alpha", {alpha.real(), alpha.imag()}},
                {"beta", {beta.real(), beta.imag()}}};
        return worst;
      }));
  out.push_back(battery(
      "unitary_invariance_range", 1e-8, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const CMat u = haar_isometry(opt.k, opt.k, r);
        inst = {{"T", matrix_to_json(t)}, {"U", matrix_to_json(u)}};
        return std::abs(numrange::numerical_radius(CMat(u.adjoint() * t * u)).omega -
                        numrange::numerical_radius(t).omega);
      }));
  out.push_back(battery(
      "spectrum_containment", 0.0, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}};
        return numrange::spectrum_containment_check(t, 1e-7) ? 0.0 : 1.0;
      }));
  return out;
}

std::vector<PropertyResult> suite_theorem_b(const Options& opt) {
  Rng rng(opt.seed + 1);
  std::vector<PropertyResult> out;
  out.push_back(battery("adjoint_radius", 1e-8, opt.trials, rng,
                        [&](Rng& r, nlohmann::json& inst) {
                          const CMat t = sample_t(r, opt.k);
                          inst = {{"T", matrix_to_json(t)}};
                          return std::abs(numrange::numerical_radius(adjoint(t)).omega -
                                          numrange::numerical_radius(t).omega);
                        }));
  out.push_back(battery("unitary_invariance_radius", 1e-8, opt.trials, rng,
                        [&](Rng& r, nlohmann::json& inst) {
                          const CMat t = sample_t(r, opt.k);
                          const CMat u = haar_isometry(opt.k, opt.k, r);
                          inst = {{"T", matrix_to_json(t)}};
                          return std::abs(
                              numrange::numerical_radius(CMat(u.adjoint() * t * u)).omega -
                              numrange::numerical_radius(t).omega);
                        }));
  out.push_back(battery(
      "norm_sandwich", 1e-8, opt.trials, rng, [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const double om = numrange::numerical_radius(t).omega;
        const double opn = schatten_norm(t, inf());
        inst = {{"T", matrix_to_json(t)}};
        return std::max(0.5 * opn - om, om - opn);
      }));
  out.push_back(battery(
      "direct_sum_max", 1e-8, opt.trials, rng, [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const CMat s = sample_t(r, 2);
        inst = {{"T", matrix_to_json(t)}, {"S", matrix_to_json(s)}};
        return std::abs(numrange::numerical_radius(direct_sum(t, s)).omega -
                        std::max(numrange::numerical_radius(t).omega,
                                 numrange::numerical_radius(s).omega));
      }));
  return out;
}

std::vector<PropertyResult> suite_theorem_c(const Options& opt) {
  Rng rng(opt.seed + 2);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "scalar_operator_range", 0.0, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const Complex alpha = 2.0 * r.unit_disk();
        const CMat t = alpha * CMat::Identity(opt.k, opt.k);
        inst = {{"alpha", {alpha.real(), alpha.imag()}}};
        const bool in = matrange::membership(
                            t, CMat(alpha * CMat::Identity(opt.n, opt.n)))
                            .status == matrange::Membership::Member;
        const bool side = matrange::membership(
                              t, CMat((alpha + 0.3) * CMat::Identity(opt.n, opt.n)))
                              .status == matrange::Membership::NonMember;
        return in && side ? 0.0 : 1.0;
      }));
  out.push_back(battery(
      "adjoint_witness_covariance", 1e-5, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const CMat x = ucp::random_ucp(opt.k, opt.n, opt.k, r).apply(t);
        inst = {{"T", matrix_to_json(t)}, {"X", matrix_to_json(x)}};
        const auto v = matrange::membership(t, x, 1e-6);
        if (v.status != matrange::Membership::Member) return 1.0;
        return (v.witness->apply(adjoint(t)) - adjoint(x)).norm();
      }));
  out.push_back(battery(
      "affine_witness_covariance", 1e-5, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const CMat x = ucp::random_ucp(opt.k, opt.n, opt.k, r).apply(t);
        const Complex alpha(r.normal(), r.normal());
        const Complex beta(r.normal(), r.normal());
        inst = {{"T", matrix_to_json(t)}, {"X", matrix_to_json(x)}};
        const auto v = matrange::membership(t, x, 1e-6);
        if (v.status != matrange::Membership::Member) return 1.0;
        const CMat t2 = alpha * t + beta * CMat::Identity(opt.k, opt.k);
        const CMat x2 = alpha * x + beta * CMat::Identity(opt.n, opt.n);
        return (v.witness->apply(t2) - x2).norm();
      }));
  return out;
}

std::vector<PropertyResult> suite_nu(const Options& opt) {
  Rng rng(opt.seed + 3);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "nu_equals_n_omega", 1e-4, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}, {"n", opt.n}};
        return std::abs(matrange::nu_n(t, opt.n).value -
                        opt.n * numrange::numerical_radius(t).omega);
      }));
  out.push_back(battery(
      "nu1_equals_state_radius", 1e-5, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}};
        return std::abs(matrange::nu_n(t, 1).value - numrange::state_radius_sdp(t));
      }));
  out.push_back(battery(
      "nu_unitary_and_adjoint_invariance", 1e-5, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const CMat u = haar_isometry(opt.k, opt.k, r);
        inst = {{"T", matrix_to_json(t)}};
        const double base = matrange::nu_n(t, opt.n).value;
        return std::max(
            std::abs(matrange::nu_n(CMat(u.adjoint() * t * u), opt.n).value - base),
            std::abs(matrange::nu_n(adjoint(t), opt.n).value - base));
      }));
  return out;
}

std::vector<PropertyResult> suite_omega(const Options& opt) {
  Rng rng(opt.seed + 4);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "omega_equals_n_omega", 1e-4, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}, {"n", opt.n}};
        return std::abs(matrange::omega_n(t, opt.n).value -
                        opt.n * numrange::numerical_radius(t).omega);
      }));
  out.push_back(battery(
      "inner_radius_equals_omega", 1e-4, std::max(1, opt.trials / 2), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}};
        return std::abs(matrange::sup_inner_radius(t, opt.n).value -
                        numrange::numerical_radius(t).omega);
      }));
  out.push_back(battery(
      "bound_hierarchy", 1e-5, std::max(1, opt.trials / 2), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}, {"n", opt.n}};
        const double nu = matrange::nu_n(t, opt.n).value;
        const double om = matrange::omega_n(t, opt.n).value;
        const double cap = opt.n * schatten_norm(t, inf());
        return std::max({0.0, nu - om, om - cap});
      }));
  return out;
}

std::vector<PropertyResult> suite_cstar(const Options& opt) {
  Rng rng(opt.seed + 5);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "cstar_combination_membership", 0.0, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        const int m = 2 + static_cast<int>(r.uniform() * 2);
        std::vector<CMat> xs, as;
        std::vector<ucp::ChoiMap> phis;
        for (int j = 0; j < m; ++j) {
          phis.push_back(ucp::random_ucp(opt.k, opt.n, opt.k, r));
          xs.push_back(phis.back().apply(t));
        }
        const CMat stack = haar_isometry(m * opt.n, opt.n, r);
        for (int j = 0; j < m; ++j) as.push_back(stack.middleRows(j * opt.n, opt.n));
        const CMat combo = matrange::cstar_combination(xs, as, 1e-8);
        CMat jcombo = CMat::Zero(opt.k * opt.n, opt.k * opt.n);
        for (int j = 0; j < m; ++j) {
          const CMat lift = kron(CMat::Identity(opt.k, opt.k), as[j]);
          jcombo += lift.adjoint() * phis[j].j * lift;
        }
        ucp::ChoiMap hint{opt.k, opt.n, jcombo};
        inst = {{"T", matrix_to_json(t)}, {"X", matrix_to_json(combo)}};
        return matrange::membership(t, combo, 1e-6, &hint).status ==
                       matrange::Membership::Member
                   ? 0.0
                   : 1.0;
      }));
  out.push_back(battery(
      "jordan_combination_stays_in_ball", 0.0, opt.trials, rng,
      [&](Rng& r, nlohmann::json& inst) {
        CMat t = CMat::Zero(2, 2);
        t(0, 1) = 1.0;
        std::vector<CMat> xs, as;
        const int m = 3;
        for (int j = 0; j < m; ++j) {
          xs.push_back(ucp::random_ucp(2, opt.n, 2, r).apply(t));
        }
        const CMat stack = haar_isometry(m * opt.n, opt.n, r);
        for (int j = 0; j < m; ++j) as.push_back(stack.middleRows(j * opt.n, opt.n));
        const CMat combo = matrange::cstar_combination(xs, as, 1e-8);
        inst = {{"X", matrix_to_json(combo)}};
        return matrange::known_membership(matrange::KnownRange::jordan(1.0, opt.n),
                                          combo, 1e-7)
                   ? 0.0
                   : 1.0;
      }));
  return out;
}

std::vector<PropertyResult> suite_lemma(const Options& opt) {
  Rng rng(opt.seed + 6);
  std::vector<PropertyResult> out;
  out.push_back(battery(
      "forward_inclusion", 0.0, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        // normal S whose spectrum is sampled from W(T)
        CMat diag = CMat::Zero(opt.k, opt.k);
        for (int i = 0; i < opt.k; ++i) {
          const CVec x = random_unit_vector(opt.k, r);
          diag(i, i) = (x.adjoint() * (t * x))(0, 0);
        }
        const CMat u = haar_isometry(opt.k, opt.k, r);
        const CMat s = u.adjoint() * diag * u;
        inst = {{"T", matrix_to_json(t)}, {"S", matrix_to_json(s)}};
        const auto check = matrange::lemma_inclusion_check(s, t, opt.n, 1e-8, 3,
                                                           r.next_u64());
        return check.spectral_side && check.sampled_inclusion ? 0.0 : 1.0;
      }));
  out.push_back(battery(
      "converse_exclusion", 0.0, std::max(1, opt.trials / 5), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        // one eigenvalue pushed strictly outside the closed range
        const double theta = 2.0 * kPi * r.uniform();
        const EigenDecomposition ed =
            eig_hermitian(rotated_hermitian_part(t, theta));
        const double reach = ed.values(opt.k - 1) + 0.4 + r.uniform();
        CMat diag = CMat::Zero(opt.k, opt.k);
        diag(0, 0) = std::polar(1.0, -theta) * reach;
        for (int i = 1; i < opt.k; ++i) {
          const CVec x = random_unit_vector(opt.k, r);
          diag(i, i) = (x.adjoint() * (t * x))(0, 0);
        }
        const CMat u = haar_isometry(opt.k, opt.k, r);
        const CMat s = u.adjoint() * diag * u;
        inst = {{"T", matrix_to_json(t)}, {"S", matrix_to_json(s)}};
        const auto check = matrange::lemma_inclusion_check(s, t, opt.n, 1e-8, 2,
                                                           r.next_u64());
        return !check.spectral_side && !check.sampled_inclusion ? 0.0 : 1.0;
      }));
  out.push_back(battery(
      "composition_inclusion", 0.0, std::max(1, opt.trials / 10), rng,
      [&](Rng& r, nlohmann::json& inst) {
        const CMat t = sample_t(r, opt.k);
        inst = {{"T", matrix_to_json(t)}};
        return matrange::composition_inclusion_check(t, opt.n, 2, 5, 1e-6,
                                                     r.next_u64())
                   ? 0.0
                   : 1.0;
      }));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "theoremA", "theoremB", "theoremC", "nu", "omega", "cstar", "lemma", "all"};
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& suite, const Options& opt) {
  if (suite == "theoremA") return suite_theorem_a(opt);
  if (suite == "theoremB") return suite_theorem_b(opt);
  if (suite == "theoremC") return suite_theorem_c(opt);
  if (suite == "nu") return suite_nu(opt);
  if (suite == "omega") return suite_omega(opt);
  if (suite == "cstar") return suite_cstar(opt);
  if (suite == "lemma") return suite_lemma(opt);
  if (suite == "all") {
    std::vector<PropertyResult> all;
    for (const std::string& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, opt);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace mrk::verify
