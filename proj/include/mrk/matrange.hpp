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
#include <optional>
#include <vector>

#include <json.hpp>

#include "mrk/matrix.hpp"
#include "mrk/ucp.hpp"

namespace mrk::matrange {

inline constexpr std::uint64_t kDefaultSeed = 0x6d726bULL;

enum class Membership { Member, NonMember, Undecided };

struct MembershipVerdict {
  Membership status = Membership::Undecided;
  std::optional<ucp::ChoiMap> witness;  // set for Member
  double distance = 0.0;  // ||apply(best found UCP, T) - X||_F
  double tol = 0.0;
  double gap = 0.0;       // converged splitting displacement, diagnostic
  int iterations = 0;
};

enum class SupMethod { SweepSdp, AlternatingAscent };

struct SupremumResult {
  double value = 0.0;
  ucp::ChoiMap witness;      // attains value up to tolerance
  double lower_bound = 0.0;  // from an explicit witness
  double upper_bound = 0.0;  // the exact answer, recorded for the report
  SupMethod method = SupMethod::SweepSdp;
  bool converged = false;
};

// Is X in W^n(T)? Solved as the feasibility SDP over Choi matrices:
// exists J >= 0 with Tr_in J = I_n and Phi_J(T) = X. A Member verdict
// carries a corrected exactly-UCP witness that reproduces X within tol;
// NonMember requires the splitting gap and the witness distance to both
// exceed 10*tol; the band in between is Undecided (boundary zone).
// An optional hint seeds the splitting (e.g. an explicitly constructed map).
MembershipVerdict membership(const CMat& t, const CMat& x, double tol = 1e-6,
                             const ucp::ChoiMap* hint = nullptr,
                             int max_iter = 80000);

// nu^n(T) = sup |Tr X| over W^n(T), by a phase sweep of linear SDPs over the
// UCP spectrahedron; equals n*omega(T)
SupremumResult nu_n(const CMat& t, int n, double tol = 1e-4);

// omega^n(T) = sup ||X||_1 over W^n(T), by alternating ascent between the
// contraction factor and the Choi variable; equals n*omega(T)
SupremumResult omega_n(const CMat& t, int n, double tol = 1e-4, int restarts = 5,
                       std::uint64_t seed = kDefaultSeed);

// sup ||X|| over W^n(T); equals ||T|| for n >= 2 (for n = 1 the supremum is
// the numerical radius instead)
SupremumResult sup_opnorm(const CMat& t, int n, double tol = 1e-4, int restarts = 5,
                          std::uint64_t seed = kDefaultSeed);

// sup omega(X) over W^n(T); equals omega(T)
SupremumResult sup_inner_radius(const CMat& t, int n, double tol = 1e-4,
                                int restarts = 5, std::uint64_t seed = kDefaultSeed);

// Closed-form matricial ranges.
//   JordanNilpotent2(r): W^n of [[0, r], [0, 0]] is {B : omega(B) <= r/2}
//   UnilateralShift:     W^n of the shift is {B : B*B <= I_n}
struct KnownRange {
  enum class Kind { JordanNilpotent2, UnilateralShift };
  Kind kind = Kind::JordanNilpotent2;
  double r = 1.0;  // Jordan parameter, > 0
  int n = 1;

  static KnownRange jordan(double r, int n) {
    return {Kind::JordanNilpotent2, r, n};
  }
  static KnownRange shift(int n) { return {Kind::UnilateralShift, 1.0, n}; }
};

// sup of the Schatten p-norm over the known range. Shift: n^{1/p} for every
// p >= 1 (p = inf gives 1). Jordan block: n*r/2 at p = 1, r at p = inf, and
// r/2 for n = 1; no closed form is exposed for other p (a sampling check
// refutes the naive (r/2) n^{1/p} formula: the nilpotent itself has
// ||X||_2 = r > (r/2) sqrt(2) at n = 2).
double sup_schatten_known(const KnownRange& range, double p);

bool known_membership(const KnownRange& range, const CMat& x, double tol);

// sum_j A_j* X_j A_j with sum_j A_j* A_j = I enforced within tol
CMat cstar_combination(const std::vector<CMat>& xs, const std::vector<CMat>& as,
                       double tol);

struct LemmaCheck {
  bool spectral_side = false;     // sp(S) inside the closed W(T)
  bool sampled_inclusion = false; // sampled W^n(S) elements are members of W^n(T)
};

// For normal S: sp(S) in closure(W(T)) iff W^n(S) in W^n(T). The spectral
// side is checked directly; the inclusion is probed on random UCP images of
// S, and when the spectral side fails, on lambda*I_n for an offending
// eigenvalue (which the membership oracle must reject).
LemmaCheck lemma_inclusion_check(const CMat& s, const CMat& t, int n, double tol,
                                 int samples, std::uint64_t seed = kDefaultSeed);

// W^m(W^n(T)) inside W^m(T): random Psi(Phi(T)) images must be members
bool composition_inclusion_check(const CMat& t, int n, int m, int trials,
                                 double tol, std::uint64_t seed = kDefaultSeed);

nlohmann::json to_json(const MembershipVerdict& v);
nlohmann::json to_json(const SupremumResult& r);

}  // namespace mrk::matrange
