/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrk/matrange.hpp"
#include "mrk/matrix_io.hpp"
#include "mrk/numrange.hpp"
#include "mrk/ucp.hpp"
#include "verify_suites.hpp"

namespace {

using nlohmann::json;
using namespace mrk;

constexpr const char* kToolVersion = "mrk 0.1.0";
constexpr int kFormatVersion = 1;
constexpr std::uint64_t kDefaultSeed = 0x6d726bULL;

// exit codes: 0 ok / member, 1 non-member or failed verification,
// 2 parse error, 3 numerical failure or undecided, 4 unwritable output
enum ExitCode { kOk = 0, kRejected = 1, kParseError = 2, kNumerical = 3, kUnwritable = 4 };

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag.has_value()) return *flag;
  if (const char* env = std::getenv("MRK_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    std::cerr << "warning: ignoring unparsable MRK_SEED\n";
  }
  return kDefaultSeed;
}

CMat load_or_exit(const std::string& path) {
  try {
    return load_matrix_file(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kParseError);
  }
}

struct Report {
  std::string command;
  json inputs;
  json results;
  std::uint64_t seed = kDefaultSeed;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json envelope() const {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return {{"command", command},
            {"inputs", inputs},
            {"results", results},
            {"seed", seed},
            {"versions", {{"tool", kToolVersion}, {"format", kFormatVersion}}},
            {"elapsed_seconds", elapsed}};
  }
};

json vector_to_json(const CVec& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    data.push_back({v(i).real(), v(i).imag()});
  }
  return data;
}

void emit(const Report& rep, bool as_json, const std::string& text) {
  if (as_json) {
    std::cout << rep.envelope().dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int write_csv(const std::string& path, const std::vector<Complex>& pts) {
  std::ofstream out(path);
  if (!out) return kUnwritable;
  out << "theta,re,im\n";
  const int n = static_cast<int>(pts.size());
  for (int j = 0; j < n; ++j) {
    char line[96];
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", 2.0 * kPi * j / n,
                  pts[j].real(), pts[j].imag());
    out << line;
  }
  return out ? kOk : kUnwritable;
}

int write_svg(const std::string& path, const std::vector<Complex>& pts,
              const std::vector<Complex>& eigs) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  auto grow = [&](Complex z) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  };
  for (Complex z : pts) grow(z);
  for (Complex z : eigs) grow(z);
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double margin = 0.08 * span;
  lo_x -= margin;
  lo_y -= margin;
  const double scale = 600.0 / (span + 2.0 * margin);
  auto px = [&](Complex z) { return (z.real() - lo_x) * scale; };
  auto py = [&](Complex z) { return 600.0 - (z.imag() - lo_y) * scale; };

  std::ofstream out(path);
  if (!out) return kUnwritable;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\">\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (Complex z : pts) out << px(z) << "," << py(z) << " ";
  if (!pts.empty()) out << px(pts.front()) << "," << py(pts.front());
  out << "\"/>\n";
  for (Complex z : eigs) {
    out << "<circle cx=\"" << px(z) << "\" cy=\"" << py(z)
        << "\" r=\"4\" fill=\"#d62728\"/>\n";
  }
  out << "</svg>\n";
  return out ? kOk : kUnwritable;
}

int cmd_radius(const std::string& file, double tol, bool as_json) {
  Report rep;
  rep.command = "radius";
  rep.inputs = {{"matrix", file}, {"tol", tol}};
  const CMat t = load_or_exit(file);
  try {
    const numrange::RangeEstimate est = numrange::numerical_radius(t, tol);
    rep.results = {{"omega", est.omega},
                   {"theta_star", est.theta_star},
                   {"tol", est.tol},
                   {"witness", vector_to_json(est.witness)}};
    char text[256];
    std::snprintf(text, sizeof(text),
                  "omega      = %.12g\ntheta_star = %.12g\ntol        = %.3g\n",
                  est.omega, est.theta_star, est.tol);
    emit(rep, as_json, text);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_range(const std::string& file, int points, const std::string& svg,
              const std::string& csv, bool as_json) {
  Report rep;
  rep.command = "range";
  rep.inputs = {{"matrix", file}, {"points", points}};
  const CMat t = load_or_exit(file);
  try {
    const std::vector<Complex> pts = numrange::boundary_points(t, points);
    const std::vector<Complex> eigs = spectrum(t);
    if (!csv.empty()) {
      if (const int rc = write_csv(csv, pts); rc != kOk) {
        std::cerr << "error: cannot write " << csv << "\n";
        return rc;
      }
      rep.inputs["csv"] = csv;
    }
    if (!svg.empty()) {
      if (const int rc = write_svg(svg, pts, eigs); rc != kOk) {
        std::cerr << "error: cannot write " << svg << "\n";
        return rc;
      }
      rep.inputs["svg"] = svg;
    }
    json jpts = json::array();
    for (Complex z : pts) jpts.push_back({z.real(), z.imag()});
    json jeigs = json::array();
    for (Complex z : eigs) jeigs.push_back({z.real(), z.imag()});
    rep.results = {{"boundary", jpts}, {"spectrum", jeigs}};
    char text[128];
    std::snprintf(text, sizeof(text), "emitted %zu boundary points\n", pts.size());
    emit(rep, as_json, text);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_nu(const std::string& file, int n, double tol, bool as_json) {
  Report rep;
  rep.command = "nu";
  rep.inputs = {{"matrix", file}, {"n", n}, {"tol", tol}};
  const CMat t = load_or_exit(file);
  try {
    const matrange::SupremumResult res = matrange::nu_n(t, n, tol);
    rep.results = matrange::to_json(res);
    char text[256];
    std::snprintf(text, sizeof(text),
                  "nu^%d  = %.12g\nbounds = [%.12g, %.12g]\nconverged = %s\n", n,
                  res.value, res.lower_bound, res.upper_bound,
                  res.converged ? "yes" : "no");
    emit(rep, as_json, text);
    return res.converged ? kOk : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_omega(const std::string& file, int n, double tol, int restarts,
              std::uint64_t seed, bool as_json) {
  Report rep;
  rep.command = "omega";
  rep.seed = seed;
  rep.inputs = {{"matrix", file}, {"n", n}, {"tol", tol}, {"restarts", restarts}};
  const CMat t = load_or_exit(file);
  try {
    const matrange::SupremumResult res = matrange::omega_n(t, n, tol, restarts, seed);
    rep.results = matrange::to_json(res);
    char text[256];
    std::snprintf(text, sizeof(text),
                  "omega^%d = %.12g\nbounds  = [%.12g, %.12g]\nconverged = %s\n", n,
                  res.value, res.lower_bound, res.upper_bound,
                  res.converged ? "yes" : "no");
    emit(rep, as_json, text);
    return res.converged ? kOk : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_member(const std::string& file_t, const std::string& file_x, double tol,
               bool as_json) {
  Report rep;
  rep.command = "member";
  rep.inputs = {{"matrix_T", file_t}, {"matrix_X", file_x}, {"tol", tol}};
  const CMat t = load_or_exit(file_t);
  const CMat x = load_or_exit(file_x);
  try {
    const matrange::MembershipVerdict v = matrange::membership(t, x, tol);
    rep.results = matrange::to_json(v);
    const char* status = v.status == matrange::Membership::Member ? "member"
                         : v.status == matrange::Membership::NonMember
                             ? "non-member"
                             : "undecided";
    char text[160];
    std::snprintf(text, sizeof(text), "status   = %s\ndistance = %.6g\n", status,
                  v.distance);
    emit(rep, as_json, text);
    switch (v.status) {
      case matrange::Membership::Member:
        return kOk;
      case matrange::Membership::NonMember:
        return kRejected;
      default:
        return kNumerical;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, int k,
               int n, bool as_json) {
  Report rep;
  rep.command = "verify";
  rep.seed = seed;
  rep.inputs = {{"suite", suite}, {"trials", trials}, {"k", k}, {"n", n}};
  try {
    verify::Options opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.k = k;
    opt.n = n;
    const std::vector<verify::PropertyResult> results = verify::run_suite(suite, opt);

    bool all_pass = true;
    json jprops = json::array();
    std::string text;
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      char line[160];
      std::snprintf(line, sizeof(line), "%s  %-36s worst %.3e (threshold %.1e)\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.threshold);
      text += line;
      json jp = {{"name", r.name},
                 {"pass", r.pass},
                 {"worst", r.worst},
                 {"threshold", r.threshold}};
      if (!r.failure.is_null()) jp["offending_instance"] = r.failure;
      jprops.push_back(jp);
    }
    rep.results = {{"properties", jprops}, {"all_pass", all_pass}};
    if (!as_json && !all_pass) {
      for (const auto& r : results) {
        if (!r.pass && !r.failure.is_null()) {
          text += "offending instance for " + r.name + ": " + r.failure.dump() + "\n";
        }
      }
    }
    text += all_pass ? "all properties passed\n" : "some properties FAILED\n";
    emit(rep, as_json, text);
    return all_pass ? kOk : kRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

int cmd_random(int rows, int cols, std::uint64_t seed, const std::string& kind,
               const std::string& out, bool as_json) {
  Report rep;
  rep.command = "random";
  rep.seed = seed;
  rep.inputs = {{"rows", rows}, {"cols", cols}, {"kind", kind}, {"out", out}};
  try {
    Rng rng(seed);
    CMat m;
    if (kind == "ginibre") {
      m = ginibre(rows, cols, rng);
    } else if (kind == "disk") {
      if (rows != cols) throw std::invalid_argument("disk kind requires a square matrix");
      m = random_unit_disk_matrix(rows, rng);
    } else if (kind == "normal") {
      if (rows != cols) throw std::invalid_argument("normal kind requires a square matrix");
      m = random_normal_matrix(rows, rng);
    } else {
      throw std::invalid_argument("unknown kind: " + kind);
    }
    try {
      save_matrix_file(m, out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUnwritable;
    }
    rep.results = {{"path", out}};
    emit(rep, as_json, "wrote " + out + "\n");
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mrk: numerical range, numerical radius and matricial range oracles"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit a JSON run report on stdout");

  std::optional<std::uint64_t> seed_flag;

  auto* radius = app.add_subcommand("radius", "numerical radius omega(T)");
  std::string radius_file;
  double radius_tol = 1e-10;
  radius->add_option("matrix", radius_file, "matrix JSON file")->required();
  radius->add_option("--tol", radius_tol, "target tolerance");

  auto* range = app.add_subcommand("range", "boundary of the numerical range W(T)");
  std::string range_file, range_svg, range_csv;
  int range_points = 360;
  range->add_option("matrix", range_file, "matrix JSON file")->required();
  range->add_option("--points", range_points, "number of boundary angles")
      ->check(CLI::Range(3, 1000000));
  range->add_option("--svg", range_svg, "write an SVG plot to this path");
  range->add_option("--csv", range_csv, "write theta,re,im rows to this path");

  auto* nu = app.add_subcommand("nu", "nu^n(T): sup |Tr X| over W^n(T)");
  std::string nu_file;
  int nu_n_arg = 2;
  double nu_tol = 1e-4;
  nu->add_option("matrix", nu_file, "matrix JSON file")->required();
  nu->add_option("--n", nu_n_arg, "matricial range level")->check(CLI::PositiveNumber);
  nu->add_option("--tol", nu_tol, "target tolerance");

  auto* omega = app.add_subcommand("omega", "omega^n(T): sup ||X||_1 over W^n(T)");
  std::string omega_file;
  int omega_n_arg = 2, omega_restarts = 5;
  double omega_tol = 1e-4;
  omega->add_option("matrix", omega_file, "matrix JSON file")->required();
  omega->add_option("--n", omega_n_arg, "matricial range level")
      ->check(CLI::PositiveNumber);
  omega->add_option("--tol", omega_tol, "target tolerance");
  omega->add_option("--restarts", omega_restarts, "ascent restarts")
      ->check(CLI::PositiveNumber);
  omega->add_option("--seed", seed_flag, "seed for the ascent restarts");

  auto* member = app.add_subcommand("member", "is X in W^n(T)?");
  std::string member_t, member_x;
  double member_tol = 1e-6;
  member->add_option("matrix_T", member_t, "matrix T JSON file")->required();
  member->add_option("matrix_X", member_x, "matrix X JSON file")->required();
  member->add_option("--tol", member_tol, "membership tolerance");

  auto* verify = app.add_subcommand("verify", "run seeded property suites");
  std::string verify_suite = "all";
  int verify_trials = 50, verify_k = 3, verify_n = 2;
  verify->add_option("--suite", verify_suite, "suite name")
      ->check(CLI::IsMember(mrk::verify::suite_names()));
  verify->add_option("--seed", seed_flag, "suite seed");
  verify->add_option("--trials", verify_trials, "trials per property")
      ->check(CLI::PositiveNumber);
  verify->add_option("--k", verify_k, "operator dimension")->check(CLI::Range(1, 6));
  verify->add_option("--n", verify_n, "matricial range level")->check(CLI::Range(1, 4));

  auto* random = app.add_subcommand("random", "write a seeded random matrix file");
  int random_rows = 3, random_cols = 3;
  std::string random_kind = "ginibre", random_out;
  random->add_option("--rows", random_rows, "rows")->check(CLI::Range(1, 64));
  random->add_option("--cols", random_cols, "cols")->check(CLI::Range(1, 64));
  random->add_option("--seed", seed_flag, "generator seed");
  random->add_option("--kind", random_kind, "ginibre | disk | normal")
      ->check(CLI::IsMember({"ginibre", "disk", "normal"}));
  random->add_option("--out", random_out, "output path")->required();

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kParseError;
  }

  const std::uint64_t seed = resolve_seed(seed_flag);

  if (radius->parsed()) return cmd_radius(radius_file, radius_tol, as_json);
  if (range->parsed()) {
    return cmd_range(range_file, range_points, range_svg, range_csv, as_json);
  }
  if (nu->parsed()) return cmd_nu(nu_file, nu_n_arg, nu_tol, as_json);
  if (omega->parsed()) {
    return cmd_omega(omega_file, omega_n_arg, omega_tol, omega_restarts, seed, as_json);
  }
  if (member->parsed()) return cmd_member(member_t, member_x, member_tol, as_json);
  if (verify->parsed()) {
    return cmd_verify(verify_suite, seed, verify_trials, verify_k, verify_n, as_json);
  }
  if (random->parsed()) {
    return cmd_random(random_rows, random_cols, seed, random_kind, random_out, as_json);
  }
  return kParseError;
}
