/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mrk {

// Seeded generator with explicitly coded output transforms. The core is
// std::mt19937_64, which the standard pins down bit-for-bit; uniform and
// normal variates are derived here rather than through std::*_distribution
// (whose output is implementation-defined), so a given seed reproduces the
// same stream on every platform up to libm rounding.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // real and imaginary parts i.i.d. standard normal
  std::complex<double> complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  // uniform on the closed unit disk (rejection sampling)
  std::complex<double> unit_disk() {
    for (;;) {
      const double re = 2.0 * uniform() - 1.0;
      const double im = 2.0 * uniform() - 1.0;
      if (re * re + im * im <= 1.0) return {re, im};
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mrk
