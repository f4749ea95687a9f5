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
#include <string>
#include <vector>

#include <json.hpp>

namespace mrk::verify {

struct Options {
  std::uint64_t seed = 0x6d726bULL;
  int trials = 50;
  int k = 3;
  int n = 2;
};

struct PropertyResult {
  std::string name;
  bool pass = true;
  double worst = 0.0;
  double threshold = 0.0;
  nlohmann::json failure;  // first offending instance, for replay
};

const std::vector<std::string>& suite_names();

// runs one named suite ("theoremA", ..., "all") on seeded random instances
std::vector<PropertyResult> run_suite(const std::string& suite, const Options& opt);

}  // namespace mrk::verify
