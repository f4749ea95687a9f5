/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>

#include <json.hpp>

#include "mrk/matrix.hpp"

namespace mrk {

// On-disk matrix format:
//   {"rows": int, "cols": int, "data": [[re, im], ...]}   (row-major)
// Parsing rejects wrong lengths and non-finite values.

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

void save_matrix_file(const CMat& m, const std::string& path);
CMat load_matrix_file(const std::string& path);

}  // namespace mrk
