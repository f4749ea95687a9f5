/*
 * This code is part of mrk.
 *
 * (C) Copyright mrk developers 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "mrk/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mrk {

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data")) {
    throw std::runtime_error("matrix json: expected {rows, cols, data}");
  }
  const long long rows = j.at("rows").get<long long>();
  const long long cols = j.at("cols").get<long long>();
  if (rows <= 0 || cols <= 0 || rows > 4096 || cols > 4096) {
    throw std::runtime_error("matrix json: rows/cols out of range");
  }
  const auto& data = j.at("data");
  if (!data.is_array() ||
      static_cast<long long>(data.size()) != rows * cols) {
    throw std::runtime_error("matrix json: data length != rows*cols");
  }
  CMat m(rows, cols);
  long long idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++idx) {
      const auto& e = data.at(idx);
      if (!e.is_array() || e.size() != 2) {
        throw std::runtime_error("matrix json: entries must be [re, im] pairs");
      }
      const double re = e.at(0).get<double>();
      const double im = e.at(1).get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::runtime_error("matrix json: non-finite entry");
      }
      m(i, jj) = Complex(re, im);
    }
  }
  return m;
}

void save_matrix_file(const CMat& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << matrix_to_json(m).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

CMat load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid json in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

}  // namespace mrk
