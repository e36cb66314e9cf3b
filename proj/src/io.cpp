#include "qcdeph/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qcdeph::io {

nlohmann::json density_to_json(const ComplexMatrix<double>& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {
std::vector<double> numbers(const nlohmann::json& j, const char* key, std::size_t expected) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(ErrorCode::ParseError, std::string("state JSON: missing array \"") + key + "\"");
  }
  const auto& arr = j[key];
  if (arr.size() != expected) {
    throw Error(ErrorCode::ParseError, std::string("state JSON: \"") + key + "\" must hold " +
                                           std::to_string(expected) + " numbers, got " + std::to_string(arr.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : arr) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("state JSON: non-numeric entry in \"") + key + "\"");
    out.push_back(v.get<double>());
  }
  return out;
}
}  // namespace

ComplexMatrix<double> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "state JSON: top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() != kDim) {
    throw Error(ErrorCode::ParseError, "state JSON: \"dim\" must be 6");
  }
  const std::size_t count = kDim * kDim;
  const auto re = numbers(j, "re", count);
  const auto im = numbers(j, "im", count);
  ComplexMatrix<double> m(kDim, kDim);
  for (int i = 0; i < kDim; ++i) {
    for (int k = 0; k < kDim; ++k) m(i, k) = {re[i * kDim + k], im[i * kDim + k]};
  }
  return m;
}

DensityMatrixd read_density_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON in " + path.string() + ": " + e.what());
  }
  return DensityMatrixd::from_matrix(matrix_from_json(j));
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
  }
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path.string());
  write_csv(out, table);
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "CSV: missing header");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "CSV: bad number '" + cell + "'");
      }
    }
    if (row.size() != t.columns.size()) throw Error(ErrorCode::ParseError, "CSV: ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qcdeph::io
