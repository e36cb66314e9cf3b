#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcdeph/states.hpp"

namespace qcdeph::io {

// DensityMatrix JSON: {"dim": 6, "re": [36 numbers], "im": [36 numbers]}, row-major.

nlohmann::json density_to_json(const ComplexMatrix<double>& m);

/// Schema check only (ParseError on mismatch); no physical validation.
ComplexMatrix<double> matrix_from_json(const nlohmann::json& j);

/// Reads and validates a state file. ParseError for unreadable or malformed
/// files, InvariantViolation (naming the invariant) for unphysical matrices.
DensityMatrixd read_density_file(const std::filesystem::path& path);

/// Shortest "%.12g" rendering; negative zero prints as 0.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);

/// Parses a numeric CSV with a header line (ParseError on malformed input).
CsvTable read_csv(std::istream& is);

}  // namespace qcdeph::io
