#pragma once

#include <filesystem>

#include "lindiff/matcore.hpp"

namespace lindiff {

/// Binary "LDMX": magic `LDMX`, u32 rows, u32 cols (little-endian), then
/// rows*cols little-endian f64 in row-major order.
void writeLdmx(const Matrix& m, const std::filesystem::path& path);
Matrix readLdmx(const std::filesystem::path& path);

/// Headered CSV: first line `rows,cols`, then one line per row. Values are
/// written in shortest round-trip form.
void writeCsvMatrix(const Matrix& m, const std::filesystem::path& path);
Matrix readCsvMatrix(const std::filesystem::path& path);

/// Dispatches on content: LDMX magic means binary, otherwise headered CSV.
Matrix readMatrix(const std::filesystem::path& path);
/// Dispatches on extension: `.csv` writes CSV, anything else LDMX.
void writeMatrix(const Matrix& m, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `x`.
std::string formatDouble(double x);

}  // namespace lindiff
