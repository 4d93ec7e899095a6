#include "lindiff/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace lindiff {
namespace {

constexpr std::array<char, 4> kMagic{'L', 'D', 'M', 'X'};

template <typename T>
void putLittle(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T getLittle(std::istream& is, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
    throw FormatError("LDMX: truncated file " + path.string());
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

double parseDouble(std::string_view text, const std::filesystem::path& path) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw FormatError("CSV: bad number '" + std::string(text) + "' in " + path.string());
  return value;
}

std::vector<std::string_view> splitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string formatDouble(double x) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw FormatError("formatDouble: conversion failed");
  return std::string(buf.data(), ptr);
}

void writeLdmx(const Matrix& m, const std::filesystem::path& path) {
  if (m.rows() > UINT32_MAX || m.cols() > UINT32_MAX)
    throw DimensionError("LDMX: matrix too large");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("LDMX: cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  putLittle<std::uint32_t>(os, static_cast<std::uint32_t>(m.rows()));
  putLittle<std::uint32_t>(os, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) putLittle<double>(os, m(i, j));
  if (!os) throw FormatError("LDMX: write failed for " + path.string());
}

Matrix readLdmx(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("LDMX: cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic)
    throw FormatError("LDMX: bad magic in " + path.string());
  const auto rows = getLittle<std::uint32_t>(is, path);
  const auto cols = getLittle<std::uint32_t>(is, path);
  if (rows == 0 || cols == 0)
    throw FormatError("LDMX: empty shape " + std::to_string(rows) + "x" + std::to_string(cols));
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = getLittle<double>(is, path);
  if (is.peek() != std::char_traits<char>::eof())
    throw FormatError("LDMX: trailing bytes in " + path.string());
  return m;
}

void writeCsvMatrix(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw FormatError("CSV: cannot open " + path.string() + " for writing");
  os << m.rows() << ',' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << formatDouble(m(i, j));
    }
    os << '\n';
  }
  if (!os) throw FormatError("CSV: write failed for " + path.string());
}

Matrix readCsvMatrix(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("CSV: cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw FormatError("CSV: missing header in " + path.string());
  const auto header = splitCommas(line);
  if (header.size() != 2) throw FormatError("CSV: header must be 'rows,cols' in " + path.string());
  const double rowsD = parseDouble(header[0], path);
  const double colsD = parseDouble(header[1], path);
  if (rowsD < 1 || colsD < 1 || rowsD != std::floor(rowsD) || colsD != std::floor(colsD))
    throw FormatError("CSV: bad shape in header of " + path.string());
  const auto rows = static_cast<Eigen::Index>(rowsD);
  const auto cols = static_cast<Eigen::Index>(colsD);
  Matrix m(rows, cols);
  Eigen::Index i = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    if (i >= rows) throw FormatError("CSV: more rows than declared in " + path.string());
    const auto fields = splitCommas(line);
    if (static_cast<Eigen::Index>(fields.size()) != cols)
      throw FormatError("CSV: row " + std::to_string(i) + " has " + std::to_string(fields.size()) +
                        " fields, expected " + std::to_string(cols));
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = parseDouble(fields[j], path);
    ++i;
  }
  if (i != rows) throw FormatError("CSV: fewer rows than declared in " + path.string());
  return m;
}

Matrix readMatrix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (is.gcount() == 4 && magic == kMagic) return readLdmx(path);
  return readCsvMatrix(path);
}

void writeMatrix(const Matrix& m, const std::filesystem::path& path) {
  if (path.extension() == ".csv")
    writeCsvMatrix(m, path);
  else
    writeLdmx(m, path);
}

}  // namespace lindiff
