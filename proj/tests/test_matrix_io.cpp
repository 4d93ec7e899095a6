#include <doctest.h>

#include <fstream>
#include <random>

#include "lindiff/matrix_io.hpp"
#include "oracles.hpp"

using namespace lindiff;

namespace {

Matrix awkwardValues() {
  Matrix m(3, 4);
  m << 0.1, -1e-300, 1e300, 1.0 / 3.0,
       -0.0, 123456789.123456789, std::nextafter(1.0, 2.0), 5e-324,
       2.5, -7, 1e-7, 0.3;
  return m;
}

}  // namespace

TEST_CASE("LDMX round trip is bit exact") {
  const auto dir = oracle::scratchDir("ldmx");
  const Matrix m = awkwardValues();
  writeLdmx(m, dir / "m.ldmx");
  const Matrix back = readLdmx(dir / "m.ldmx");
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    CHECK(std::memcmp(&m(i), &back(i), sizeof(double)) == 0);
}

TEST_CASE("LDMX layout: header then row-major little-endian f64") {
  const auto dir = oracle::scratchDir("ldmx-layout");
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  writeLdmx(m, dir / "m.ldmx");
  std::ifstream in(dir / "m.ldmx", std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
  REQUIRE(bytes.size() == 12 + 6 * 8);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "LDMX");
  CHECK(bytes[4] == 2);
  CHECK(bytes[8] == 3);
  double second;
  std::memcpy(&second, bytes.data() + 12 + 8, 8);
  CHECK(second == 2.0);
}

TEST_CASE("CSV round trip is bit exact") {
  const auto dir = oracle::scratchDir("csv");
  const Matrix m = awkwardValues();
  writeCsvMatrix(m, dir / "m.csv");
  const Matrix back = readCsvMatrix(dir / "m.csv");
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    CHECK(std::memcmp(&m(i), &back(i), sizeof(double)) == 0);
}

TEST_CASE("random round trips through both formats") {
  const auto dir = oracle::scratchDir("io-random");
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = oracle::randomMatrix(1 + trial % 5, 1 + trial % 7, gen) * std::pow(10.0, trial - 10);
    writeMatrix(m, dir / "m.csv");
    writeMatrix(m, dir / "m.ldmx");
    CHECK(readMatrix(dir / "m.csv") == m);
    CHECK(readMatrix(dir / "m.ldmx") == m);
  }
}

TEST_CASE("malformed files raise FormatError") {
  const auto dir = oracle::scratchDir("io-bad");
  {
    std::ofstream(dir / "magic.ldmx", std::ios::binary) << "LDMY\x01\0\0\0\x01\0\0\0";
  }
  CHECK_THROWS_AS(readLdmx(dir / "magic.ldmx"), FormatError);

  Matrix m = Matrix::Ones(2, 2);
  writeLdmx(m, dir / "short.ldmx");
  std::filesystem::resize_file(dir / "short.ldmx", 12 + 3 * 8);
  CHECK_THROWS_AS(readLdmx(dir / "short.ldmx"), FormatError);

  writeLdmx(m, dir / "long.ldmx");
  { std::ofstream(dir / "long.ldmx", std::ios::binary | std::ios::app) << "x"; }
  CHECK_THROWS_AS(readLdmx(dir / "long.ldmx"), FormatError);

  { std::ofstream(dir / "rows.csv") << "2,2\n1,2\n"; }
  CHECK_THROWS_AS(readCsvMatrix(dir / "rows.csv"), FormatError);
  { std::ofstream(dir / "cols.csv") << "1,2\n1,2,3\n"; }
  CHECK_THROWS_AS(readCsvMatrix(dir / "cols.csv"), FormatError);
  { std::ofstream(dir / "text.csv") << "1,1\nabc\n"; }
  CHECK_THROWS_AS(readCsvMatrix(dir / "text.csv"), FormatError);

  CHECK_THROWS_AS(readMatrix(dir / "missing.ldmx"), FormatError);
}

TEST_CASE("formatDouble gives the shortest round-trip form") {
  CHECK(formatDouble(0.1) == "0.1");
  CHECK(formatDouble(2.0) == "2");
  CHECK(std::stod(formatDouble(1.0 / 3.0)) == 1.0 / 3.0);
}
