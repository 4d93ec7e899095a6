#include <doctest.h>

#include <random>

#include "lindiff/matcore.hpp"
#include "oracles.hpp"

using namespace lindiff;

TEST_CASE("matmul: identity and a hand-computed swap") {
  Matrix a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  CHECK(matmul(Matrix::Identity(3, 3), a) == a);

  Matrix x(2, 2), swap(2, 2), expected(2, 2);
  x << 1, 2, 3, 4;
  swap << 0, 1, 1, 0;
  expected << 2, 1, 4, 3;
  CHECK(matmul(x, swap) == expected);
}

TEST_CASE("matmul: agrees with the triple-loop oracle") {
  std::mt19937_64 gen(11);
  const Matrix a = oracle::randomMatrix(5, 4, gen);
  const Matrix b = oracle::randomMatrix(4, 3, gen);
  const Matrix c = matmul(a, b);
  REQUIRE(c.rows() == 5);
  REQUIRE(c.cols() == 3);
  CHECK((c - oracle::naiveMatmul(a, b)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("matmul: shape mismatch is a dimension error") {
  CHECK_THROWS_AS(matmul(Matrix::Ones(2, 3), Matrix::Ones(2, 3)), DimensionError);
}

TEST_CASE("symEigen: diagonal input") {
  const Matrix a = Vector::LinSpaced(3, 3.0, 1.0).asDiagonal();
  const auto e = symEigen(a);
  CHECK(e.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(e.eigenvalues(2) == doctest::Approx(1.0));
  CHECK((e.eigenvectors.cwiseAbs() - Matrix::Identity(3, 3)).norm() < 1e-12);
  // Sign convention: largest entry non-negative, so exactly the identity.
  CHECK((e.eigenvectors - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("symEigen: classic 2x2") {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const auto e = symEigen(a);
  CHECK(e.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(e.eigenvectors(0, 0) == doctest::Approx(h));
  CHECK(e.eigenvectors(1, 0) == doctest::Approx(h));
  CHECK(e.eigenvectors(0, 1) == doctest::Approx(h));
  CHECK(e.eigenvectors(1, 1) == doctest::Approx(-h));
}

TEST_CASE("symEigen: reconstruction of a random symmetric 10x10") {
  std::mt19937_64 gen(5);
  const Matrix a = oracle::randomSymmetric(10, gen);
  const auto e = symEigen(a);
  CHECK((e.reconstruct() - a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("symEigen: invariants over random symmetric matrices") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> dims(1, 24);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = dims(gen);
    const Matrix a = oracle::randomSymmetric(d, gen);
    const auto e = symEigen(a);
    CAPTURE(trial);
    CAPTURE(d);
    CHECK((e.reconstruct() - a).norm() <= 1e-8 * a.norm());
    CHECK((e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(d, d)).norm() <=
          1e-10 * d);
    for (int i = 1; i < d; ++i) CHECK(e.eigenvalues(i) <= e.eigenvalues(i - 1));
    for (int j = 0; j < d; ++j) {
      Eigen::Index idx;
      e.eigenvectors.col(j).cwiseAbs().maxCoeff(&idx);
      CHECK(e.eigenvectors(idx, j) >= 0);
    }
  }
}

TEST_CASE("symEigen: bit-identical on identical input") {
  std::mt19937_64 gen(8);
  const Matrix a = oracle::randomSymmetric(30, gen);
  const auto e1 = symEigen(a);
  const auto e2 = symEigen(Matrix(a));
  CHECK(e1.eigenvalues == e2.eigenvalues);
  CHECK(e1.eigenvectors == e2.eigenvectors);
}

TEST_CASE("symEigen: ties are ordered by the sign-fixed eigenvectors") {
  const Matrix a = Matrix::Identity(3, 3);
  const auto e = symEigen(a);
  // Lexicographically descending columns of the identity: e0, e1, e2.
  CHECK((e.eigenvectors - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("symEigen: errors") {
  CHECK_THROWS_AS(symEigen(Matrix::Ones(2, 3)), DimensionError);
  Matrix asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(symEigen(asym), ArgumentError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(symEigen(bad), NumericError);
}

TEST_CASE("symEigen: tiny asymmetry is symmetrized") {
  Matrix a(2, 2);
  a << 2, 1, 1 + 1e-12, 2;
  const auto e = symEigen(a);
  CHECK(e.eigenvalues(0) == doctest::Approx(3.0));
}

TEST_CASE("symEigen: float instantiation") {
  Eigen::MatrixXf a(2, 2);
  a << 2, 1, 1, 2;
  const auto e = symEigen(a);
  CHECK(e.eigenvalues(0) == doctest::Approx(3.0f));
}

TEST_CASE("topKProjection: full rank is the identity, k=1 picks the leading axis") {
  const Matrix a = Vector::LinSpaced(3, 3.0, 1.0).asDiagonal();
  const auto e = symEigen(a);
  CHECK((topKProjection(e, 3) - Matrix::Identity(3, 3)).norm() < 1e-12);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1;
  CHECK((topKProjection(e, 1) - expected).norm() < 1e-12);
  CHECK_THROWS_AS(topKProjection(e, 4), DimensionError);
  CHECK_THROWS_AS(topKProjection(e, 0), DimensionError);
}

TEST_CASE("topKProjection: projector properties on random input") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracle::randomSymmetric(6, gen);
    const auto e = symEigen(a);
    for (int k = 1; k <= 6; ++k) {
      const Matrix p = topKProjection(e, k);
      CHECK((p - p.transpose()).norm() <= 1e-12);
      CHECK((p * p - p).norm() <= 1e-9);
      CHECK(std::abs(p.trace() - k) <= 1e-8);
    }
  }
}

TEST_CASE("inner and norm2") {
  Vector u(3), v(3);
  u << 1, 2, 3;
  v << 4, -5, 6;
  CHECK(inner(u, v) == doctest::Approx(12.0));
  CHECK(norm2(u) == doctest::Approx(std::sqrt(14.0)));
  CHECK_THROWS_AS(inner(u, Vector::Ones(2)), DimensionError);
  CHECK_THROWS_AS(norm2(Matrix::Ones(2, 2)), DimensionError);
}

TEST_CASE("gram equals (1/n) X X^T") {
  std::mt19937_64 gen(3);
  const Matrix x = oracle::randomMatrix(7, 40, gen);
  const Matrix g = gram(x);
  CHECK((g - oracle::naiveMatmul(x, x.transpose()) / 40.0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(g == g.transpose());
}

TEST_CASE("canonicalizeSign") {
  Vector v(3);
  v << 0.1, -0.9, 0.3;
  canonicalizeSign(v);
  CHECK(v(1) == doctest::Approx(0.9));
  CHECK(v(0) == doctest::Approx(-0.1));
}
