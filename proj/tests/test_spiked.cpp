#include <doctest.h>

#include "lindiff/spiked.hpp"
#include "lindiff/summation.hpp"
#include "oracles.hpp"

using namespace lindiff;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("random basis is orthonormal and seed dependent") {
  const Matrix u = randomOrthonormalBasis(40, 6, 3);
  CHECK((u.transpose() * u - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(randomOrthonormalBasis(40, 6, 3) == u);
  CHECK(randomOrthonormalBasis(40, 6, 4) != u);
  CHECK_THROWS_AS(randomOrthonormalBasis(3, 4, 1), DimensionError);
}

TEST_CASE("model validation") {
  CHECK_NOTHROW(makeSpikedModel(10, vec({3, 2, 1}), LatentDistribution::Gaussian, 1));
  CHECK_THROWS_AS(makeSpikedModel(10, vec({2, 3}), LatentDistribution::Gaussian, 1), ArgumentError);
  CHECK_THROWS_AS(makeSpikedModel(10, vec({2, 2}), LatentDistribution::Gaussian, 1), ArgumentError);
  CHECK_THROWS_AS(makeSpikedModel(10, vec({2, -1}), LatentDistribution::Gaussian, 1), ArgumentError);
  CHECK_THROWS_AS(makeSpikedModel(2, vec({3, 2, 1}), LatentDistribution::Gaussian, 1), DimensionError);
}

TEST_CASE("latent names") {
  CHECK((parseLatent("gaussian") == LatentDistribution::Gaussian));
  CHECK((parseLatent("rademacher") == LatentDistribution::Rademacher));
  CHECK((parseLatent("uniform") == LatentDistribution::Uniform));
  CHECK((std::string(toString(LatentDistribution::Uniform)) == "uniform"));
  CHECK_THROWS_AS(parseLatent("cauchy"), ArgumentError);
}

TEST_CASE("rank one model: second moment along u is lambda^2") {
  const auto spec = makeSpikedModel(8, vec({2.0}), LatentDistribution::Gaussian, 5);
  const auto x = sampleClean(spec, 100000, 6);
  MeanAccumulator<double> acc;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double p = spec.basis.col(0).dot(x.samples.col(j));
    acc.add(p * p);
  }
  CHECK(acc.mean() >= 3.9);
  CHECK(acc.mean() <= 4.1);
}

TEST_CASE("every latent law has unit variance") {
  for (auto latent : {LatentDistribution::Gaussian, LatentDistribution::Rademacher,
                      LatentDistribution::Uniform}) {
    const auto spec = makeSpikedModel(5, vec({1.0}), latent, 9);
    const auto x = sampleClean(spec, 50000, 10);
    MeanAccumulator<double> acc;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double p = spec.basis.col(0).dot(x.samples.col(j));
      acc.add(p * p);
    }
    const std::string name(toString(latent));
    CAPTURE(name);
    CHECK(acc.mean() == doctest::Approx(1.0).epsilon(0.03));
  }
}

TEST_CASE("rademacher rank one samples have norm lambda") {
  const auto spec = makeSpikedModel(6, vec({1.5}), LatentDistribution::Rademacher, 2);
  const auto x = sampleClean(spec, 200, 3);
  for (Eigen::Index j = 0; j < x.size(); ++j)
    CHECK(x.samples.col(j).norm() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("clean samples lie in the model span") {
  const auto spec = makeSpikedModel(20, vec({3, 2, 1}), LatentDistribution::Gaussian, 4);
  const auto x = sampleClean(spec, 100, 5);
  const Eigen::JacobiSVD<Matrix> svd(x.samples);
  const Vector s = svd.singularValues();
  CHECK(s(2) > 1.0);
  CHECK(s(3) <= 1e-10 * s(0));
}

TEST_CASE("sample covariance approaches the population covariance") {
  const auto spec = makeSpikedModel(10, vec({3, 2, 1}), LatentDistribution::Gaussian, 11);
  const auto x = sampleClean(spec, 200000, 12);
  const Matrix cov = oracle::naiveMatmul(x.samples, x.samples.transpose()) / double(x.size());
  const Matrix pop = spec.populationCovariance();
  CHECK((cov - pop).norm() / pop.norm() <= 0.05);
}

TEST_CASE("populationCovariance adds sigma^2 I") {
  const auto spec = makeSpikedModel(6, vec({2, 1}), LatentDistribution::Gaussian, 1);
  const Matrix diff = spec.populationCovariance(0.5) - spec.populationCovariance(0.0);
  CHECK((diff - 0.25 * Matrix::Identity(6, 6)).norm() < 1e-14);
}

TEST_CASE("addNoise: zero sigma is the identity, negative sigma is rejected") {
  const auto spec = makeSpikedModel(7, vec({2, 1}), LatentDistribution::Gaussian, 1);
  const auto x = sampleClean(spec, 30, 2);
  CHECK(addNoise(x, 0.0, 99).samples == x.samples);
  CHECK_THROWS_AS(addNoise(x, -0.1, 99), ArgumentError);
}

TEST_CASE("addNoise: squared norm of the noise has mean d sigma^2") {
  const Eigen::Index d = 100;
  const auto zero = makeDataset(Matrix::Zero(d, 4000), DataSource::Synthetic);
  const auto noisy = addNoise(zero, 1.0, 21);
  MeanAccumulator<double> acc;
  for (Eigen::Index j = 0; j < noisy.size(); ++j) acc.add(noisy.samples.col(j).squaredNorm());
  // chi^2_100 has sd sqrt(200); the mean over 4000 draws has sd 0.22.
  CHECK(acc.mean() >= 98);
  CHECK(acc.mean() <= 102);
}

TEST_CASE("addNoise: streams are distinct and reproducible") {
  const auto zero = makeDataset(Matrix::Zero(5, 10), DataSource::Synthetic);
  const Matrix a = addNoise(zero, 1.0, 3, 0).samples;
  CHECK(addNoise(zero, 1.0, 3, 0).samples == a);
  CHECK(addNoise(zero, 1.0, 3, 1).samples != a);
  CHECK(addNoise(zero, 1.0, 4, 0).samples != a);
}

TEST_CASE("sampleClean is a pure function of the seed") {
  const auto spec = makeSpikedModel(9, vec({2, 1}), LatentDistribution::Uniform, 1);
  CHECK(sampleClean(spec, 50, 7).samples == sampleClean(spec, 50, 7).samples);
  CHECK(sampleClean(spec, 50, 7).samples != sampleClean(spec, 50, 8).samples);
  // Column j depends only on (seed, j), so a longer draw extends a shorter one.
  CHECK(sampleClean(spec, 80, 7).samples.leftCols(50) == sampleClean(spec, 50, 7).samples);
}

TEST_CASE("makeDataset checks size and finiteness") {
  CHECK_THROWS_AS(makeDataset(Matrix::Zero(3, 1), DataSource::File), ArgumentError);
  Matrix bad = Matrix::Zero(3, 3);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(makeDataset(bad, DataSource::File), NumericError);
}

TEST_CASE("centerColumns removes the mean") {
  std::mt19937_64 gen(1);
  Matrix m = oracle::randomMatrix(4, 50, gen);
  m.colwise() += Vector::Constant(4, 3.0);
  const auto c = centerColumns(makeDataset(m, DataSource::File));
  CHECK(c.centered);
  CHECK(c.samples.rowwise().mean().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dataset files round trip") {
  const auto dir = oracle::scratchDir("dataset");
  const auto spec = makeSpikedModel(5, vec({2, 1}), LatentDistribution::Gaussian, 1);
  const auto x = sampleClean(spec, 12, 2);
  saveDataset(x, dir / "x.ldmx");
  const auto back = loadDataset(dir / "x.ldmx");
  CHECK(back.samples == x.samples);
  CHECK((back.source == DataSource::File));
}
