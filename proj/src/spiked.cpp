#include "lindiff/spiked.hpp"

#include <cmath>
#include <random>

#include "lindiff/matrix_io.hpp"
#include "lindiff/rng.hpp"

namespace lindiff {

LatentDistribution parseLatent(std::string_view name) {
  if (name == "gaussian") return LatentDistribution::Gaussian;
  if (name == "rademacher") return LatentDistribution::Rademacher;
  if (name == "uniform") return LatentDistribution::Uniform;
  throw ArgumentError("unknown latent distribution '" + std::string(name) + "'");
}

std::string_view toString(LatentDistribution latent) {
  switch (latent) {
    case LatentDistribution::Gaussian: return "gaussian";
    case LatentDistribution::Rademacher: return "rademacher";
    case LatentDistribution::Uniform: return "uniform";
  }
  return "gaussian";
}

Matrix SpikedModelSpec::populationCovariance(double sigmaBar) const {
  Matrix cov = basis * lambdas.array().square().matrix().asDiagonal() * basis.transpose();
  cov.diagonal().array() += sigmaBar * sigmaBar;
  return cov;
}

void SpikedModelSpec::validate() const {
  if (rank() < 1) throw DimensionError("spiked model: rank must be >= 1");
  if (basis.cols() != rank())
    throw DimensionError("spiked model: basis has " + std::to_string(basis.cols()) +
                         " columns for " + std::to_string(rank()) + " eigenvalues");
  if (rank() > dim())
    throw DimensionError("spiked model: rank " + std::to_string(rank()) + " exceeds dimension " +
                         std::to_string(dim()));
  for (Eigen::Index i = 0; i < rank(); ++i) {
    if (!(lambdas(i) > 0)) throw ArgumentError("spiked model: lambdas must be > 0");
    if (i > 0 && !(lambdas(i) < lambdas(i - 1)))
      throw ArgumentError("spiked model: lambdas must be strictly descending");
  }
  const Matrix gramErr = basis.transpose() * basis - Matrix::Identity(rank(), rank());
  if (gramErr.norm() > 1e-10) throw ArgumentError("spiked model: basis is not orthonormal");
}

SpikedModelSpec makeSpikedModel(Eigen::Index d, const Vector& lambdas, LatentDistribution latent,
                                std::uint64_t seed) {
  SpikedModelSpec spec;
  spec.lambdas = lambdas;
  spec.latent = latent;
  if (lambdas.size() > d)
    throw DimensionError("spiked model: rank " + std::to_string(lambdas.size()) +
                         " exceeds dimension " + std::to_string(d));
  spec.basis = randomOrthonormalBasis(d, lambdas.size(), seed);
  spec.validate();
  return spec;
}

Dataset makeDataset(Matrix samples, DataSource source) {
  if (samples.cols() < 2) throw ArgumentError("dataset: need at least 2 samples");
  if (samples.rows() < 1) throw DimensionError("dataset: dimension must be >= 1");
  if (!samples.allFinite()) throw NumericError("dataset: non-finite entries");
  return Dataset{std::move(samples), source, false};
}

Matrix randomOrthonormalBasis(Eigen::Index d, Eigen::Index r, std::uint64_t seed) {
  if (r < 1 || d < 1) throw DimensionError("randomOrthonormalBasis: d and r must be >= 1");
  if (r > d)
    throw DimensionError("randomOrthonormalBasis: r = " + std::to_string(r) + " > d = " +
                         std::to_string(d));
  Matrix g(d, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    auto engine = makeStream(seed, StreamTag::Basis, static_cast<std::uint64_t>(j));
    fillGaussian(g.col(j), engine);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, r);
  // Make R's diagonal positive so Q is the Gram-Schmidt basis of g.
  const Matrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < r; ++j)
    if (packed(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Dataset sampleClean(const SpikedModelSpec& spec, Eigen::Index n, std::uint64_t seed) {
  spec.validate();
  if (n < 2) throw ArgumentError("sampleClean: n must be >= 2");
  const Eigen::Index r = spec.rank();
  Matrix latents(r, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto engine = makeStream(seed, StreamTag::Latent, static_cast<std::uint64_t>(j));
    switch (spec.latent) {
      case LatentDistribution::Gaussian:
        fillGaussian(latents.col(j), engine);
        break;
      case LatentDistribution::Rademacher: {
        std::bernoulli_distribution coin(0.5);
        for (Eigen::Index i = 0; i < r; ++i) latents(i, j) = coin(engine) ? 1.0 : -1.0;
        break;
      }
      case LatentDistribution::Uniform: {
        const double half = std::sqrt(3.0);
        std::uniform_real_distribution<double> uni(-half, half);
        for (Eigen::Index i = 0; i < r; ++i) latents(i, j) = uni(engine);
        break;
      }
    }
  }
  Matrix samples = spec.basis * (spec.lambdas.asDiagonal() * latents);
  return makeDataset(std::move(samples), DataSource::Synthetic);
}

Dataset addNoise(const Dataset& x, double sigmaBar, std::uint64_t seed, std::uint64_t stream) {
  if (!(sigmaBar >= 0)) throw ArgumentError("addNoise: sigma_bar must be >= 0");
  Dataset out = x;
  if (sigmaBar == 0) return out;
  Vector column(x.dim());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    auto engine = makeStream(seed, StreamTag::Noise, static_cast<std::uint64_t>(j), stream);
    fillGaussian(column, engine, sigmaBar);
    out.samples.col(j) += column;
  }
  return out;
}

Dataset centerColumns(const Dataset& x) {
  Dataset out = x;
  const Vector mean = x.samples.rowwise().mean();
  out.samples.colwise() -= mean;
  out.centered = true;
  return out;
}

Dataset loadDataset(const std::filesystem::path& path) {
  return makeDataset(readMatrix(path), DataSource::File);
}

void saveDataset(const Dataset& x, const std::filesystem::path& path) {
  writeMatrix(x.samples, path);
}

}  // namespace lindiff
