#pragma once

// Ground-truth spiked covariance model and training datasets drawn from it.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "lindiff/matcore.hpp"

namespace lindiff {

enum class LatentDistribution { Gaussian, Rademacher, Uniform };

LatentDistribution parseLatent(std::string_view name);
std::string_view toString(LatentDistribution latent);

/// Population model x = sum_i lambda_i z_i u_i with zero-mean, unit-variance
/// latents z_i, so E x x^T = sum_i lambda_i^2 u_i u_i^T.
struct SpikedModelSpec {
  Vector lambdas;  ///< strictly positive, strictly descending
  Matrix basis;    ///< d x r, orthonormal columns u_i
  LatentDistribution latent = LatentDistribution::Gaussian;

  Eigen::Index dim() const { return basis.rows(); }
  Eigen::Index rank() const { return lambdas.size(); }

  /// Sigma_0 + sigmaBar^2 I
  Matrix populationCovariance(double sigmaBar = 0.0) const;

  /// Throws ArgumentError / DimensionError when an invariant is violated.
  void validate() const;
};

/// Spec with a random orthonormal basis drawn from `seed`.
SpikedModelSpec makeSpikedModel(Eigen::Index d, const Vector& lambdas,
                                LatentDistribution latent, std::uint64_t seed);

enum class DataSource { Synthetic, File };

/// Samples are the columns of a d x n matrix.
struct Dataset {
  Matrix samples;
  DataSource source = DataSource::Synthetic;
  bool centered = false;

  Eigen::Index dim() const { return samples.rows(); }
  Eigen::Index size() const { return samples.cols(); }
};

/// Wraps a matrix as a dataset, checking n >= 2 and finiteness.
Dataset makeDataset(Matrix samples, DataSource source);

/// d x r matrix with orthonormal columns (Gaussian matrix then Householder QR).
Matrix randomOrthonormalBasis(Eigen::Index d, Eigen::Index r, std::uint64_t seed);

/// n clean samples; column j uses the latent stream keyed by (seed, j).
Dataset sampleClean(const SpikedModelSpec& spec, Eigen::Index n, std::uint64_t seed);

/// Adds independent N(0, sigmaBar^2 I) noise to every column. Column j of
/// stream `stream` draws from the key (seed, stream, j).
Dataset addNoise(const Dataset& x, double sigmaBar, std::uint64_t seed, std::uint64_t stream = 0);

/// Subtracts the sample mean from every column.
Dataset centerColumns(const Dataset& x);

Dataset loadDataset(const std::filesystem::path& path);
void saveDataset(const Dataset& x, const std::filesystem::path& path);

}  // namespace lindiff
