#pragma once

// Per-noise-level PCA denoisers and the reverse-process samplers built from them.

#include <cstdint>
#include <optional>
#include <vector>

#include "lindiff/matcore.hpp"
#include "lindiff/schedule.hpp"
#include "lindiff/spiked.hpp"

namespace lindiff {

/// Rank-r projection onto the leading eigenvectors of the sample covariance of
/// the training set at noise level sigma_bar.
struct PcaDenoiser {
  int t = 0;
  double sigmaBar = 0;
  Matrix basis;       ///< d x r, orthonormal columns
  Vector eigenvalues; ///< leading r eigenvalues, descending

  Matrix projection() const { return basis * basis.transpose(); }

  /// P x = U (U^T x), column-wise for a matrix argument.
  template <typename Derived>
  Matrix apply(const Eigen::MatrixBase<Derived>& x) const {
    if (x.rows() != basis.rows())
      throw DimensionError("denoiser: input has " + std::to_string(x.rows()) +
                           " rows, expected " + std::to_string(basis.rows()));
    const Matrix coeffs = basis.transpose() * x;
    return basis * coeffs;
  }
};

enum class NoiseCoupling {
  Independent,  ///< fresh E_{sigma_bar_t} per step
  Coupled,      ///< one Brownian path, E_t = E_{t-1} + N(0, sigma_t^2)
};

struct DenoiserChain {
  std::vector<PcaDenoiser> denoisers;  ///< ordered by t = 0..T
  NoiseSchedule schedule;
  Eigen::Index components = 0;
  std::uint64_t trainSeed = 0;
  Eigen::Index dim = 0;
  Eigen::Index samples = 0;  ///< training set size n; 0 for population chains
  NoiseCoupling coupling = NoiseCoupling::Independent;

  int steps() const { return static_cast<int>(denoisers.size()) - 1; }
};

struct TrainOptions {
  NoiseCoupling coupling = NoiseCoupling::Independent;
  unsigned threads = 1;
};

/// Fits one denoiser: eigendecomposition of (1/n) X X^T, leading r columns.
PcaDenoiser fitDenoiser(const Matrix& noisy, int t, double sigmaBar, Eigen::Index r);

/// Trains denoisers t = 0..T on X_0 + E_{sigma_bar_t}. Noise for step t is keyed
/// by (seed, t), so the chain does not depend on the thread count.
DenoiserChain trainChain(const Dataset& x0, const NoiseSchedule& schedule, Eigen::Index r,
                         std::uint64_t seed, const TrainOptions& options = {});

/// Chain of exact population denoisers (n -> infinity): eigenvectors of
/// Sigma_0 + sigma_bar_t^2 I.
DenoiserChain populationChain(const SpikedModelSpec& spec, const NoiseSchedule& schedule,
                              Eigen::Index r);

/// x_g = P_0 P_1 ... P_T xi for every column of xi (P_T applied first).
Matrix generateDeterministic(const DenoiserChain& chain, const Matrix& xi);

/// The xi_T draws used by generateWithNoise for the same seed, scaled by `scale`.
Matrix startNoise(Eigen::Index d, Eigen::Index count, int steps, std::uint64_t seed,
                  double scale = 1.0);

/// x_g = sum_t (P_0 ... P_t) xi_t with xi_t ~ N(0, e_t^2 I), evaluated as
/// y <- P_t (y + xi_t) from t = T down to 0 starting at y = 0.
Matrix generateWithNoise(const DenoiserChain& chain, const Vector& injection,
                         Eigen::Index count, std::uint64_t seed);

/// Explicit operator P_0 P_1 ... P_tStop (the full chain when tStop is empty).
Matrix chainOperator(const DenoiserChain& chain, std::optional<int> tStop = std::nullopt);

}  // namespace lindiff
