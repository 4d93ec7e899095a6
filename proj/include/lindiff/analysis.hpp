#pragma once

// Diagnostics of a trained denoiser chain and of generated samples.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lindiff/diffusion.hpp"
#include "lindiff/matcore.hpp"
#include "lindiff/rng.hpp"
#include "lindiff/summation.hpp"

namespace lindiff {

/// sqrt(max(0, 1 - <u, v>^2)) for unit vectors; invariant to the sign of
/// either argument.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar sinTheta(const Eigen::MatrixBase<DerivedA>& u,
                                   const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar tol(1e-8);
  if (std::abs(norm2(u) - Scalar(1)) > tol || std::abs(norm2(v) - Scalar(1)) > tol)
    throw ArgumentError("sinTheta: arguments must be unit vectors");
  const Scalar c = inner(u, v);
  return std::sqrt(std::max(Scalar(0), Scalar(1) - c * c));
}

/// Off-diagonal energy over diagonal energy of a square matrix.
template <typename Derived>
typename Derived::Scalar diagonalityScore(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Scalar diag = m.diagonal().squaredNorm();
  const Scalar off = m.squaredNorm() - diag;
  if (diag == Scalar(0))
    return off == Scalar(0) ? Scalar(0) : std::numeric_limits<Scalar>::infinity();
  return std::max(Scalar(0), off) / diag;
}

/// Power iteration v <- A v / ||A v|| from a seeded Gaussian start. A start
/// vector in the null space of A triggers a restart with the next stream (at
/// most five). The result has its largest-magnitude entry non-negative.
template <typename Derived>
VectorX<typename Derived::Scalar> powerIteration(const Eigen::MatrixBase<Derived>& a, int iters,
                                                 std::uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError("powerIteration: matrix must be square");
  if (iters < 1) throw ArgumentError("powerIteration: iters must be >= 1");
  const Scalar floor = Scalar(1e-14) * a.norm();
  constexpr int kMaxRestarts = 5;
  for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
    auto engine = makeStream(seed, StreamTag::PowerStart, static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> normal;
    VectorX<Scalar> v(a.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Scalar(normal(engine));
    v.normalize();
    bool collapsed = false;
    for (int k = 0; k < iters; ++k) {
      VectorX<Scalar> w = a * v;
      const Scalar len = w.norm();
      if (!(len > floor)) {
        collapsed = true;
        break;
      }
      v = w / len;
    }
    if (!collapsed) {
      canonicalizeSign(v);
      return v;
    }
  }
  throw NumericError("powerIteration: start vector had no overlap with the range after " +
                     std::to_string(kMaxRestarts) + " restarts");
}

/// (1/m) sum_j x_j x_j^T over the columns of `samples`.
template <typename Derived>
MatrixX<typename Derived::Scalar> generatedCovariance(const Eigen::MatrixBase<Derived>& samples) {
  return gram(samples);
}

/// |<v_lead, u0>| where v_lead is the leading eigenvector of the generated covariance.
template <typename DerivedS, typename DerivedU>
typename DerivedS::Scalar alignment(const Eigen::MatrixBase<DerivedS>& samples,
                                    const Eigen::MatrixBase<DerivedU>& u0) {
  if (u0.size() != samples.rows())
    throw DimensionError("alignment: reference has the wrong dimension");
  const auto eig = symEigen(generatedCovariance(samples));
  return std::abs(inner(eig.eigenvectors.col(0), u0));
}

enum class ComponentMatching {
  ByIndex,  ///< column i of the learned basis against reference column i
  Greedy,   ///< each reference column takes the unused learned column of max |correlation|
};

/// For each reference column, the learned column it is compared with.
std::vector<Eigen::Index> matchComponents(const Matrix& learned, const Matrix& reference,
                                          ComponentMatching matching);

/// sin(theta) of every reference column against its matched learned column,
/// one row per entry of `indices`, one column per denoiser in the chain.
Matrix chainAngles(const DenoiserChain& chain, const Matrix& reference,
                   const std::vector<Eigen::Index>& indices, ComponentMatching matching);

struct AngleProfile {
  std::vector<Eigen::Index> indices;
  std::vector<double> noiseLevels;
  Matrix sinTheta;  ///< [index][level] Monte Carlo mean
  Matrix stderror;  ///< matching standard errors
  Eigen::Index trials = 0;
};

struct AngleProfileOptions {
  ComponentMatching matching = ComponentMatching::ByIndex;
  NoiseCoupling coupling = NoiseCoupling::Independent;
  unsigned threads = 1;
  /// Use exact population covariances (n -> infinity) instead of samples.
  bool population = false;
  /// Mean-center every sampled training set before fitting.
  bool center = false;
  /// Component indices to report; empty means all of 0..min(r, rank)-1.
  std::vector<Eigen::Index> indices;
};

/// Monte Carlo mean of sin(theta) between U_t column i and the true u_i. Every
/// trial draws a fresh clean dataset and fresh training noise from seeds keyed
/// by (seed, trial); aggregation runs in trial order with compensated sums.
AngleProfile angleProfile(const SpikedModelSpec& spec, const NoiseSchedule& schedule,
                          Eigen::Index n, Eigen::Index r, Eigen::Index trials, std::uint64_t seed,
                          const AngleProfileOptions& options = {});

/// Same for a fixed dataset: each trial redraws only the training noise.
AngleProfile angleProfile(const Dataset& data, const Matrix& reference,
                          const NoiseSchedule& schedule, Eigen::Index r, Eigen::Index trials,
                          std::uint64_t seed, const AngleProfileOptions& options = {});

/// Measured angle increment between consecutive noise levels next to the
/// small-angle prediction sigma_{t+1}^2 d / (lambda_i^2 n).
struct AngleIncrement {
  Eigen::Index index = 0;
  int t = 0;
  double measured = 0;
  double predicted = 0;
};

std::vector<AngleIncrement> angleIncrements(const AngleProfile& profile, const Vector& lambdas,
                                            const NoiseSchedule& schedule, Eigen::Index d,
                                            Eigen::Index n);

struct BasisCorrelation {
  int t = 0;
  Matrix matrix;   ///< U_t^T U_{t+1}
  Matrix partial;  ///< prod_{s<=t} U_s^T U_{s+1}
  double diagonality = 0;
  double partialDiagonality = 0;
};

/// One entry per consecutive pair (t, t+1) of the chain.
std::vector<BasisCorrelation> basisCorrelations(const DenoiserChain& chain);

struct SpectrumReport {
  Vector c;    ///< mean |<u_i, x>| / ||x|| over samples
  Vector std;  ///< per-index standard deviation across samples
  Eigen::Index samples = 0;
  Eigen::Index skipped = 0;  ///< zero-norm columns left out
};

/// Presence coefficients of generated samples on the reference components.
SpectrumReport spectrumReport(const Matrix& samples, const Matrix& reference);
inline SpectrumReport spectrumReport(const Matrix& samples, const SpikedModelSpec& spec) {
  return spectrumReport(samples, spec.basis);
}

}  // namespace lindiff
