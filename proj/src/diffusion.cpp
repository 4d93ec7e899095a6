#include "lindiff/diffusion.hpp"

#include <string>

#include "lindiff/parallel.hpp"
#include "lindiff/rng.hpp"

namespace lindiff {
namespace {

void requireTrained(const DenoiserChain& chain) {
  if (chain.denoisers.empty()) throw ArgumentError("chain has no denoisers");
}

// Adds N(0, stddev^2) to every column, column j keyed by (seed, step, j).
void addStepNoise(Matrix& x, double stddev, std::uint64_t seed, int step) {
  if (stddev == 0) return;
  Vector column(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    auto engine = makeStream(seed, StreamTag::TrainNoise, static_cast<std::uint64_t>(j),
                             static_cast<std::uint64_t>(step));
    fillGaussian(column, engine, stddev);
    x.col(j) += column;
  }
}

}  // namespace

PcaDenoiser fitDenoiser(const Matrix& noisy, int t, double sigmaBar, Eigen::Index r) {
  if (r < 1 || r > noisy.rows() || r > noisy.cols())
    throw DimensionError("fitDenoiser: r = " + std::to_string(r) + " exceeds min(d, n) = " +
                         std::to_string(std::min(noisy.rows(), noisy.cols())));
  const auto eig = symEigen(gram(noisy));
  PcaDenoiser out;
  out.t = t;
  out.sigmaBar = sigmaBar;
  out.basis = leadingBasis(eig, r);
  out.eigenvalues = eig.eigenvalues.head(r);
  return out;
}

DenoiserChain trainChain(const Dataset& x0, const NoiseSchedule& schedule, Eigen::Index r,
                         std::uint64_t seed, const TrainOptions& options) {
  const Eigen::Index d = x0.dim();
  const Eigen::Index n = x0.size();
  if (r < 1 || r > std::min(d, n))
    throw DimensionError("trainChain: r = " + std::to_string(r) + " exceeds min(d, n) = " +
                         std::to_string(std::min(d, n)));
  if (schedule.sigmas.size() < 1) throw ArgumentError("trainChain: empty schedule");

  DenoiserChain chain;
  chain.schedule = schedule;
  chain.components = r;
  chain.trainSeed = seed;
  chain.dim = d;
  chain.samples = n;
  chain.coupling = options.coupling;
  const int steps = schedule.steps();
  chain.denoisers.resize(static_cast<std::size_t>(steps + 1));

  if (options.coupling == NoiseCoupling::Independent) {
    parallelFor(chain.denoisers.size(), options.threads, [&](std::size_t i) {
      const int t = static_cast<int>(i);
      const double level = schedule.cumulative(t);
      Matrix noisy = x0.samples;
      addStepNoise(noisy, level, seed, t);
      chain.denoisers[i] = fitDenoiser(noisy, t, level, r);
    });
  } else {
    // The path is sequential; only one noisy copy is alive at a time.
    Matrix noisy = x0.samples;
    for (int t = 0; t <= steps; ++t) {
      addStepNoise(noisy, schedule.sigmas(t), seed, t);
      chain.denoisers[static_cast<std::size_t>(t)] =
          fitDenoiser(noisy, t, schedule.cumulative(t), r);
    }
  }
  return chain;
}

DenoiserChain populationChain(const SpikedModelSpec& spec, const NoiseSchedule& schedule,
                              Eigen::Index r) {
  spec.validate();
  if (r < 1 || r > spec.dim()) throw DimensionError("populationChain: r outside [1, d]");
  DenoiserChain chain;
  chain.schedule = schedule;
  chain.components = r;
  chain.dim = spec.dim();
  for (int t = 0; t <= schedule.steps(); ++t) {
    const double level = schedule.cumulative(t);
    const auto eig = symEigen(spec.populationCovariance(level));
    chain.denoisers.push_back(
        PcaDenoiser{t, level, leadingBasis(eig, r), eig.eigenvalues.head(r)});
  }
  return chain;
}

Matrix generateDeterministic(const DenoiserChain& chain, const Matrix& xi) {
  requireTrained(chain);
  if (xi.rows() != chain.dim)
    throw DimensionError("generateDeterministic: xi has dimension " + std::to_string(xi.rows()) +
                         ", chain has " + std::to_string(chain.dim));
  Matrix y = xi;
  for (int t = chain.steps(); t >= 0; --t) y = chain.denoisers[static_cast<std::size_t>(t)].apply(y);
  return y;
}

Matrix startNoise(Eigen::Index d, Eigen::Index count, int steps, std::uint64_t seed,
                  double scale) {
  Matrix xi(d, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    auto engine = makeStream(seed, StreamTag::Inject, static_cast<std::uint64_t>(j),
                             static_cast<std::uint64_t>(steps));
    fillGaussian(xi.col(j), engine, scale);
  }
  return xi;
}

Matrix generateWithNoise(const DenoiserChain& chain, const Vector& injection, Eigen::Index count,
                         std::uint64_t seed) {
  requireTrained(chain);
  const int steps = chain.steps();
  if (injection.size() != steps + 1)
    throw DimensionError("generateWithNoise: need " + std::to_string(steps + 1) +
                         " injection magnitudes, got " + std::to_string(injection.size()));
  for (Eigen::Index t = 0; t < injection.size(); ++t)
    if (!(injection(t) >= 0)) throw ArgumentError("generateWithNoise: e_t must be >= 0");
  if (count < 1) throw ArgumentError("generateWithNoise: need at least one sample");

  const Eigen::Index d = chain.dim;
  Matrix y = startNoise(d, count, steps, seed, injection(steps));
  y = chain.denoisers[static_cast<std::size_t>(steps)].apply(y);
  for (int t = steps - 1; t >= 0; --t) {
    if (injection(t) > 0) y += startNoise(d, count, t, seed, injection(t));
    y = chain.denoisers[static_cast<std::size_t>(t)].apply(y);
  }
  return y;
}

Matrix chainOperator(const DenoiserChain& chain, std::optional<int> tStop) {
  requireTrained(chain);
  const int last = tStop.value_or(chain.steps());
  if (last < 0 || last > chain.steps())
    throw ArgumentError("chainOperator: t_stop = " + std::to_string(last) + " outside [0, " +
                        std::to_string(chain.steps()) + "]");
  Matrix op = chain.denoisers.front().projection();
  for (int t = 1; t <= last; ++t) op = op * chain.denoisers[static_cast<std::size_t>(t)].projection();
  return op;
}

}  // namespace lindiff
