#include "lindiff/analysis.hpp"

#include <algorithm>
#include <string>

#include "lindiff/parallel.hpp"

namespace lindiff {
namespace {

std::vector<Eigen::Index> resolveIndices(const std::vector<Eigen::Index>& requested,
                                         Eigen::Index available) {
  std::vector<Eigen::Index> out = requested;
  if (out.empty())
    for (Eigen::Index i = 0; i < available; ++i) out.push_back(i);
  for (const auto i : out)
    if (i < 0 || i >= available)
      throw DimensionError("angle profile: component index " + std::to_string(i) +
                           " outside [0, " + std::to_string(available) + ")");
  return out;
}

AngleProfile aggregate(const std::vector<Matrix>& perTrial, std::vector<Eigen::Index> indices,
                       const NoiseSchedule& schedule) {
  AngleProfile out;
  out.indices = std::move(indices);
  out.noiseLevels.assign(schedule.cumulative.data(),
                         schedule.cumulative.data() + schedule.cumulative.size());
  out.trials = static_cast<Eigen::Index>(perTrial.size());
  const Eigen::Index rows = perTrial.front().rows();
  const Eigen::Index cols = perTrial.front().cols();
  out.sinTheta.resize(rows, cols);
  out.stderror.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index t = 0; t < cols; ++t) {
      MeanAccumulator<double> acc;
      for (const auto& trial : perTrial) acc.add(trial(i, t));
      out.sinTheta(i, t) = std::clamp(acc.mean(), 0.0, 1.0);
      out.stderror(i, t) = acc.stderror();
    }
  }
  return out;
}

}  // namespace

std::vector<Eigen::Index> matchComponents(const Matrix& learned, const Matrix& reference,
                                          ComponentMatching matching) {
  if (learned.rows() != reference.rows())
    throw DimensionError("matchComponents: bases live in different dimensions");
  const Eigen::Index k = reference.cols();
  if (k > learned.cols())
    throw DimensionError("matchComponents: more reference components than learned ones");
  std::vector<Eigen::Index> out(static_cast<std::size_t>(k));
  if (matching == ComponentMatching::ByIndex) {
    for (Eigen::Index i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
  }
  const Matrix corr = (reference.transpose() * learned).cwiseAbs();
  std::vector<bool> used(static_cast<std::size_t>(learned.cols()), false);
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < learned.cols(); ++j)
      if (!used[static_cast<std::size_t>(j)] && (best < 0 || corr(i, j) > corr(i, best))) best = j;
    used[static_cast<std::size_t>(best)] = true;
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

Matrix chainAngles(const DenoiserChain& chain, const Matrix& reference,
                   const std::vector<Eigen::Index>& indices, ComponentMatching matching) {
  Matrix out(static_cast<Eigen::Index>(indices.size()),
             static_cast<Eigen::Index>(chain.denoisers.size()));
  Matrix picked(reference.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t a = 0; a < indices.size(); ++a)
    picked.col(static_cast<Eigen::Index>(a)) = reference.col(indices[a]);
  for (std::size_t t = 0; t < chain.denoisers.size(); ++t) {
    const Matrix& basis = chain.denoisers[t].basis;
    std::vector<Eigen::Index> match;
    if (matching == ComponentMatching::ByIndex)
      match = indices;
    else
      match = matchComponents(basis, picked, matching);
    for (std::size_t a = 0; a < indices.size(); ++a) {
      if (match[a] >= basis.cols())
        throw DimensionError("chainAngles: index " + std::to_string(match[a]) +
                             " exceeds chain rank");
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t)) =
          sinTheta(basis.col(match[a]), picked.col(static_cast<Eigen::Index>(a)));
    }
  }
  return out;
}

AngleProfile angleProfile(const SpikedModelSpec& spec, const NoiseSchedule& schedule,
                          Eigen::Index n, Eigen::Index r, Eigen::Index trials, std::uint64_t seed,
                          const AngleProfileOptions& options) {
  spec.validate();
  if (trials < 1) throw ArgumentError("angleProfile: trials must be >= 1");
  auto indices = resolveIndices(options.indices, std::min(r, spec.rank()));

  if (options.population) {
    const auto chain = populationChain(spec, schedule, r);
    std::vector<Matrix> single{chainAngles(chain, spec.basis, indices, options.matching)};
    return aggregate(single, std::move(indices), schedule);
  }

  std::vector<Matrix> perTrial(static_cast<std::size_t>(trials));
  parallelFor(perTrial.size(), options.threads, [&](std::size_t k) {
    const auto trialSeed = deriveSeed(seed, StreamTag::Trial, k);
    auto data = sampleClean(spec, n, trialSeed);
    if (options.center) data = centerColumns(data);
    const auto chain = trainChain(data, schedule, r, trialSeed, {options.coupling, 1});
    perTrial[k] = chainAngles(chain, spec.basis, indices, options.matching);
  });
  return aggregate(perTrial, std::move(indices), schedule);
}

AngleProfile angleProfile(const Dataset& data, const Matrix& reference,
                          const NoiseSchedule& schedule, Eigen::Index r, Eigen::Index trials,
                          std::uint64_t seed, const AngleProfileOptions& options) {
  if (trials < 1) throw ArgumentError("angleProfile: trials must be >= 1");
  if (reference.rows() != data.dim())
    throw DimensionError("angleProfile: reference basis has the wrong dimension");
  auto indices = resolveIndices(options.indices, std::min(r, reference.cols()));
  std::vector<Matrix> perTrial(static_cast<std::size_t>(trials));
  parallelFor(perTrial.size(), options.threads, [&](std::size_t k) {
    const auto trialSeed = deriveSeed(seed, StreamTag::Trial, k);
    const auto chain = trainChain(data, schedule, r, trialSeed, {options.coupling, 1});
    perTrial[k] = chainAngles(chain, reference, indices, options.matching);
  });
  return aggregate(perTrial, std::move(indices), schedule);
}

std::vector<AngleIncrement> angleIncrements(const AngleProfile& profile, const Vector& lambdas,
                                            const NoiseSchedule& schedule, Eigen::Index d,
                                            Eigen::Index n) {
  std::vector<AngleIncrement> out;
  const Eigen::Index levels = profile.sinTheta.cols();
  for (std::size_t a = 0; a < profile.indices.size(); ++a) {
    const Eigen::Index i = profile.indices[a];
    const double lambda = i < lambdas.size() ? lambdas(i) : 0.0;
    for (Eigen::Index t = 0; t + 1 < levels; ++t) {
      const double now = std::asin(std::min(1.0, profile.sinTheta(Eigen::Index(a), t)));
      const double next = std::asin(std::min(1.0, profile.sinTheta(Eigen::Index(a), t + 1)));
      const double sigma = schedule.sigmas(t + 1);
      const double predicted = (lambda > 0 && n > 0)
                                   ? sigma * sigma * double(d) / (lambda * lambda * double(n))
                                   : 0.0;
      out.push_back({i, static_cast<int>(t), next - now, predicted});
    }
  }
  return out;
}

std::vector<BasisCorrelation> basisCorrelations(const DenoiserChain& chain) {
  if (chain.denoisers.size() < 2)
    throw ArgumentError("basisCorrelations: chain needs at least two denoisers");
  std::vector<BasisCorrelation> out;
  out.reserve(chain.denoisers.size() - 1);
  for (std::size_t t = 0; t + 1 < chain.denoisers.size(); ++t) {
    BasisCorrelation bc;
    bc.t = static_cast<int>(t);
    bc.matrix = chain.denoisers[t].basis.transpose() * chain.denoisers[t + 1].basis;
    bc.partial = out.empty() ? bc.matrix : Matrix(out.back().partial * bc.matrix);
    bc.diagonality = diagonalityScore(bc.matrix);
    bc.partialDiagonality = diagonalityScore(bc.partial);
    out.push_back(std::move(bc));
  }
  return out;
}

SpectrumReport spectrumReport(const Matrix& samples, const Matrix& reference) {
  if (samples.rows() != reference.rows())
    throw DimensionError("spectrumReport: samples have dimension " +
                         std::to_string(samples.rows()) + ", reference " +
                         std::to_string(reference.rows()));
  const Eigen::Index k = reference.cols();
  std::vector<MeanAccumulator<double>> acc(static_cast<std::size_t>(k));
  SpectrumReport out;
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    const double len = samples.col(j).norm();
    if (!(len > 0)) {
      ++out.skipped;
      continue;
    }
    const Vector coeffs = (reference.transpose() * samples.col(j)).cwiseAbs() / len;
    for (Eigen::Index i = 0; i < k; ++i) acc[static_cast<std::size_t>(i)].add(coeffs(i));
    ++out.samples;
  }
  if (out.samples == 0) throw EmptyReportError("spectrumReport: every sample has zero norm");
  out.c.resize(k);
  out.std.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.c(i) = std::min(1.0, acc[static_cast<std::size_t>(i)].mean());
    out.std(i) = acc[static_cast<std::size_t>(i)].stddev();
  }
  return out;
}

}  // namespace lindiff
