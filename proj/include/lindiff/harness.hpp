#pragma once

// Experiment orchestration behind the `lindiff` command line tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindiff/errors.hpp"
#include "lindiff/spiked.hpp"

namespace lindiff {

/// Invalid configuration; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Experiment { Angles, DatasetSize, Spectrum, BasisCorr, Generate, PowerIter };

Experiment parseExperiment(const std::string& name);
std::string toString(Experiment experiment);

/// Per-step sigma of the reference benchmark's constant schedule.
inline constexpr double kBenchStepSigma = 0.5;

struct ExperimentConfig {
  Experiment experiment = Experiment::Angles;

  // Model: either a synthetic spiked model or a dataset file.
  Eigen::Index d = 50;
  std::vector<double> lambdas{3.0, 2.0, 1.0};
  LatentDistribution latent = LatentDistribution::Gaussian;
  std::optional<std::string> data;
  bool center = false;

  // Noise schedule. `levels`, when set, replaces kind/T/scale by a custom
  // schedule through those cumulative levels.
  std::string scheduleKind = "constant";
  int steps = 65;
  std::optional<double> scale;
  std::vector<double> levels;

  std::optional<Eigen::Index> r;
  Eigen::Index n = 2000;
  Eigen::Index trials = 100;
  std::optional<std::uint64_t> seed;

  std::string outputDir = "lindiff-out";
  bool emitSvg = false;
  bool inject = true;
  unsigned threads = 1;

  std::vector<Eigen::Index> nValues{250, 1000, 4000};
  std::vector<int> tValues{5, 15, 65};
  std::vector<Eigen::Index> indices;
  Eigen::Index samples = 500;
  int powerIters = 200;
  std::string matching = "index";
  std::string coupling = "independent";
  bool population = false;

  /// Chain component count: `r` if set, else the model rank for synthetic data
  /// and min(30, d, n) for a dataset file.
  Eigen::Index components() const;
  /// Schedule scale for a run with `steps` steps. Constant schedules keep the
  /// per-step sigma fixed across T; linear ones keep sigma_bar_T fixed.
  double scaleFor(int steps) const;
};

/// Reference benchmark: d=50, lambda=(3,2,1), n=2000, constant schedule with
/// per-step sigma 0.5, T=65, seed 1.
ExperimentConfig theorem1Bench();

/// Accepts either a bare config object or a manifest with a "config" member.
ExperimentConfig configFromJson(const nlohmann::json& j);
nlohmann::json configToJson(const ExperimentConfig& config);
ExperimentConfig loadConfig(const std::filesystem::path& path);

/// Throws ConfigError naming the first invalid field.
void validate(const ExperimentConfig& config);

struct RunResult {
  std::filesystem::path outputDir;
  std::vector<std::string> files;  ///< relative to outputDir, in write order
};

/// Runs one experiment and writes manifest.json, CSV tables and optional SVG
/// and LDMX artifacts into config.outputDir.
RunResult run(const ExperimentConfig& config);

/// Command line front end. Returns the process exit status: 0 success,
/// 2 invalid configuration, 3 numeric or I/O failure.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lindiff
