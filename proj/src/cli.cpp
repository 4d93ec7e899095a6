#include <CLI11.hpp>

#include <ostream>

#include "lindiff/harness.hpp"

namespace lindiff {

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear diffusion experiments: PCA denoiser chains on spiked covariance data",
               "lindiff"};
  std::string experiment;
  std::string configPath;
  std::uint64_t seed = 0;
  int steps = 0;
  Eigen::Index r = 0, n = 0, d = 0, trials = 0, samples = 0;
  unsigned threads = 1;
  double scale = 0;
  std::string outDir, latent, scheduleKind, dataPath, matching;
  std::vector<double> lambdas;
  bool emitSvgFlag = false, noInject = false, center = false, population = false;

  app.add_option("experiment", experiment,
                 "angles | dataset-size | spectrum | basis-corr | generate | power-iter")
      ->required();
  app.add_option("--config", configPath, "JSON config or a previous run's manifest.json");
  auto* seedOpt = app.add_option("--seed", seed, "master seed (required)");
  auto* stepsOpt = app.add_option("--T", steps, "number of diffusion steps");
  auto* rOpt = app.add_option("--r", r, "PCA components per denoiser");
  auto* nOpt = app.add_option("--n", n, "training set size");
  auto* dOpt = app.add_option("--d", d, "ambient dimension");
  auto* trialsOpt = app.add_option("--trials", trials, "Monte Carlo trials");
  auto* outOpt = app.add_option("--out", outDir, "output directory");
  app.add_flag("--emit-svg", emitSvgFlag, "also write SVG plots");
  app.add_flag("--no-inject", noInject, "generate without injected noise");
  auto* latentOpt = app.add_option("--latent", latent, "gaussian | rademacher | uniform");
  auto* threadsOpt = app.add_option("--threads", threads, "worker threads for Monte Carlo trials");
  auto* scaleOpt = app.add_option("--scale", scale, "schedule scale");
  auto* schedOpt = app.add_option("--schedule", scheduleKind, "constant | linear");
  auto* samplesOpt = app.add_option("--samples", samples, "generated samples");
  auto* dataOpt = app.add_option("--data", dataPath, "dataset file (LDMX or CSV, columns are samples)");
  auto* lambdaOpt = app.add_option("--lambdas", lambdas, "spike strengths, descending");
  auto* matchOpt = app.add_option("--matching", matching, "index | greedy");
  app.add_flag("--center", center, "mean-center the training data");
  app.add_flag("--population", population, "use population covariances (angles only)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lindiff: " << e.what() << '\n';
    return 2;
  }

  try {
    ExperimentConfig cfg = configPath.empty() ? ExperimentConfig{} : loadConfig(configPath);
    cfg.experiment = parseExperiment(experiment);
    if (seedOpt->count()) cfg.seed = seed;
    if (stepsOpt->count()) cfg.steps = steps;
    if (rOpt->count()) cfg.r = r;
    if (nOpt->count()) cfg.n = n;
    if (dOpt->count()) cfg.d = d;
    if (trialsOpt->count()) cfg.trials = trials;
    if (outOpt->count()) cfg.outputDir = outDir;
    if (emitSvgFlag) cfg.emitSvg = true;
    if (noInject) cfg.inject = false;
    if (latentOpt->count()) {
      try {
        cfg.latent = parseLatent(latent);
      } catch (const ArgumentError&) {
        throw ConfigError("latent: unknown distribution '" + latent + "'");
      }
    }
    if (threadsOpt->count()) cfg.threads = threads;
    if (scaleOpt->count()) cfg.scale = scale;
    if (schedOpt->count()) cfg.scheduleKind = scheduleKind;
    if (samplesOpt->count()) cfg.samples = samples;
    if (dataOpt->count()) cfg.data = dataPath;
    if (lambdaOpt->count()) cfg.lambdas = lambdas;
    if (matchOpt->count()) cfg.matching = matching;
    if (center) cfg.center = true;
    if (population) cfg.population = true;

    const auto result = run(cfg);
    for (const auto& f : result.files) out << (result.outputDir / f).string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "lindiff: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "lindiff: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace lindiff
