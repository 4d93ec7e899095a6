#include "lindiff/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lindiff/analysis.hpp"
#include "lindiff/chain_io.hpp"
#include "lindiff/matrix_io.hpp"
#include "lindiff/rng.hpp"
#include "lindiff/schedule.hpp"
#include "lindiff/svg.hpp"

namespace lindiff {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr double kDefaultLinearScale = 4.0;

// Writes a CSV table with shortest round-trip numbers.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  CsvTable& row() {
    rows_.emplace_back();
    return *this;
  }
  CsvTable& cell(double v) {
    rows_.back().push_back(formatDouble(v));
    return *this;
  }
  CsvTable& cell(long long v) {
    rows_.back().push_back(std::to_string(v));
    return *this;
  }
  CsvTable& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(long v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(const std::string& v) {
    rows_.back().push_back(v);
    return *this;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot write " + path.string());
    for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
      os << '\n';
    }
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Everything an experiment needs about its training data.
struct Workbench {
  std::optional<SpikedModelSpec> spec;
  Dataset clean;
  Matrix reference;  // d x k reference components u_i
  Vector lambdas;    // lambda_i of the reference components
  Eigen::Index components = 0;
  std::uint64_t dataSeed = 0;
  std::uint64_t trainSeed = 0;
  std::uint64_t generateSeed = 0;
};

class Runner {
 public:
  explicit Runner(const ExperimentConfig& config) : cfg_(config) {
    result_.outputDir = cfg_.outputDir;
    std::filesystem::create_directories(result_.outputDir);
    seed_ = *cfg_.seed;
  }

  RunResult execute() {
    bench_ = buildWorkbench();
    switch (cfg_.experiment) {
      case Experiment::Angles: angles(); break;
      case Experiment::DatasetSize: datasetSize(); break;
      case Experiment::Spectrum: spectrum(); break;
      case Experiment::BasisCorr: basisCorr(); break;
      case Experiment::Generate: generate(); break;
      case Experiment::PowerIter: powerIter(); break;
    }
    writeManifest();
    return result_;
  }

 private:
  std::filesystem::path file(const std::string& name) {
    result_.files.push_back(name);
    return result_.outputDir / name;
  }

  Workbench buildWorkbench() const {
    Workbench wb;
    wb.dataSeed = deriveSeed(seed_, StreamTag::Latent, 0);
    wb.trainSeed = deriveSeed(seed_, StreamTag::TrainNoise, 0);
    wb.generateSeed = deriveSeed(seed_, StreamTag::Inject, 0);
    if (cfg_.data) {
      wb.clean = loadDataset(*cfg_.data);
      if (cfg_.center) wb.clean = centerColumns(wb.clean);
      const auto eig = symEigen(gram(wb.clean.samples));
      wb.components = cfg_.r ? *cfg_.r
                             : std::min<Eigen::Index>({30, wb.clean.dim(), wb.clean.size()});
      const Eigen::Index k = std::min(wb.components, wb.clean.dim());
      wb.reference = leadingBasis(eig, k);
      wb.lambdas = eig.eigenvalues.head(k).cwiseMax(0.0).cwiseSqrt();
    } else {
      const Vector lambdas = Eigen::Map<const Vector>(cfg_.lambdas.data(),
                                                      static_cast<Eigen::Index>(cfg_.lambdas.size()));
      wb.spec = makeSpikedModel(cfg_.d, lambdas, cfg_.latent, seed_);
      wb.clean = sampleClean(*wb.spec, cfg_.n, wb.dataSeed);
      if (cfg_.center) wb.clean = centerColumns(wb.clean);
      wb.reference = wb.spec->basis;
      wb.lambdas = lambdas;
      wb.components = cfg_.components();
    }
    return wb;
  }

  NoiseSchedule schedule(int steps) const {
    if (!cfg_.levels.empty())
      return scheduleFromLevels(Eigen::Map<const Vector>(cfg_.levels.data(),
                                                         static_cast<Eigen::Index>(cfg_.levels.size())));
    return makeSchedule(cfg_.scheduleKind, steps, cfg_.scaleFor(steps));
  }

  AngleProfileOptions profileOptions() const {
    AngleProfileOptions opt;
    opt.matching = cfg_.matching == "greedy" ? ComponentMatching::Greedy : ComponentMatching::ByIndex;
    opt.coupling = cfg_.coupling == "coupled" ? NoiseCoupling::Coupled : NoiseCoupling::Independent;
    opt.threads = cfg_.threads;
    opt.population = cfg_.population;
    opt.center = cfg_.center;
    opt.indices = cfg_.indices;
    return opt;
  }

  DenoiserChain chain(int steps) const {
    TrainOptions opt;
    opt.coupling = cfg_.coupling == "coupled" ? NoiseCoupling::Coupled : NoiseCoupling::Independent;
    opt.threads = cfg_.threads;
    return trainChain(bench_.clean, schedule(steps), bench_.components, bench_.trainSeed, opt);
  }

  AngleProfile profile(Eigen::Index n, const NoiseSchedule& sched,
                       const AngleProfileOptions& opt) const {
    if (bench_.spec)
      return angleProfile(*bench_.spec, sched, n, bench_.components, cfg_.trials, seed_, opt);
    return angleProfile(bench_.clean, bench_.reference, sched, bench_.components, cfg_.trials,
                        seed_, opt);
  }

  void angles() {
    const auto sched = schedule(cfg_.steps);
    const auto prof = profile(cfg_.n, sched, profileOptions());
    CsvTable table({"index", "sigma_bar", "sin_theta", "stderr"});
    for (std::size_t a = 0; a < prof.indices.size(); ++a)
      for (std::size_t t = 0; t < prof.noiseLevels.size(); ++t)
        table.row()
            .cell(static_cast<long long>(prof.indices[a]))
            .cell(prof.noiseLevels[t])
            .cell(prof.sinTheta(Eigen::Index(a), Eigen::Index(t)))
            .cell(prof.stderror(Eigen::Index(a), Eigen::Index(t)));
    table.write(file("angles.csv"));

    const Eigen::Index nEff = cfg_.population ? 0 : bench_.clean.size();
    CsvTable inc({"index", "t", "measured_delta_theta", "predicted_delta_theta"});
    for (const auto& a : angleIncrements(prof, bench_.lambdas, sched, bench_.clean.dim(), nEff))
      inc.row().cell(static_cast<long long>(a.index)).cell(a.t).cell(a.measured).cell(a.predicted);
    inc.write(file("angle_increments.csv"));

    if (cfg_.emitSvg) {
      PlotTable plot;
      plot.title = "sin(theta) vs noise level";
      plot.xLabel = "sigma_bar";
      plot.yLabel = "sin(theta)";
      plot.x = prof.noiseLevels;
      plot.values = prof.sinTheta;
      for (auto i : prof.indices) plot.seriesNames.push_back("index " + std::to_string(i));
      emitSvg(plot, ChartKind::Lines, file("angles.svg"));
    }
  }

  void datasetSize() {
    if (!bench_.spec) throw ConfigError("data: dataset-size needs a synthetic model");
    const auto sched = schedule(cfg_.steps);
    auto opt = profileOptions();
    if (opt.indices.empty()) {
      const Eigen::Index avail = std::min(bench_.components, bench_.spec->rank());
      for (Eigen::Index i : {0, 5, 10})
        if (i < avail) opt.indices.push_back(i);
    }
    CsvTable table({"n", "index", "sigma_bar", "sin_theta", "stderr"});
    std::vector<AngleProfile> profiles;
    for (const auto n : cfg_.nValues) {
      profiles.push_back(profile(n, sched, opt));
      const auto& prof = profiles.back();
      for (std::size_t a = 0; a < prof.indices.size(); ++a)
        for (std::size_t t = 0; t < prof.noiseLevels.size(); ++t)
          table.row()
              .cell(static_cast<long long>(n))
              .cell(static_cast<long long>(prof.indices[a]))
              .cell(prof.noiseLevels[t])
              .cell(prof.sinTheta(Eigen::Index(a), Eigen::Index(t)))
              .cell(prof.stderror(Eigen::Index(a), Eigen::Index(t)));
    }
    table.write(file("dataset_size.csv"));

    if (cfg_.emitSvg) {
      for (std::size_t a = 0; a < opt.indices.size(); ++a) {
        PlotTable plot;
        plot.title = "sin(theta), index " + std::to_string(opt.indices[a]);
        plot.xLabel = "sigma_bar";
        plot.yLabel = "sin(theta)";
        plot.x = profiles.front().noiseLevels;
        plot.values.resize(static_cast<Eigen::Index>(profiles.size()),
                           static_cast<Eigen::Index>(plot.x.size()));
        for (std::size_t p = 0; p < profiles.size(); ++p) {
          plot.values.row(Eigen::Index(p)) = profiles[p].sinTheta.row(Eigen::Index(a));
          plot.seriesNames.push_back("n=" + std::to_string(cfg_.nValues[p]));
        }
        emitSvg(plot, ChartKind::Lines,
                file("dataset_size_index" + std::to_string(opt.indices[a]) + ".svg"));
      }
    }
  }

  void spectrum() {
    CsvTable table({"sampler", "T", "index", "c", "std"});
    PlotTable plot;
    plot.title = "presence coefficients of generated samples";
    plot.xLabel = "index";
    plot.yLabel = "c_i";
    const Eigen::Index k = bench_.reference.cols();
    for (Eigen::Index i = 0; i < k; ++i) plot.x.push_back(double(i));
    std::vector<Vector> series;
    auto record = [&](const std::string& sampler, int steps, const SpectrumReport& rep) {
      for (Eigen::Index i = 0; i < rep.c.size(); ++i)
        table.row().cell(sampler).cell(steps).cell(static_cast<long long>(i)).cell(rep.c(i)).cell(
            rep.std(i));
      series.push_back(rep.c);
      plot.seriesNames.push_back(sampler + " T=" + std::to_string(steps));
    };
    for (const int steps : cfg_.tValues) {
      const auto ch = chain(steps);
      const Matrix xi = startNoise(ch.dim, cfg_.samples, steps, bench_.generateSeed);
      record("deterministic", steps, spectrumReport(generateDeterministic(ch, xi), bench_.reference));
      if (cfg_.inject)
        record("injected", steps,
               spectrumReport(generateWithNoise(ch, defaultInjection(steps), cfg_.samples,
                                                bench_.generateSeed),
                              bench_.reference));
    }
    table.write(file("spectrum.csv"));
    if (cfg_.emitSvg) {
      plot.values.resize(static_cast<Eigen::Index>(series.size()), k);
      for (std::size_t s = 0; s < series.size(); ++s) plot.values.row(Eigen::Index(s)) = series[s];
      emitSvg(plot, ChartKind::Lines, file("spectrum.svg"));
    }
  }

  void basisCorr() {
    const auto ch = chain(cfg_.steps);
    const auto corr = basisCorrelations(ch);
    CsvTable entries({"t", "row", "col", "value", "partial"});
    CsvTable summary({"t", "diagonality", "partial_diagonality", "partial_00_energy"});
    for (const auto& bc : corr) {
      for (Eigen::Index i = 0; i < bc.matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < bc.matrix.cols(); ++j)
          entries.row()
              .cell(bc.t)
              .cell(static_cast<long long>(i))
              .cell(static_cast<long long>(j))
              .cell(bc.matrix(i, j))
              .cell(bc.partial(i, j));
      const double energy = bc.partial.squaredNorm();
      summary.row()
          .cell(bc.t)
          .cell(bc.diagonality)
          .cell(bc.partialDiagonality)
          .cell(energy > 0 ? bc.partial(0, 0) * bc.partial(0, 0) / energy : 0.0);
    }
    entries.write(file("basis_corr.csv"));
    summary.write(file("diagonality.csv"));

    if (cfg_.emitSvg) {
      const int last = static_cast<int>(corr.size()) - 1;
      std::vector<int> picks{0, last / 4, last / 2, last};
      picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
      for (const int t : picks) {
        const auto& bc = corr[static_cast<std::size_t>(t)];
        PlotTable m;
        m.title = "U_t^T U_{t+1}, t=" + std::to_string(t);
        m.xLabel = "index (t+1)";
        m.yLabel = "index (t)";
        m.values = bc.matrix;
        emitSvg(m, ChartKind::Heatmap, file("basis_corr_t" + std::to_string(t) + ".svg"));
        PlotTable p = m;
        p.title = "partial product, t=" + std::to_string(t);
        p.values = bc.partial;
        emitSvg(p, ChartKind::Heatmap, file("partial_t" + std::to_string(t) + ".svg"));
      }
    }
  }

  void generate() {
    const auto ch = chain(cfg_.steps);
    const Matrix samples =
        cfg_.inject ? generateWithNoise(ch, defaultInjection(ch.steps()), cfg_.samples,
                                        bench_.generateSeed)
                    : generateDeterministic(
                          ch, startNoise(ch.dim, cfg_.samples, ch.steps(), bench_.generateSeed));
    writeLdmx(samples, file("samples.ldmx"));
    saveChain(ch, result_.outputDir / "chain");
    result_.files.push_back("chain/chain.json");

    const auto rep = spectrumReport(samples, bench_.reference);
    CsvTable table({"index", "c", "std"});
    for (Eigen::Index i = 0; i < rep.c.size(); ++i)
      table.row().cell(static_cast<long long>(i)).cell(rep.c(i)).cell(rep.std(i));
    table.write(file("spectrum.csv"));

    CsvTable summary({"metric", "value"});
    summary.row().cell(std::string("samples")).cell(static_cast<long long>(rep.samples));
    summary.row().cell(std::string("skipped_zero_norm")).cell(static_cast<long long>(rep.skipped));
    if (rep.samples > 0 && samples.norm() > 0)
      summary.row().cell(std::string("alignment_u0")).cell(alignment(samples, bench_.reference.col(0)));
    summary.write(file("summary.csv"));

    if (cfg_.emitSvg) {
      PlotTable plot;
      plot.title = cfg_.inject ? "generated spectrum (injected noise)" : "generated spectrum";
      plot.xLabel = "index";
      plot.yLabel = "c_i";
      for (Eigen::Index i = 0; i < rep.c.size(); ++i) plot.x.push_back(double(i));
      plot.values = rep.c.transpose();
      plot.seriesNames = {"c_i"};
      emitSvg(plot, ChartKind::Lines, file("spectrum.svg"));
    }
  }

  void powerIter() {
    const Matrix cov = gram(bench_.clean.samples);
    const auto eig = symEigen(cov);
    const Vector lead = eig.eigenvectors.col(0);
    const Vector u0 = bench_.reference.col(0);
    const std::uint64_t piSeed = deriveSeed(seed_, StreamTag::PowerStart, 0);
    CsvTable table({"iters", "overlap_sym_eigen", "overlap_u0"});
    std::vector<int> iters;
    for (int k : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000})
      if (k < cfg_.powerIters) iters.push_back(k);
    iters.push_back(cfg_.powerIters);
    std::vector<double> xs;
    Matrix curves(2, static_cast<Eigen::Index>(iters.size()));
    for (std::size_t k = 0; k < iters.size(); ++k) {
      const Vector v = powerIteration(cov, iters[k], piSeed);
      const double a = std::abs(v.dot(lead));
      const double b = std::abs(v.dot(u0));
      table.row().cell(iters[k]).cell(a).cell(b);
      xs.push_back(double(iters[k]));
      curves(0, Eigen::Index(k)) = a;
      curves(1, Eigen::Index(k)) = b;
    }
    table.write(file("power_iteration.csv"));

    const auto ch = chain(cfg_.steps);
    const Matrix gen =
        generateDeterministic(ch, startNoise(ch.dim, cfg_.samples, ch.steps(), bench_.generateSeed));
    CsvTable summary({"metric", "value"});
    summary.row().cell(std::string("eigenvalue_0")).cell(eig.eigenvalues(0));
    summary.row().cell(std::string("eigenvalue_1")).cell(eig.eigenvalues(std::min<Eigen::Index>(1, eig.dim() - 1)));
    summary.row().cell(std::string("sym_eigen_overlap_u0")).cell(std::abs(lead.dot(u0)));
    summary.row().cell(std::string("generated_alignment_u0")).cell(alignment(gen, u0));
    summary.row().cell(std::string("generated_alignment_sym_eigen")).cell(alignment(gen, lead));
    summary.write(file("summary.csv"));

    if (cfg_.emitSvg) {
      PlotTable plot;
      plot.title = "power iteration overlap";
      plot.xLabel = "iterations";
      plot.yLabel = "|<v, u>|";
      plot.x = xs;
      plot.values = curves;
      plot.seriesNames = {"leading eigenvector", "true u0"};
      emitSvg(plot, ChartKind::Lines, file("power_iteration.svg"));
    }
  }

  void writeManifest() {
    json manifest;
    manifest["tool"] = "lindiff";
    manifest["version"] = kVersion;
    manifest["experiment"] = toString(cfg_.experiment);
    manifest["config"] = configToJson(cfg_);
    manifest["seeds"] = {{"master", seed_},
                         {"model_basis", seed_},
                         {"data", bench_.dataSeed},
                         {"train", bench_.trainSeed},
                         {"generate", bench_.generateSeed}};
    manifest["center"] = cfg_.center;
    manifest["components"] = bench_.components;
    manifest["data_source"] = cfg_.data ? "file" : "synthetic";
    manifest["outputs"] = result_.files;
    std::ofstream os(result_.outputDir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot write manifest.json");
    os << manifest.dump(2) << '\n';
    result_.files.push_back("manifest.json");
  }

  const ExperimentConfig& cfg_;
  std::uint64_t seed_ = 0;
  Workbench bench_;
  RunResult result_;
};

template <typename T>
void readField(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(key) + ": wrong type");
  }
}

template <typename T>
void readOptional(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  readField(j, key, value);
  out = value;
}

}  // namespace

Experiment parseExperiment(const std::string& name) {
  static const std::map<std::string, Experiment> names{
      {"angles", Experiment::Angles},         {"dataset-size", Experiment::DatasetSize},
      {"spectrum", Experiment::Spectrum},     {"basis-corr", Experiment::BasisCorr},
      {"generate", Experiment::Generate},     {"power-iter", Experiment::PowerIter}};
  const auto it = names.find(name);
  if (it == names.end()) throw ConfigError("experiment: unknown experiment '" + name + "'");
  return it->second;
}

std::string toString(Experiment experiment) {
  switch (experiment) {
    case Experiment::Angles: return "angles";
    case Experiment::DatasetSize: return "dataset-size";
    case Experiment::Spectrum: return "spectrum";
    case Experiment::BasisCorr: return "basis-corr";
    case Experiment::Generate: return "generate";
    case Experiment::PowerIter: return "power-iter";
  }
  return "angles";
}

Eigen::Index ExperimentConfig::components() const {
  if (r) return *r;
  if (data) return std::min<Eigen::Index>({30, d, n});
  return static_cast<Eigen::Index>(lambdas.size());
}

double ExperimentConfig::scaleFor(int runSteps) const {
  if (scheduleKind == "constant") {
    const double step = scale ? *scale / double(steps) : kBenchStepSigma;
    return step * double(runSteps);
  }
  return scale.value_or(kDefaultLinearScale);
}

ExperimentConfig theorem1Bench() {
  ExperimentConfig cfg;
  cfg.d = 50;
  cfg.lambdas = {3.0, 2.0, 1.0};
  cfg.n = 2000;
  cfg.scheduleKind = "constant";
  cfg.steps = 65;
  cfg.scale = kBenchStepSigma * 65;
  cfg.seed = 1;
  return cfg;
}

ExperimentConfig configFromJson(const json& root) {
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  const json& j = root.contains("config") ? root.at("config") : root;
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig cfg;
  if (j.contains("experiment")) {
    std::string name;
    readField(j, "experiment", name);
    cfg.experiment = parseExperiment(name);
  }
  readField(j, "d", cfg.d);
  readField(j, "lambdas", cfg.lambdas);
  if (j.contains("latent")) {
    std::string name;
    readField(j, "latent", name);
    try {
      cfg.latent = parseLatent(name);
    } catch (const ArgumentError&) {
      throw ConfigError("latent: unknown distribution '" + name + "'");
    }
  }
  readOptional(j, "data", cfg.data);
  readField(j, "center", cfg.center);
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    if (!s.is_object()) throw ConfigError("schedule: expected an object");
    readField(s, "kind", cfg.scheduleKind);
    readField(s, "T", cfg.steps);
    readOptional(s, "scale", cfg.scale);
    readField(s, "levels", cfg.levels);
  }
  readOptional(j, "r", cfg.r);
  readField(j, "n", cfg.n);
  readField(j, "trials", cfg.trials);
  readOptional(j, "seed", cfg.seed);
  readField(j, "output_dir", cfg.outputDir);
  readField(j, "emit_svg", cfg.emitSvg);
  readField(j, "inject", cfg.inject);
  readField(j, "threads", cfg.threads);
  readField(j, "n_values", cfg.nValues);
  readField(j, "t_values", cfg.tValues);
  readField(j, "indices", cfg.indices);
  readField(j, "samples", cfg.samples);
  readField(j, "power_iters", cfg.powerIters);
  readField(j, "matching", cfg.matching);
  readField(j, "coupling", cfg.coupling);
  readField(j, "population", cfg.population);
  return cfg;
}

json configToJson(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = toString(cfg.experiment);
  j["d"] = cfg.d;
  j["lambdas"] = cfg.lambdas;
  j["latent"] = std::string(toString(cfg.latent));
  j["data"] = cfg.data ? json(*cfg.data) : json(nullptr);
  j["center"] = cfg.center;
  j["schedule"] = {{"kind", cfg.scheduleKind},
                   {"T", cfg.steps},
                   {"scale", cfg.scale ? json(*cfg.scale) : json(nullptr)},
                   {"levels", cfg.levels}};
  j["r"] = cfg.r ? json(*cfg.r) : json(nullptr);
  j["n"] = cfg.n;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  j["output_dir"] = cfg.outputDir;
  j["emit_svg"] = cfg.emitSvg;
  j["inject"] = cfg.inject;
  j["threads"] = cfg.threads;
  j["n_values"] = cfg.nValues;
  j["t_values"] = cfg.tValues;
  j["indices"] = cfg.indices;
  j["samples"] = cfg.samples;
  j["power_iters"] = cfg.powerIters;
  j["matching"] = cfg.matching;
  j["coupling"] = cfg.coupling;
  j["population"] = cfg.population;
  return j;
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  try {
    return configFromJson(json::parse(is));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
  }
}

void validate(const ExperimentConfig& cfg) {
  if (!cfg.seed) throw ConfigError("seed is required");
  if (!cfg.data) {
    if (cfg.lambdas.empty()) throw ConfigError("lambdas: need at least one eigenvalue");
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      if (!(cfg.lambdas[i] > 0)) throw ConfigError("lambdas: values must be > 0");
      if (i && !(cfg.lambdas[i] < cfg.lambdas[i - 1]))
        throw ConfigError("lambdas: values must be strictly descending");
    }
    if (cfg.d < 1) throw ConfigError("d: must be >= 1");
    if (static_cast<Eigen::Index>(cfg.lambdas.size()) > cfg.d)
      throw ConfigError("lambdas: rank exceeds d");
    if (cfg.n < 2) throw ConfigError("n: must be >= 2");
  } else if (!std::filesystem::exists(*cfg.data)) {
    throw ConfigError("data: file not found '" + *cfg.data + "'");
  }
  if (cfg.levels.empty()) {
    if (cfg.steps < 1) throw ConfigError("T: must be >= 1");
    try {
      parseScheduleKind(cfg.scheduleKind);
    } catch (const ArgumentError&) {
      throw ConfigError("schedule.kind: unknown kind '" + cfg.scheduleKind + "'");
    }
    if (cfg.scheduleKind == "custom") throw ConfigError("schedule.levels: custom schedules need levels");
    if (cfg.scale && !(*cfg.scale > 0)) throw ConfigError("schedule.scale: must be > 0");
  } else {
    for (std::size_t t = 0; t < cfg.levels.size(); ++t)
      if (!(cfg.levels[t] >= 0) || (t && cfg.levels[t] < cfg.levels[t - 1]))
        throw ConfigError("schedule.levels: must be non-negative and non-decreasing");
  }
  if (cfg.r && *cfg.r < 1) throw ConfigError("r: must be >= 1");
  if (!cfg.data) {
    const Eigen::Index limit = std::min(cfg.d, cfg.n);
    if (cfg.components() > limit) throw ConfigError("r: exceeds min(d, n)");
    if (cfg.experiment == Experiment::DatasetSize)
      for (auto n : cfg.nValues)
        if (n < cfg.components() || n < 2) throw ConfigError("n_values: each n must be >= max(r, 2)");
  }
  if (cfg.trials < 1) throw ConfigError("trials: must be >= 1");
  if (cfg.samples < 1) throw ConfigError("samples: must be >= 1");
  if (cfg.powerIters < 1) throw ConfigError("power_iters: must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads: must be >= 1");
  if (cfg.nValues.empty()) throw ConfigError("n_values: must not be empty");
  if (cfg.tValues.empty()) throw ConfigError("t_values: must not be empty");
  for (int t : cfg.tValues)
    if (t < 1) throw ConfigError("t_values: each T must be >= 1");
  if (cfg.matching != "index" && cfg.matching != "greedy")
    throw ConfigError("matching: expected 'index' or 'greedy'");
  if (cfg.coupling != "independent" && cfg.coupling != "coupled")
    throw ConfigError("coupling: expected 'independent' or 'coupled'");
  if (cfg.population && cfg.data) throw ConfigError("population: needs a synthetic model");
  for (auto i : cfg.indices)
    if (i < 0) throw ConfigError("indices: must be >= 0");
  if (cfg.outputDir.empty()) throw ConfigError("output_dir: must not be empty");
}

RunResult run(const ExperimentConfig& config) {
  validate(config);
  Runner runner(config);
  return runner.execute();
}

}  // namespace lindiff
