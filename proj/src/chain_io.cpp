#include "lindiff/chain_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindiff/matrix_io.hpp"

namespace lindiff {
namespace {

using nlohmann::json;

std::vector<double> toStd(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector fromStd(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string stepName(const char* prefix, int t, const char* ext) {
  return std::string(prefix) + std::to_string(t) + ext;
}

}  // namespace

void saveChain(const DenoiserChain& chain, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& den : chain.denoisers) {
    writeLdmx(den.basis, dir / stepName("U_", den.t, ".ldmx"));
    writeCsvMatrix(den.eigenvalues, dir / stepName("eig_", den.t, ".csv"));
  }
  json manifest;
  manifest["format"] = "lindiff-chain";
  manifest["version"] = 1;
  manifest["schedule"] = {{"kind", std::string(toString(chain.schedule.kind))},
                          {"sigmas", toStd(chain.schedule.sigmas)},
                          {"cumulative", toStd(chain.schedule.cumulative)}};
  manifest["r"] = chain.components;
  manifest["seed"] = chain.trainSeed;
  manifest["d"] = chain.dim;
  manifest["n"] = chain.samples;
  manifest["coupling"] = chain.coupling == NoiseCoupling::Coupled ? "coupled" : "independent";
  manifest["steps"] = chain.steps();
  std::ofstream os(dir / "chain.json", std::ios::trunc);
  if (!os) throw FormatError("cannot write chain manifest in " + dir.string());
  os << manifest.dump(2) << '\n';
}

DenoiserChain loadChain(const std::filesystem::path& dir) {
  std::ifstream is(dir / "chain.json");
  if (!is) throw FormatError("missing chain.json in " + dir.string());
  json manifest;
  try {
    manifest = json::parse(is);
    if (manifest.at("format") != "lindiff-chain") throw FormatError("not a chain manifest");
    DenoiserChain chain;
    const auto& sched = manifest.at("schedule");
    chain.schedule.kind = parseScheduleKind(sched.at("kind").get<std::string>());
    chain.schedule.sigmas = fromStd(sched.at("sigmas").get<std::vector<double>>());
    chain.schedule.cumulative = fromStd(sched.at("cumulative").get<std::vector<double>>());
    chain.components = manifest.at("r").get<Eigen::Index>();
    chain.trainSeed = manifest.at("seed").get<std::uint64_t>();
    chain.dim = manifest.at("d").get<Eigen::Index>();
    chain.samples = manifest.at("n").get<Eigen::Index>();
    chain.coupling = manifest.at("coupling") == "coupled" ? NoiseCoupling::Coupled
                                                          : NoiseCoupling::Independent;
    const int steps = manifest.at("steps").get<int>();
    if (chain.schedule.sigmas.size() != steps + 1 ||
        chain.schedule.cumulative.size() != steps + 1)
      throw FormatError("chain manifest: schedule length does not match steps");
    for (int t = 0; t <= steps; ++t) {
      PcaDenoiser den;
      den.t = t;
      den.sigmaBar = chain.schedule.cumulative(t);
      den.basis = readLdmx(dir / stepName("U_", t, ".ldmx"));
      const Matrix eig = readCsvMatrix(dir / stepName("eig_", t, ".csv"));
      if (den.basis.rows() != chain.dim || den.basis.cols() != chain.components ||
          eig.rows() != chain.components || eig.cols() != 1)
        throw FormatError("chain: step " + std::to_string(t) + " has inconsistent shapes");
      den.eigenvalues = eig.col(0);
      chain.denoisers.push_back(std::move(den));
    }
    return chain;
  } catch (const json::exception& e) {
    throw FormatError(std::string("chain manifest: ") + e.what());
  }
}

}  // namespace lindiff
