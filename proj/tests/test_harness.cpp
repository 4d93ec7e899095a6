#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lindiff/harness.hpp"
#include "lindiff/matrix_io.hpp"
#include "oracles.hpp"

using namespace lindiff;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Small synthetic problem so each run takes milliseconds.
std::vector<std::string> small(std::vector<std::string> args) {
  for (const char* a : {"--d", "12", "--n", "150", "--T", "4", "--trials", "3", "--samples", "40"})
    args.emplace_back(a);
  return args;
}

}  // namespace

TEST_CASE("missing seed exits 2 and names the field") {
  const auto r = cli({"angles", "--out", oracle::scratchDir("noseed").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("seed is required") != std::string::npos);
}

TEST_CASE("invalid arguments exit 2") {
  CHECK(cli({"nonsense", "--seed", "1"}).code == 2);
  CHECK(cli({"angles", "--seed", "1", "--bogus-flag"}).code == 2);
  const auto lam = cli({"angles", "--seed", "1", "--lambdas", "1", "2"});
  CHECK(lam.code == 2);
  CHECK(lam.err.find("lambdas") != std::string::npos);
  const auto data = cli({"angles", "--seed", "1", "--data", "/nonexistent/x.ldmx"});
  CHECK(data.code == 2);
  CHECK(data.err.find("data") != std::string::npos);
  const auto r = cli({"generate", "--seed", "1", "--d", "3", "--r", "9"});
  CHECK(r.code == 2);
  CHECK(r.err.find("r:") != std::string::npos);
}

TEST_CASE("experiment names") {
  for (auto e : {Experiment::Angles, Experiment::DatasetSize, Experiment::Spectrum,
                 Experiment::BasisCorr, Experiment::Generate, Experiment::PowerIter})
    CHECK((parseExperiment(toString(e)) == e));
  CHECK_THROWS_AS(parseExperiment("nope"), ConfigError);
}

TEST_CASE("every experiment runs and writes a manifest") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> expected{
      {"angles", {"angles.csv", "angle_increments.csv", "angles.svg"}},
      {"dataset-size", {"dataset_size.csv"}},
      {"spectrum", {"spectrum.csv"}},
      {"basis-corr", {"basis_corr.csv", "diagonality.csv"}},
      {"generate", {"samples.ldmx", "spectrum.csv", "summary.csv", "chain/chain.json"}},
      {"power-iter", {"power_iteration.csv", "summary.csv"}},
  };
  for (const auto& [name, files] : expected) {
    const auto dir = oracle::scratchDir("exp-" + name);
    auto args = small({name, "--seed", "3", "--out", dir.string(), "--emit-svg"});
    const auto r = cli(args);
    CAPTURE(name);
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "manifest.json"));
    for (const auto& f : files) {
      CAPTURE(f);
      CHECK(fs::exists(dir / f));
    }
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest.at("experiment") == name);
    CHECK(manifest.at("config").at("seed") == 3);
  }
}

TEST_CASE("rerunning from a manifest reproduces the CSVs byte for byte") {
  const auto first = oracle::scratchDir("rerun-a");
  const auto second = oracle::scratchDir("rerun-b");
  REQUIRE(cli(small({"angles", "--seed", "11", "--out", first.string()})).code == 0);
  REQUIRE(cli({"angles", "--config", (first / "manifest.json").string(), "--out",
               second.string()})
              .code == 0);
  for (const char* f : {"angles.csv", "angle_increments.csv"}) {
    CAPTURE(f);
    CHECK(slurp(first / f) == slurp(second / f));
  }
}

TEST_CASE("results do not depend on the thread count") {
  for (const std::string exp : {"angles", "generate"}) {
    const auto one = oracle::scratchDir("threads-1-" + exp);
    const auto four = oracle::scratchDir("threads-4-" + exp);
    REQUIRE(cli(small({exp, "--seed", "5", "--out", one.string(), "--threads", "1"})).code == 0);
    REQUIRE(cli(small({exp, "--seed", "5", "--out", four.string(), "--threads", "4"})).code == 0);
    for (const auto& entry : fs::directory_iterator(one)) {
      if (entry.path().extension() != ".csv") continue;
      CAPTURE(entry.path().filename().string());
      CHECK(slurp(entry.path()) == slurp(four / entry.path().filename()));
    }
    if (exp == "generate") CHECK(slurp(one / "samples.ldmx") == slurp(four / "samples.ldmx"));
  }
}

TEST_CASE("dataset files drive the angle experiment") {
  const auto dir = oracle::scratchDir("data-file");
  std::mt19937_64 gen(1);
  Matrix x = oracle::randomMatrix(6, 80, gen);
  x.row(0) *= 4.0;
  writeMatrix(x, dir / "x.csv");
  const auto r = cli({"angles", "--seed", "2", "--data", (dir / "x.csv").string(), "--r", "2",
                      "--T", "3", "--trials", "2", "--out", (dir / "out").string()});
  CAPTURE(r.err);
  REQUIRE(r.code == 0);
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  CHECK(manifest.at("components") == 2);
}

TEST_CASE("config json round trip") {
  auto cfg = theorem1Bench();
  cfg.levels = {0.0, 0.1, 0.2};
  cfg.indices = {0, 2};
  cfg.emitSvg = true;
  const auto back = configFromJson(configToJson(cfg));
  CHECK(configToJson(back) == configToJson(cfg));
  CHECK_THROWS_AS(configFromJson(nlohmann::json::array()), ConfigError);
}

TEST_CASE("benchmark defaults") {
  const auto cfg = theorem1Bench();
  CHECK(cfg.d == 50);
  CHECK(cfg.n == 2000);
  CHECK(cfg.steps == 65);
  CHECK(cfg.components() == 3);
  CHECK(cfg.scaleFor(65) == doctest::Approx(kBenchStepSigma * 65));
  CHECK(cfg.scaleFor(5) == doctest::Approx(kBenchStepSigma * 5));
  CHECK_NOTHROW(validate(cfg));
}
