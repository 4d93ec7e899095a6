#include <doctest.h>

#include <fstream>

#include "lindiff/svg.hpp"
#include "oracles.hpp"

using namespace lindiff;

namespace {

PlotTable sampleTable() {
  PlotTable t;
  t.title = "sin theta <vs> noise & level";
  t.xLabel = "sigma";
  t.yLabel = "sin";
  t.x = {0.0, 0.1, 0.2};
  t.seriesNames = {"u0", "u1"};
  t.values = Matrix(2, 3);
  t.values << 0.0, 0.02, 0.05, 0.0, 0.04, 0.1;
  return t;
}

}  // namespace

TEST_CASE("svg output is byte-identical for identical input") {
  const auto t = sampleTable();
  for (auto kind : {ChartKind::Lines, ChartKind::Heatmap}) {
    const auto a = renderSvg(t, kind);
    CHECK(a == renderSvg(t, kind));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
  }
}

TEST_CASE("svg escapes markup in labels") {
  const auto s = renderSvg(sampleTable(), ChartKind::Lines);
  CHECK(s.find("&lt;vs&gt;") != std::string::npos);
  CHECK(s.find("&amp;") != std::string::npos);
}

TEST_CASE("svg errors") {
  PlotTable empty;
  CHECK_THROWS_AS(renderSvg(empty, ChartKind::Lines), ArgumentError);
  auto bad = sampleTable();
  bad.x.pop_back();
  CHECK_THROWS_AS(renderSvg(bad, ChartKind::Lines), DimensionError);
  auto nan = sampleTable();
  nan.values(0, 0) = std::nan("");
  CHECK_THROWS_AS(renderSvg(nan, ChartKind::Heatmap), NumericError);
}

TEST_CASE("emitSvg writes the rendered document") {
  const auto dir = oracle::scratchDir("svg");
  const auto t = sampleTable();
  emitSvg(t, ChartKind::Heatmap, dir / "h.svg");
  std::ifstream in(dir / "h.svg");
  const std::string body((std::istreambuf_iterator<char>(in)), {});
  CHECK(body == renderSvg(t, ChartKind::Heatmap));
}
