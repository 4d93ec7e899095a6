#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lindiff/matcore.hpp"

namespace lindiff {

enum class ChartKind { Lines, Heatmap };

/// Numeric table for plotting. For line charts each row of `values` is one
/// series over the `x` positions; for heatmaps `values` is drawn as-is with
/// `x` labelling the columns (row labels are the row indices).
struct PlotTable {
  std::string title;
  std::string xLabel;
  std::string yLabel;
  std::vector<double> x;
  std::vector<std::string> seriesNames;
  Matrix values;
};

/// Self-contained SVG document. Identical input gives identical bytes.
/// Heatmap colour is linear in |value| over the fixed range [0, 1].
std::string renderSvg(const PlotTable& table, ChartKind kind);
void emitSvg(const PlotTable& table, ChartKind kind, const std::filesystem::path& path);

}  // namespace lindiff
