#include "lindiff/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lindiff {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string fixed(double v, int digits = 2) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed,
                                 digits);
  std::string s(buf.data(), res.ptr);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string tickLabel(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 3);
  return std::string(buf.data(), res.ptr);
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Dark for the first series, lighter for later ones.
std::string seriesColor(std::size_t i, std::size_t count) {
  const double f = count > 1 ? double(i) / double(count - 1) : 0.0;
  const int r = static_cast<int>(std::lround(20 + f * 150));
  const int g = static_cast<int>(std::lround(40 + f * 160));
  const int b = static_cast<int>(std::lround(110 + f * 120));
  std::ostringstream os;
  os << "rgb(" << r << ',' << g << ',' << b << ')';
  return os.str();
}

std::string heatColor(double v) {
  const double f = std::clamp(std::abs(v), 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 - f * (255 - 8)));
  const int g = static_cast<int>(std::lround(255 - f * (255 - 48)));
  const int b = static_cast<int>(std::lround(255 - f * (255 - 107)));
  std::ostringstream os;
  os << "rgb(" << r << ',' << g << ',' << b << ')';
  return os.str();
}

void header(std::ostringstream& os, const PlotTable& t) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\""
     << fixed(kHeight, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << ' ' << fixed(kHeight, 0)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(t.title) << "</text>\n";
  const double plotMidX = kLeft + (kWidth - kLeft - kRight) / 2;
  const double plotMidY = kTop + (kHeight - kTop - kBottom) / 2;
  os << "<text x=\"" << fixed(plotMidX) << "\" y=\"" << fixed(kHeight - 15)
     << "\" text-anchor=\"middle\">" << escape(t.xLabel) << "</text>\n"
     << "<text x=\"18\" y=\"" << fixed(plotMidY) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << fixed(plotMidY) << ")\">" << escape(t.yLabel) << "</text>\n";
}

std::string renderLines(const PlotTable& t) {
  const Eigen::Index points = t.values.cols();
  if (static_cast<Eigen::Index>(t.x.size()) != points)
    throw DimensionError("svg: x has " + std::to_string(t.x.size()) + " points, table has " +
                         std::to_string(points));
  double xmin = *std::min_element(t.x.begin(), t.x.end());
  double xmax = *std::max_element(t.x.begin(), t.x.end());
  double ymin = std::min(0.0, t.values.minCoeff());
  double ymax = t.values.maxCoeff();
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  header(os, t);
  os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw)
     << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double xv = xmin + (xmax - xmin) * k / kTicks;
    const double yv = ymin + (ymax - ymin) * k / kTicks;
    os << "<line x1=\"" << fixed(px(xv)) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\""
       << fixed(px(xv)) << "\" y2=\"" << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(kTop + ph + 18)
       << "\" text-anchor=\"middle\">" << tickLabel(xv) << "</text>\n"
       << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(py(yv)) << "\" x2=\""
       << fixed(kLeft) << "\" y2=\"" << fixed(py(yv)) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(yv) + 4)
       << "\" text-anchor=\"end\">" << tickLabel(yv) << "</text>\n";
  }
  const auto count = static_cast<std::size_t>(t.values.rows());
  for (std::size_t s = 0; s < count; ++s) {
    const auto color = seriesColor(s, count);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index j = 0; j < points; ++j) {
      if (j) os << ' ';
      os << fixed(px(t.x[static_cast<std::size_t>(j)])) << ','
         << fixed(py(t.values(static_cast<Eigen::Index>(s), j)));
    }
    os << "\"/>\n";
    const std::string name =
        s < t.seriesNames.size() ? t.seriesNames[s] : "series " + std::to_string(s);
    const double ly = kTop + 10 + 16 * double(s);
    os << "<line x1=\"" << fixed(kWidth - kRight + 10) << "\" y1=\"" << fixed(ly) << "\" x2=\""
       << fixed(kWidth - kRight + 30) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << fixed(kWidth - kRight + 35) << "\" y=\"" << fixed(ly + 4) << "\">"
       << escape(name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string renderHeatmap(const PlotTable& t) {
  const Eigen::Index rows = t.values.rows();
  const Eigen::Index cols = t.values.cols();
  const double side = std::min(kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  const double cw = side / double(cols);
  const double ch = side / double(rows);
  std::ostringstream os;
  header(os, t);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      os << "<rect x=\"" << fixed(kLeft + cw * double(j)) << "\" y=\""
         << fixed(kTop + ch * double(i)) << "\" width=\"" << fixed(cw) << "\" height=\""
         << fixed(ch) << "\" fill=\"" << heatColor(t.values(i, j)) << "\"><title>" << i << ','
         << j << ": " << tickLabel(t.values(i, j)) << "</title></rect>\n";
    }
  }
  const Eigen::Index every = std::max<Eigen::Index>(1, std::max(rows, cols) / 10);
  for (Eigen::Index i = 0; i < rows; i += every)
    os << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(kTop + ch * (double(i) + 0.5) + 4)
       << "\" text-anchor=\"end\">" << i << "</text>\n";
  for (Eigen::Index j = 0; j < cols; j += every) {
    const std::string label = static_cast<Eigen::Index>(t.x.size()) == cols
                                  ? tickLabel(t.x[static_cast<std::size_t>(j)])
                                  : std::to_string(j);
    os << "<text x=\"" << fixed(kLeft + cw * (double(j) + 0.5)) << "\" y=\""
       << fixed(kTop + side + 16) << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  // Colour bar for |value| in [0, 1].
  const double bx = kLeft + side + 20;
  constexpr int kSteps = 10;
  for (int k = 0; k < kSteps; ++k) {
    const double v = 1.0 - (k + 0.5) / kSteps;
    os << "<rect x=\"" << fixed(bx) << "\" y=\"" << fixed(kTop + side * k / kSteps)
       << "\" width=\"16\" height=\"" << fixed(side / kSteps) << "\" fill=\"" << heatColor(v)
       << "\"/>\n";
  }
  os << "<text x=\"" << fixed(bx + 22) << "\" y=\"" << fixed(kTop + 10) << "\">1</text>\n"
     << "<text x=\"" << fixed(bx + 22) << "\" y=\"" << fixed(kTop + side) << "\">0</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace

std::string renderSvg(const PlotTable& table, ChartKind kind) {
  if (table.values.size() == 0) throw ArgumentError("svg: empty table");
  if (!table.values.allFinite()) throw NumericError("svg: non-finite values");
  return kind == ChartKind::Lines ? renderLines(table) : renderHeatmap(table);
}

void emitSvg(const PlotTable& table, ChartKind kind, const std::filesystem::path& path) {
  const std::string doc = renderSvg(table, kind);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("svg: cannot open " + path.string());
  os << doc;
}

}  // namespace lindiff
