#include "branchcov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace branchcov::cli {

namespace {

constexpr double kWidth = 480, kPlot = 360, kMargin = 30, kBadgeLine = 18;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

} // namespace

std::string render_svg(const Sketch &sketch) {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  auto extend = [&](const Complex &z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const Complex &z : sketch.points)
    extend(z);
  for (const Complex &z : sketch.path)
    extend(z);
  const double span = std::max(xmax - xmin, ymax - ymin) * 1.1;
  const double cx = (xmin + xmax) / 2, cy = (ymin + ymax) / 2;
  const double inner = std::min(kWidth, kPlot) - 2 * kMargin;
  auto px = [&](const Complex &z) { return kWidth / 2 + (z.real() - cx) / span * inner; };
  auto py = [&](const Complex &z) { return kPlot / 2 - (z.imag() - cy) / span * inner; };

  const double height = kPlot + kBadgeLine * static_cast<double>(sketch.badges.size() + 1);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << ' '
      << num(height) << "\">\n"
      << "  <title>" << escape(sketch.title) << "</title>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";

  const Complex origin{0.0, 0.0};
  if (xmin <= 0 && 0 <= xmax)
    out << "  <line x1=\"" << num(px(origin)) << "\" y1=\"" << num(kMargin / 2) << "\" x2=\""
        << num(px(origin)) << "\" y2=\"" << num(kPlot - kMargin / 2)
        << "\" stroke=\"#cccccc\"/>\n";
  if (ymin <= 0 && 0 <= ymax)
    out << "  <line x1=\"" << num(kMargin / 2) << "\" y1=\"" << num(py(origin)) << "\" x2=\""
        << num(kWidth - kMargin / 2) << "\" y2=\"" << num(py(origin))
        << "\" stroke=\"#cccccc\"/>\n";

  auto polyline = [&](const std::vector<Complex> &pts, const char *style) {
    out << "  <polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << (i ? " " : "") << num(px(pts[i])) << ',' << num(py(pts[i]));
    out << "\"/>\n";
  };
  if (sketch.path.size() > 1)
    polyline(sketch.path, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
  if (sketch.show_order && sketch.points.size() > 1)
    polyline(sketch.points, "stroke=\"#999999\" stroke-dasharray=\"4 3\"");

  for (std::size_t i = 0; i < sketch.points.size(); ++i) {
    const Complex &z = sketch.points[i];
    out << "  <circle cx=\"" << num(px(z)) << "\" cy=\"" << num(py(z))
        << "\" r=\"4\" fill=\"#d62728\"/>\n";
    const std::string label = i < sketch.labels.size() ? sketch.labels[i] : std::to_string(i);
    out << "  <text x=\"" << num(px(z) + 6) << "\" y=\"" << num(py(z) - 6)
        << "\" font-family=\"monospace\" font-size=\"11\">" << escape(label) << "</text>\n";
  }

  double y = kPlot + kBadgeLine / 2;
  out << "  <text x=\"10\" y=\"" << num(y)
      << "\" font-family=\"monospace\" font-size=\"12\" font-weight=\"bold\">"
      << escape(sketch.title) << "</text>\n";
  for (const std::string &b : sketch.badges) {
    y += kBadgeLine;
    out << "  <text x=\"10\" y=\"" << num(y) << "\" font-family=\"monospace\" font-size=\"12\">"
        << escape(b) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace branchcov::cli
