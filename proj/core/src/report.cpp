#include "expower/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace expower {

namespace {

std::string fixed(double v, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
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

// Round `span / target_ticks` up to 1, 2 or 5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

void write_contours_csv(std::ostream& out, const std::vector<Contour>& contours) {
  out << "gamma,cost,value\n";
  for (const auto& c : contours) {
    for (const auto& p : c.points) {
      out << fixed(p.gamma, 4) << ',' << fixed(p.cost, 4) << ',' << fixed(c.value, 4) << '\n';
    }
  }
}

void write_contours_svg(std::ostream& out, const std::vector<Contour>& contours,
                        const ChartLabels& labels) {
  constexpr double kWidth = 640, kHeight = 440;
  constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_max = 0.0, y_max = 0.0;
  for (const auto& c : contours) {
    for (const auto& p : c.points) {
      x_max = std::max(x_max, p.gamma);
      y_max = std::max(y_max, p.cost);
    }
  }
  x_max = std::max(x_max, 1e-9);
  const double y_step = nice_step(std::max(y_max, 1e-9), 5);
  y_max = std::ceil(y_max / y_step) * y_step;
  const double x_step = nice_step(x_max, 5);
  x_max = std::ceil(x_max / x_step - 1e-9) * x_step;

  auto sx = [&](double x) { return kLeft + plot_w * x / x_max; };
  auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / y_max); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(labels.title) << "</text>\n";

  // Axes.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (double x = 0.0; x <= x_max + 1e-9; x += x_step) {
    out << "<line x1=\"" << fixed(sx(x), 2) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << fixed(sx(x), 2) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed(sx(x), 2) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fixed(x, 2) << "</text>\n";
  }
  for (double y = 0.0; y <= y_max + 1e-9; y += y_step) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fixed(sy(y), 2) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fixed(sy(y), 2) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(sy(y) + 4, 2)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fixed(y, y_step < 1 ? 2 : 0)
        << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(labels.x_label)
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kTop + plot_h / 2 << ")\">"
      << escape_xml(labels.y_label) << "</text>\n";

  for (std::size_t i = 0; i < contours.size(); ++i) {
    const auto& c = contours[i];
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      if (k) out << ' ';
      out << fixed(sx(c.points[k].gamma), 2) << ',' << fixed(sy(c.points[k].cost), 2);
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 18 * static_cast<double>(i);
    out << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w + 35 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
        << escape_xml(labels.value_prefix + fixed(c.value, c.value < 1.0 ? 2 : 0)) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace expower
