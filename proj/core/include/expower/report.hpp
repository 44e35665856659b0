#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "expower/power.hpp"

namespace expower {

// gamma,cost,value
void write_contours_csv(std::ostream& out, const std::vector<Contour>& contours);

struct ChartLabels {
  std::string title;
  std::string x_label = "attenuation (gamma)";
  std::string y_label = "cost per observation ($)";
  std::string value_prefix;  // legend prefix, e.g. "power " or "$"
};

// Standalone SVG line chart, one polyline per contour.
void write_contours_svg(std::ostream& out, const std::vector<Contour>& contours,
                        const ChartLabels& labels);

}  // namespace expower
