#pragma once

// Minimal standalone SVG line plots.

#include <iosfwd>
#include <string>
#include <vector>

namespace tfbm::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 720;
  int height = 480;
  bool markers = false;
};

/// Non-finite points are skipped. An empty plot still yields a valid file.
void write(std::ostream& os, const Plot& plot);

}  // namespace tfbm::svg
