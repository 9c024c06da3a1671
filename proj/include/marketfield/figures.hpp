// Figure regeneration: quantity mapping, grid sampling, CSV and SVG output,
// and the demand-family emission.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "marketfield/config.hpp"

namespace marketfield::cli {

// Quantity mapping:
//   1 -> C_h^(1)(s, t)            price choice component
//   2 -> C_h^(2)(s, t)            goods choice component
//   3 -> C_h^(3)(s, t)            capital choice component
//   4 -> sqrt(C1^2 + C2^2)        choice value in the (P, Q) plane
//   5 -> C1^2 + C2^2              axes relabeled (p, q)
//   6 -> derived C^(3)(S, t)      non-price competition, at (x1, x2)
//   7 -> derived P^(3)(S, t)      profit component, at (x1, x2)
//   8 -> derived P^(3)(S, t)      profit component, at the doubled offset
struct FigureSpec {
  int id = 1;
  std::string quantity;
  std::string x_label;  // inner (column) axis
  std::string y_label;  // outer (row) axis

  static FigureSpec of(int id);  // throws std::out_of_range unless 1 <= id <= 8
};

struct FigureData {
  FigureSpec spec;
  std::vector<double> s;       // inner axis samples
  std::vector<double> t;       // outer axis samples
  std::vector<double> values;  // row-major, t outer / s inner
};

FigureData sample_figure(const FigureSpec& spec, const RunConfig& cfg);

// CSV: header `s,t,value`, >= 9 significant digits, t outer / s inner.
void write_figure_csv(const FigureData& data, std::ostream& out);

// Writes figure_<id>.csv / figure_<id>.svg per the configured format and
// returns the paths written. Throws IoError on write failure.
std::vector<std::filesystem::path> run_figure(const FigureSpec& spec, const RunConfig& cfg);

// Demand family: CSV header `P,Q,ch,R` over the (P, Q) grid in [0, 1.5].
std::vector<std::filesystem::path> run_demand(const RunConfig& cfg);

// Minimal self-contained SVG heatmap (per-cell rectangles, linear gray-to-red
// color map documented in the file header comment).
void write_heatmap_svg(const FigureData& data, std::ostream& out);

}  // namespace marketfield::cli
