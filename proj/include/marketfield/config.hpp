// Run configuration: parameter defaults, `key = value` config parsing.

#pragma once

#include <string>

#include "marketfield/errors.hpp"
#include "marketfield/soliton.hpp"

namespace marketfield::cli {

enum class OutputFormat { csv, svg, both };

struct RunConfig {
  double beta = 0.5;
  double tau = 0.25;
  double l_scale = 1.0;
  double half_length = 5.0;  // L
  double activity = 1.0;
  double gamma = 1.0;
  double cutoff = 1.0;  // d

  double s_min = -5.0;
  double s_max = 5.0;
  double t_min = 0.0;
  double t_max = 4.0;
  int n_s = 201;
  int n_t = 201;

  // Fixed transverse offset (x1, x2) used by the derived-field figures 6-8;
  // figure 8 doubles it. Must not be the origin.
  double x1 = 1.0;
  double x2 = 0.0;

  std::string output_dir = ".";
  OutputFormat format = OutputFormat::csv;

  soliton::SolitonParams params() const;

  // Throws std::invalid_argument on inconsistent values.
  void validate() const;
};

// Parses `key = value` lines; `#` starts a comment; blank lines ignored.
// Unknown keys raise UnknownKey, malformed lines raise ParseError with the
// line number. Missing keys keep their defaults.
RunConfig parse_config(const std::string& text);

// Reads and parses a config file. Throws IoError when unreadable.
RunConfig load_config(const std::string& path);

}  // namespace marketfield::cli
