#include "marketfield/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace marketfield::cli {

soliton::SolitonParams RunConfig::params() const {
  soliton::SolitonParams p;
  p.beta = beta;
  p.tau = tau;
  p.l_scale = l_scale;
  p.half_length = half_length;
  p.activity = activity;
  p.gamma = gamma;
  p.cutoff = cutoff;
  return p;
}

void RunConfig::validate() const {
  params().validate();
  if (n_s < 2 || n_t < 2) throw std::invalid_argument("config: n_s and n_t must be >= 2");
  if (!(s_max > s_min)) throw std::invalid_argument("config: empty s range");
  if (!(t_max > t_min)) throw std::invalid_argument("config: empty t range");
  if (x1 == 0.0 && x2 == 0.0) {
    throw std::invalid_argument(
        "config: (x1, x2) = (0, 0) puts figures 7-8 on the profit singularity");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "line " + std::to_string(line) + ": invalid number '" + v + "'");
  }
}

int parse_int(const std::string& v, int line) {
  const double d = parse_double(v, line);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    throw ParseError(line, "line " + std::to_string(line) + ": expected integer, got '" + v + "'");
  }
  return i;
}

OutputFormat parse_format(const std::string& v, int line) {
  if (v == "csv") return OutputFormat::csv;
  if (v == "svg") return OutputFormat::svg;
  if (v == "both") return OutputFormat::both;
  throw ParseError(line, "line " + std::to_string(line) + ": format must be csv, svg or both");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no,
                       "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError(line_no, "line " + std::to_string(line_no) + ": empty key or value");
    }

    if (key == "beta") {
      cfg.beta = parse_double(value, line_no);
    } else if (key == "tau") {
      cfg.tau = parse_double(value, line_no);
    } else if (key == "l_scale") {
      cfg.l_scale = parse_double(value, line_no);
    } else if (key == "L") {
      cfg.half_length = parse_double(value, line_no);
    } else if (key == "activity") {
      cfg.activity = parse_double(value, line_no);
    } else if (key == "gamma") {
      cfg.gamma = parse_double(value, line_no);
    } else if (key == "d") {
      cfg.cutoff = parse_double(value, line_no);
    } else if (key == "s_min") {
      cfg.s_min = parse_double(value, line_no);
    } else if (key == "s_max") {
      cfg.s_max = parse_double(value, line_no);
    } else if (key == "t_min") {
      cfg.t_min = parse_double(value, line_no);
    } else if (key == "t_max") {
      cfg.t_max = parse_double(value, line_no);
    } else if (key == "n_s") {
      cfg.n_s = parse_int(value, line_no);
    } else if (key == "n_t") {
      cfg.n_t = parse_int(value, line_no);
    } else if (key == "x1") {
      cfg.x1 = parse_double(value, line_no);
    } else if (key == "x2") {
      cfg.x2 = parse_double(value, line_no);
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "format") {
      cfg.format = parse_format(value, line_no);
    } else {
      throw UnknownKey(key);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace marketfield::cli
