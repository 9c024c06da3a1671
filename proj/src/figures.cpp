#include "marketfield/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace marketfield::cli {

namespace {

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace

FigureSpec FigureSpec::of(int id) {
  if (id < 1 || id > 8) throw std::out_of_range("figure id must be 1..8");
  static const char* quantities[] = {
      "choice_c1",         "choice_c2",      "choice_c3",      "choice_magnitude_pq",
      "choice_pq_squared", "competition_c3", "profit_p3",      "profit_p3_far"};
  FigureSpec spec;
  spec.id = id;
  spec.quantity = quantities[id - 1];
  spec.x_label = (id == 5) ? "p" : (id >= 6 ? "S" : "s");
  spec.y_label = (id == 5) ? "q" : "t";
  return spec;
}

FigureData sample_figure(const FigureSpec& spec, const RunConfig& cfg) {
  cfg.validate();
  const auto params = cfg.params();
  FigureData data;
  data.spec = spec;
  data.s = linspace(cfg.s_min, cfg.s_max, cfg.n_s);
  data.t = linspace(cfg.t_min, cfg.t_max, cfg.n_t);
  data.values.reserve(static_cast<std::size_t>(cfg.n_s) * cfg.n_t);

  const double off = (spec.id == 8) ? 2.0 : 1.0;
  for (double t : data.t) {
    for (double s : data.s) {
      double v = 0.0;
      switch (spec.id) {
        case 1:
          v = soliton::choice_components(params, s, t).c1;
          break;
        case 2:
          v = soliton::choice_components(params, s, t).c2;
          break;
        case 3:
          v = soliton::choice_components(params, s, t).c3;
          break;
        case 4:
          v = soliton::choice_magnitude_pq(params, s, t);
          break;
        case 5: {
          const double m = soliton::choice_magnitude_pq(params, s, t);
          v = m * m;
          break;
        }
        case 6:
          v = soliton::derived_fields(params, s, t, cfg.x1 * off, cfg.x2 * off).c3;
          break;
        case 7:
        case 8:
          v = soliton::derived_fields(params, s, t, cfg.x1 * off, cfg.x2 * off).p3;
          break;
      }
      data.values.push_back(v);
    }
  }
  return data;
}

void write_figure_csv(const FigureData& data, std::ostream& out) {
  out << "s,t,value\n";
  std::size_t idx = 0;
  for (double t : data.t) {
    for (double s : data.s) {
      out << fmt_value(s) << ',' << fmt_value(t) << ',' << fmt_value(data.values[idx++])
          << '\n';
    }
  }
}

void write_heatmap_svg(const FigureData& data, std::ostream& out) {
  const int ns = static_cast<int>(data.s.size());
  const int nt = static_cast<int>(data.t.size());
  const double cell = 4.0;
  const double w = ns * cell;
  const double h = nt * cell;
  const auto [lo_it, hi_it] = std::minmax_element(data.values.begin(), data.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double span = (hi > lo) ? hi - lo : 1.0;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  out << "<!-- heatmap of " << data.spec.quantity << "; linear color map from rgb(20,20,90) at "
      << fmt_value(lo) << " to rgb(230,60,30) at " << fmt_value(hi) << " -->\n";
  std::size_t idx = 0;
  for (int j = 0; j < nt; ++j) {
    for (int i = 0; i < ns; ++i) {
      const double u = (data.values[idx++] - lo) / span;
      const int r = static_cast<int>(20 + u * (230 - 20));
      const int g = static_cast<int>(20 + u * (60 - 20));
      const int b = static_cast<int>(90 + u * (30 - 90));
      out << "<rect x=\"" << i * cell << "\" y=\"" << (nt - 1 - j) * cell << "\" width=\""
          << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << r << ',' << g << ',' << b
          << ")\"/>\n";
    }
  }
  out << "</svg>\n";
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<std::filesystem::path> run_figure(const FigureSpec& spec, const RunConfig& cfg) {
  const FigureData data = sample_figure(spec, cfg);
  std::filesystem::create_directories(cfg.output_dir);
  std::vector<std::filesystem::path> written;
  const std::filesystem::path base =
      std::filesystem::path(cfg.output_dir) / ("figure_" + std::to_string(spec.id));
  if (cfg.format == OutputFormat::csv || cfg.format == OutputFormat::both) {
    auto out = open_output(base.string() + ".csv");
    write_figure_csv(data, out);
    written.push_back(base.string() + ".csv");
  }
  if (cfg.format == OutputFormat::svg || cfg.format == OutputFormat::both) {
    auto out = open_output(base.string() + ".svg");
    write_heatmap_svg(data, out);
    written.push_back(base.string() + ".svg");
  }
  return written;
}

std::vector<std::filesystem::path> run_demand(const RunConfig& cfg) {
  cfg.validate();
  // Paper's illustration range: 0 <= P, Q <= 1.5.
  const auto p = linspace(0.0, 1.5, 61);
  const auto q = linspace(0.0, 1.5, 61);
  const auto rows = soliton::demand_curve_family(p, q);

  std::filesystem::create_directories(cfg.output_dir);
  const std::filesystem::path path = std::filesystem::path(cfg.output_dir) / "demand.csv";
  auto out = open_output(path);
  out << "P,Q,ch,R\n";
  for (const auto& row : rows) {
    out << fmt_value(row.p) << ',' << fmt_value(row.q) << ',' << fmt_value(row.ch_mag) << ','
        << fmt_value(row.radius) << '\n';
  }
  return {path};
}

}  // namespace marketfield::cli
