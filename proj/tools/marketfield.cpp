// marketfield CLI: figure regeneration, demand-family emission and the
// verification suite runner.
//
//   marketfield figure <1-8> [--config PATH] [--out DIR] [--format csv|svg|both]
//   marketfield demand [--config PATH] [--out DIR]
//   marketfield verify [--config PATH] [--tol NAME=VALUE ...]
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "marketfield/config.hpp"
#include "marketfield/figures.hpp"
#include "marketfield/verify.hpp"

namespace mc = marketfield::cli;

namespace {

mc::RunConfig load(const std::string& config_path, const std::string& out_dir,
                   const std::string& format) {
  mc::RunConfig cfg =
      config_path.empty() ? mc::RunConfig{} : mc::load_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (!format.empty()) {
    if (format == "csv") {
      cfg.format = mc::OutputFormat::csv;
    } else if (format == "svg") {
      cfg.format = mc::OutputFormat::svg;
    } else if (format == "both") {
      cfg.format = mc::OutputFormat::both;
    } else {
      throw std::invalid_argument("format must be csv, svg or both");
    }
  }
  cfg.validate();
  return cfg;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& raw) {
  std::map<std::string, double> tols;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--tol expects NAME=VALUE, got '" + item + "'");
    }
    tols[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return tols;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauge-field market dynamics: figures, demand curves, verification"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  int figure_id = 1;
  std::vector<std::string> tol_args;

  auto* fig = app.add_subcommand("figure", "Regenerate a figure grid");
  fig->add_option("id", figure_id, "Figure number")->required()->check(CLI::Range(1, 8));
  fig->add_option("--config", config_path, "Config file path");
  fig->add_option("--out", out_dir, "Output directory");
  fig->add_option("--format", format, "csv, svg or both");

  auto* demand = app.add_subcommand("demand", "Emit the demand-circle family");
  demand->add_option("--config", config_path, "Config file path");
  demand->add_option("--out", out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("--config", config_path, "Config file path");
  verify->add_option("--tol", tol_args, "Tolerance override NAME=VALUE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fig->parsed()) {
      const mc::RunConfig cfg = load(config_path, out_dir, format);
      const auto paths = mc::run_figure(mc::FigureSpec::of(figure_id), cfg);
      for (const auto& p : paths) std::cout << p.string() << '\n';
      return 0;
    }
    if (demand->parsed()) {
      const mc::RunConfig cfg = load(config_path, out_dir, format);
      const auto paths = mc::run_demand(cfg);
      for (const auto& p : paths) std::cout << p.string() << '\n';
      return 0;
    }
    // verify
    const mc::RunConfig cfg = load(config_path, out_dir, format);
    const auto tols = parse_tols(tol_args);
    const auto results = mc::run_verification(cfg, tols);
    for (const auto& r : results) {
      std::printf("%-26s %s  measured=%.6g tol=%.6g  (%s)\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.measured, r.threshold, r.detail.c_str());
    }
    return mc::all_passed(results) ? 0 : 1;
  } catch (const marketfield::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const marketfield::UnknownKey& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const marketfield::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
