// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its quantities from the public API at
// the pinned tolerances rather than trusting intermediate caches.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "marketfield/config.hpp"
#include "marketfield/equilibrium.hpp"
#include "marketfield/figures.hpp"
#include "marketfield/frenet.hpp"
#include "marketfield/kernels.hpp"
#include "marketfield/macro.hpp"
#include "marketfield/soliton.hpp"
#include "marketfield/verify.hpp"

using namespace marketfield;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-24s %s  %s\n", id, name.c_str(), ok ? "PASS" : "FAIL",
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// 1. Curvature peak amplitude 4*beta at s = 2*tau*t, within 1e-12.
void criterion_soliton_amplitude() {
  soliton::SolitonParams params;
  const double t = 1.0;
  const double peak_s = soliton::curvature_peak(params, t, -10.0, 10.0);
  const double peak = soliton::curvature(params, peak_s, t);
  const double amp_err = std::fabs(peak - 2.0);
  const double loc_err = std::fabs(peak_s - 0.5);
  report(1, "soliton_amplitude", amp_err <= 1e-12 && loc_err <= 1e-6,
         "amplitude err " + fmt(amp_err) + ", location err " + fmt(loc_err));
}

// 2. Fitted peak trajectory slope 2*tau over t in [0, 4], within 1e-6.
void criterion_soliton_speed() {
  soliton::SolitonParams params;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    const double t = 4.0 * i / (n - 1);
    const double s = soliton::curvature_peak(params, t, -20.0, 20.0);
    sx += t;
    sy += s;
    sxx += t * t;
    sxy += t * s;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double err = std::fabs(slope - 2.0 * params.tau);
  report(2, "soliton_speed", err <= 1e-6, "slope " + fmt(slope) + ", err " + fmt(err));
}

// 3. Circle closure 1e-6, helix radius 1e-6, frame Gram drift 1e-8.
void criterion_frenet_oracles() {
  const auto circle = frenet::integrate_frenet(
      [](double) { return 1.0; }, [](double) { return 0.0; }, 0.0, 2.0 * std::numbers::pi,
      1e-3);
  const double closure =
      norm(circle.samples.back().position - circle.samples.front().position);

  const double kappa = 1.0, tau = 0.5;
  const double radius = kappa / (kappa * kappa + tau * tau);
  const auto helix = frenet::integrate_frenet([=](double) { return kappa; },
                                              [=](double) { return tau; }, 0.0, 20.0, 1e-3);
  const auto& first = helix.samples.front();
  const Vec3 axis = normalized(first.frame.tangent * tau + first.frame.binormal * kappa);
  const Vec3 axis_pt = first.position + first.frame.normal * radius;
  double radius_err = 0.0;
  double drift = 0.0;
  for (const auto& sample : helix.samples) {
    const Vec3 rel = sample.position - axis_pt;
    radius_err =
        std::max(radius_err, std::fabs(norm(rel - axis * dot(rel, axis)) - radius));
    drift = std::max(drift, sample.frame.gram_deviation());
  }
  for (const auto& sample : circle.samples) {
    drift = std::max(drift, sample.frame.gram_deviation());
  }
  report(3, "frenet_oracles", closure <= 1e-6 && radius_err <= 1e-6 && drift <= 1e-8,
         "closure " + fmt(closure) + ", radius err " + fmt(radius_err) + ", drift " +
             fmt(drift));
}

// 4. Circle endpoint error ratio in [12, 20] for three step halvings.
void criterion_integrator_order() {
  const auto endpoint_error = [](double step) {
    const auto c = frenet::integrate_frenet([](double) { return 1.0; },
                                            [](double) { return 0.0; }, 0.0,
                                            2.0 * std::numbers::pi, step);
    return norm(c.samples.back().position - c.samples.front().position);
  };
  bool ok = true;
  std::string detail = "ratios";
  double prev = endpoint_error(2.0 * std::numbers::pi / 128.0);
  for (int level = 1; level <= 3; ++level) {
    const double cur = endpoint_error(2.0 * std::numbers::pi / (128 << level));
    const double ratio = prev / cur;
    detail += " " + fmt(ratio);
    if (ratio < 12.0 || ratio > 20.0) ok = false;
    prev = cur;
  }
  report(4, "integrator_order", ok, detail);
}

// 5. Line and surface phase integrals agree with each other and with the
// analytic pi*rho^2 within 1e-3 relative.
void criterion_stokes() {
  const double rho = 1.0;
  const auto field = [](const Vec3& x) { return Vec3{-0.5 * x.y, 0.5 * x.x, 0.0}; };
  std::vector<Vec3> contour;
  for (int i = 0; i <= 1000; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 1000;
    contour.push_back({rho * std::cos(a), rho * std::sin(a), 0.0});
  }
  const double line = equilibrium::berry_phase_line(field, contour);
  const auto mesh = equilibrium::make_disk_mesh({0, 0, 0}, rho, 24, 256);
  const double surface = equilibrium::berry_phase_surface(field, mesh, mesh.boundary);
  const double analytic = std::numbers::pi * rho * rho;
  const double rel = std::max({std::fabs(line - surface), std::fabs(line - analytic),
                               std::fabs(surface - analytic)}) /
                     analytic;
  report(5, "stokes_berry", rel <= 1e-3,
         "line " + fmt(line) + ", surface " + fmt(surface) + ", rel " + fmt(rel));
}

// 6. FD Laplacian of the potential recovers -source within 5% at qualified
// interior points of a 48^3 grid.
void criterion_poisson() {
  const int n = 48;
  const double support = n * 0.375;
  auto grid = kernels::ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, n, n, n);
  const double c = n / 2.0;
  double max_src = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double r = std::sqrt((i + 0.5 - c) * (i + 0.5 - c) +
                                   (j + 0.5 - c) * (j + 0.5 - c) +
                                   (k + 0.5 - c) * (k + 0.5 - c));
        if (r < support) {
          const double u = std::cos(0.5 * std::numbers::pi * r / support);
          grid.at(i, j, k) = u * u;
          max_src = std::max(max_src, u * u);
        }
      }
    }
  }
  double max_rel = 0.0;
  int tested = 0;
  for (int k = 6; k < n - 6; k += 7) {
    for (int j = 6; j < n - 6; j += 7) {
      for (int i = 6; i < n - 6; i += 7) {
        const double r = std::sqrt((i + 0.5 - c) * (i + 0.5 - c) +
                                   (j + 0.5 - c) * (j + 0.5 - c) +
                                   (k + 0.5 - c) * (k + 0.5 - c));
        if (r > support - 5.0) continue;
        const Vec3 x = grid.cell_center(i, j, k);
        const double lap = (kernels::newtonian_potential(grid, x + Vec3{1, 0, 0}) +
                            kernels::newtonian_potential(grid, x - Vec3{1, 0, 0}) +
                            kernels::newtonian_potential(grid, x + Vec3{0, 1, 0}) +
                            kernels::newtonian_potential(grid, x - Vec3{0, 1, 0}) +
                            kernels::newtonian_potential(grid, x + Vec3{0, 0, 1}) +
                            kernels::newtonian_potential(grid, x - Vec3{0, 0, 1}) -
                            6.0 * kernels::newtonian_potential(grid, x));
        max_rel = std::max(max_rel, std::fabs(lap + grid.at(i, j, k)) / max_src);
        ++tested;
      }
    }
  }
  report(6, "poisson_kernel", tested > 0 && max_rel <= 0.05,
         "max rel err " + fmt(max_rel) + " over " + std::to_string(tested) + " points");
}

// 7. Straight filament of length 200*rho gives gamma/(2 pi rho) within 1%;
// doubling the segment count moves a ring result by < 0.1%.
void criterion_biot_savart() {
  const double rho = 1.0;
  kernels::Filament straight;
  straight.gamma = 1.0;
  for (int i = 0; i <= 4000; ++i) {
    straight.points.push_back({0.0, 0.0, -100.0 + 200.0 * i / 4000});
  }
  const double expected = 1.0 / (2.0 * std::numbers::pi * rho);
  const double line_rel =
      std::fabs(norm(kernels::biot_savart(straight, {rho, 0, 0})) - expected) / expected;

  const auto ring = [](int n_seg) {
    kernels::Filament fil;
    fil.gamma = 1.0;
    fil.closed = true;
    for (int i = 0; i < n_seg; ++i) {
      const double a = 2.0 * std::numbers::pi * i / n_seg;
      fil.points.push_back({std::cos(a), std::sin(a), 0.0});
    }
    return fil;
  };
  const Vec3 x{0.3, 0.1, 0.4};
  const Vec3 coarse = kernels::biot_savart(ring(512), x);
  const Vec3 fine = kernels::biot_savart(ring(1024), x);
  const double ring_rel = norm(fine - coarse) / norm(fine);
  report(7, "biot_savart", line_rel <= 0.01 && ring_rel <= 1e-3,
         "line rel " + fmt(line_rel) + ", refinement rel " + fmt(ring_rel));
}

// 8. Cutoff identity over an (r, d, L) sweep within 1e-12; zero at r = d.
void criterion_lia_cutoff() {
  soliton::SolitonParams params;
  const Vec3 b{0.0, 0.0, 1.0};
  double worst = 0.0;
  double at_cutoff = 0.0;
  for (double L : {1.0, 5.0, 20.0}) {
    params.half_length = L;
    for (double d : {0.1 * L, 0.5 * L, 1.5 * L}) {
      params.cutoff = d;
      const Vec3 capital = kernels::capital_boundary(params, 2.0, b);
      for (double r : {0.01 * L, 0.1 * L, d, L, 1.9 * L}) {
        const Vec3 lhs = kernels::lia_competition(params, 2.0, b, r, capital);
        const double amp = params.gamma * 2.0 / (4.0 * std::numbers::pi) * std::log(d / r);
        worst = std::max(worst, norm(lhs - b * amp));
        if (r == d) at_cutoff = std::max(at_cutoff, norm(lhs));
      }
    }
  }
  report(8, "lia_cutoff", worst <= 1e-12 && at_cutoff == 0.0,
         "max gap " + fmt(worst) + ", |field| at r=d " + fmt(at_cutoff));
}

// 9. Connection of a normalized family is purely imaginary (|Re| < 1e-8);
// phase family e^{i X^2} u recovers -2X within 1e-6.
void criterion_berry_connection() {
  using equilibrium::Cx;
  using equilibrium::CxVec;
  const auto family = [](double x) {
    const double a = 0.3 * std::sin(x);
    return CxVec{Cx(std::cos(a), 0.0) * std::polar(1.0, x * x),
                 Cx(std::sin(a), 0.0) * std::polar(1.0, -0.5 * x)};
  };
  double worst_real = 0.0;
  for (double x : {-1.0, -0.2, 0.4, 1.3}) {
    const CxVec plus = family(x + 1e-5);
    const CxVec minus = family(x - 1e-5);
    CxVec dm(plus.size());
    for (std::size_t i = 0; i < dm.size(); ++i) dm[i] = (plus[i] - minus[i]) / 2e-5;
    worst_real = std::max(worst_real, std::fabs(equilibrium::inner(family(x), dm).real()));
  }
  const auto phase_family = [](double x) {
    return CxVec{std::polar(1.0 / std::sqrt(2.0), x * x),
                 std::polar(1.0 / std::sqrt(2.0), x * x)};
  };
  const double phase_err =
      std::abs(equilibrium::berry_connection(phase_family, 1.0, 1e-5) - Cx(-2.0, 0.0));
  report(9, "berry_connection", worst_real <= 1e-8 && phase_err <= 1e-6,
         "max |Re| " + fmt(worst_real) + ", phase err " + fmt(phase_err));
}

// 10. Curl and divergence residuals of the constructed fields decay about 4x
// per grid halving across three refinements.
void criterion_residual_convergence() {
  const int ns[4] = {7, 13, 25, 49};
  const int nts[4] = {7, 13, 25, 49};
  double curl[4], div[4];
  for (int level = 0; level < 4; ++level) {
    const auto r = equilibrium::residual_check(cli::make_synthetic_grid(ns[level], nts[level]));
    curl[level] = r.competition_curl.rms;
    div[level] = r.profit_divergence.rms;
  }
  bool ok = true;
  std::string detail = "curl/div ratios";
  for (int level = 1; level < 4; ++level) {
    const double rc = curl[level - 1] / curl[level];
    const double rd = div[level - 1] / div[level];
    detail += " " + fmt(rc) + "/" + fmt(rd);
    if (rc < 2.5 || rc > 5.5 || rd < 2.5 || rd > 5.5) ok = false;
  }
  report(10, "residual_convergence", ok, detail);
}

// 11. Figure shapes at defaults: two maxima in the first figure-4 slice,
// sign oscillation along t for figures 1-2, monotone growth of figure 3 in s
// beyond the soliton core, dominance of the third component.
void criterion_figure_shapes() {
  cli::RunConfig cfg;
  const auto fig1 = cli::sample_figure(cli::FigureSpec::of(1), cfg);
  const auto fig2 = cli::sample_figure(cli::FigureSpec::of(2), cfg);
  const auto fig3 = cli::sample_figure(cli::FigureSpec::of(3), cfg);
  const auto fig4 = cli::sample_figure(cli::FigureSpec::of(4), cfg);
  const int n_s = cfg.n_s, n_t = cfg.n_t;

  int maxima = 0;
  for (int i = 1; i + 1 < n_s; ++i) {
    const double* row = fig4.values.data();  // t index 0
    if (row[i] > row[i - 1] && row[i] > row[i + 1]) ++maxima;
  }

  const auto sign_change_rows = [&](const cli::FigureData& data) {
    int rows = 0;
    for (int i = 0; i < n_s; ++i) {
      for (int ti = 1; ti < n_t; ++ti) {
        if (data.values[(ti - 1) * n_s + i] * data.values[ti * n_s + i] < 0.0) {
          ++rows;
          break;
        }
      }
    }
    return rows;
  };
  const int osc1 = sign_change_rows(fig1);
  const int osc2 = sign_change_rows(fig2);

  bool monotone = true;
  for (int ti = 0; ti < n_t && monotone; ++ti) {
    for (int i = 1; i < n_s; ++i) {
      if (fig3.s[i - 1] < 2.0) continue;
      if (fig3.values[ti * n_s + i] < fig3.values[ti * n_s + i - 1]) {
        monotone = false;
        break;
      }
    }
  }

  const auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
  };
  const double m1 = max_abs(fig1.values), m2 = max_abs(fig2.values),
               m3 = max_abs(fig3.values);

  const bool ok = maxima == 2 && osc1 >= 50 && osc2 >= 50 && monotone && m3 > m1 && m3 > m2;
  report(11, "figure_shapes", ok,
         "maxima " + std::to_string(maxima) + ", oscillating rows " + std::to_string(osc1) +
             "/" + std::to_string(osc2) + ", monotone " + (monotone ? "yes" : "no") +
             ", max|C| " + fmt(m1) + "/" + fmt(m2) + "/" + fmt(m3));
}

// 12. Demand law: R(1) = 0, strict decrease on (0, 1], rotational symmetry of
// equal-radius (P, Q) inputs within 1e-12.
void criterion_demand_law() {
  const bool zero_at_one = soliton::demand_radius(1.0) == 0.0;
  bool decreasing = true;
  double prev = soliton::demand_radius(1e-4);
  for (int i = 1; i <= 1000; ++i) {
    const double m = 1e-4 + (1.0 - 1e-4) * i / 1000.0;
    const double r = soliton::demand_radius(m);
    if (r >= prev) {
      decreasing = false;
      break;
    }
    prev = r;
  }
  double sym_err = 0.0;
  for (double rho : {0.2, 0.7, 1.3}) {
    double base = -1.0;
    for (double angle : {0.0, 0.4, 1.1, 2.9}) {
      const auto sample = soliton::demand_curve_family({rho * std::cos(angle)},
                                                       {rho * std::sin(angle)})[0];
      if (base < 0.0) {
        base = sample.radius;
      } else {
        sym_err = std::max(sym_err, std::fabs(sample.radius - base));
      }
    }
  }
  report(12, "demand_law", zero_at_one && decreasing && sym_err <= 1e-12,
         std::string("R(1)=0 ") + (zero_at_one ? "yes" : "no") + ", decreasing " +
             (decreasing ? "yes" : "no") + ", symmetry err " + fmt(sym_err));
}

// 13. Inflation strictly decreasing in unemployment at fixed expectations.
void criterion_phillips() {
  const auto region = kernels::ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, 8, 8, 8);
  const auto expectations = region;
  std::vector<double> u;
  for (int i = 0; i < 10; ++i) u.push_back(0.02 + 0.02 * i);
  const auto samples = macro::phillips_curve(u, region, expectations, {12.0, 4.0, 4.0});
  bool decreasing = samples.size() == u.size();
  for (std::size_t i = 1; i < samples.size() && decreasing; ++i) {
    decreasing = samples[i].inflation < samples[i - 1].inflation;
  }
  report(13, "phillips_monotone", decreasing,
         "pi(0.02) " + fmt(samples.front().inflation) + ", pi(0.2) " +
             fmt(samples.back().inflation));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// 14. Byte-identical figure output across runs; `verify` exits 0 on defaults.
void criterion_cli_determinism() {
  const std::string cli = MARKETFIELD_CLI_PATH;
  const auto base = std::filesystem::temp_directory_path() / "marketfield_acceptance";
  std::filesystem::remove_all(base);
  const auto run_a = base / "a";
  const auto run_b = base / "b";
  std::filesystem::create_directories(run_a);
  std::filesystem::create_directories(run_b);

  const int rc_a =
      std::system((cli + " figure 4 --out " + run_a.string() + " > /dev/null").c_str());
  const int rc_b =
      std::system((cli + " figure 4 --out " + run_b.string() + " > /dev/null").c_str());
  const std::string csv_a = slurp(run_a / "figure_4.csv");
  const std::string csv_b = slurp(run_b / "figure_4.csv");
  const bool identical = rc_a == 0 && rc_b == 0 && !csv_a.empty() && csv_a == csv_b;

  const int rc_verify = std::system((cli + " verify > /dev/null").c_str());
  std::filesystem::remove_all(base);
  report(14, "cli_determinism", identical && rc_verify == 0,
         std::string("figure runs ") + (identical ? "identical" : "diverged") +
             ", verify exit " + std::to_string(rc_verify));
}

}  // namespace

int main() {
  criterion_soliton_amplitude();
  criterion_soliton_speed();
  criterion_frenet_oracles();
  criterion_integrator_order();
  criterion_stokes();
  criterion_poisson();
  criterion_biot_savart();
  criterion_lia_cutoff();
  criterion_berry_connection();
  criterion_residual_convergence();
  criterion_figure_shapes();
  criterion_demand_law();
  criterion_phillips();
  criterion_cli_determinism();
  std::printf("%d of 14 criteria passed\n", 14 - failures);
  return failures == 0 ? 0 : 1;
}
