#include "marketfield/verify.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "marketfield/frenet.hpp"
#include "marketfield/kernels.hpp"
#include "marketfield/soliton.hpp"

namespace marketfield::cli {

namespace {

using soliton::SolitonParams;

double tol_for(const std::map<std::string, double>& overrides, const std::string& name,
               double fallback) {
  const auto it = overrides.find(name);
  return it == overrides.end() ? fallback : it->second;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckResult check_peak_amplitude(const SolitonParams& params, double tol) {
  const double t = 1.0;
  const double peak_s = soliton::curvature_peak(params, t, -10.0, 10.0);
  const double peak = soliton::curvature(params, peak_s, t);
  const double err = std::fabs(peak - 4.0 * params.beta);
  return {"soliton_peak_amplitude", err <= tol, err, tol,
          "peak " + fmt(peak) + " at s = " + fmt(peak_s)};
}

CheckResult check_peak_speed(const SolitonParams& params, double tol) {
  std::vector<double> ts, peaks;
  for (int i = 0; i <= 40; ++i) {
    const double t = 4.0 * i / 40.0;
    ts.push_back(t);
    peaks.push_back(soliton::curvature_peak(params, t, -20.0, 20.0));
  }
  const double slope = fit_slope(ts, peaks);
  const double err = std::fabs(slope - 2.0 * params.tau);
  return {"soliton_peak_speed", err <= tol, err, tol, "fitted slope " + fmt(slope)};
}

CheckResult check_circle(double tol) {
  const auto curve = frenet::integrate_frenet([](double) { return 1.0; },
                                              [](double) { return 0.0; }, 0.0,
                                              2.0 * std::numbers::pi, 1e-3);
  const double closure = norm(curve.samples.back().position - curve.samples.front().position);
  return {"frenet_circle", closure <= tol, closure, tol, "closure gap"};
}

CheckResult check_helix(double tol) {
  const double kappa = 1.0, tau = 0.5;
  const double omega2 = kappa * kappa + tau * tau;
  const double radius = kappa / omega2;
  const auto curve = frenet::integrate_frenet([=](double) { return kappa; },
                                              [=](double) { return tau; }, 0.0, 20.0, 1e-3);
  // Helix axis through start + R*normal with direction (tau*t + kappa*b)/omega.
  const auto& first = curve.samples.front();
  const Vec3 axis_dir = normalized(first.frame.tangent * tau + first.frame.binormal * kappa);
  const Vec3 axis_pt = first.position + first.frame.normal * radius;
  double err = 0.0;
  for (const auto& sample : curve.samples) {
    const Vec3 rel = sample.position - axis_pt;
    const double dist = norm(rel - axis_dir * dot(rel, axis_dir));
    err = std::max(err, std::fabs(dist - radius));
  }
  return {"frenet_helix", err <= tol, err, tol, "max radius deviation"};
}

CheckResult check_frame_drift(double tol) {
  const auto curve = frenet::integrate_frenet([](double s) { return std::sin(s) + 1.5; },
                                              [](double s) { return std::cos(s); }, -10.0,
                                              10.0, 1e-3);
  double drift = 0.0;
  for (const auto& sample : curve.samples) {
    drift = std::max(drift, sample.frame.gram_deviation());
  }
  return {"frenet_frame_drift", drift <= tol, drift, tol, "max Gram deviation"};
}

double circle_endpoint_error(double step) {
  const auto curve = frenet::integrate_frenet([](double) { return 1.0; },
                                              [](double) { return 0.0; }, 0.0,
                                              2.0 * std::numbers::pi, step);
  return norm(curve.samples.back().position - curve.samples.front().position);
}

CheckResult check_order(double deviation) {
  // Three step halvings; each error ratio must sit within 16 +/- deviation.
  const double lo = 16.0 - deviation, hi = 16.0 + deviation;
  double base = circle_endpoint_error(2.0 * std::numbers::pi / 128.0);
  bool ok = true;
  double worst = 16.0;
  std::ostringstream detail;
  detail << "ratios";
  for (int level = 1; level <= 3; ++level) {
    const double refined = circle_endpoint_error(2.0 * std::numbers::pi / (128 << level));
    const double ratio = base / refined;
    detail << ' ' << fmt(ratio);
    if (std::fabs(ratio - 16.0) > std::fabs(worst - 16.0)) worst = ratio;
    if (ratio < lo || ratio > hi) ok = false;
    base = refined;
  }
  return {"frenet_order", ok, worst, deviation, detail.str()};
}

CheckResult check_stokes(double tol) {
  const double rho = 1.0;
  const auto field = [](const Vec3& x) { return Vec3{-0.5 * x.y, 0.5 * x.x, 0.0}; };
  std::vector<Vec3> contour;
  const int n_seg = 1000;
  for (int i = 0; i <= n_seg; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n_seg;
    contour.push_back({rho * std::cos(a), rho * std::sin(a), 0.0});
  }
  const double line = equilibrium::berry_phase_line(field, contour);
  const auto mesh = equilibrium::make_disk_mesh({0, 0, 0}, rho, 24, 256);
  const double surface = equilibrium::berry_phase_surface(field, mesh, mesh.boundary);
  const double analytic = std::numbers::pi * rho * rho;
  const double rel = std::max({std::fabs(line - surface) / analytic,
                               std::fabs(line - analytic) / analytic,
                               std::fabs(surface - analytic) / analytic});
  return {"stokes_equality", rel <= tol, rel, tol,
          "line " + fmt(line) + ", surface " + fmt(surface)};
}

// Smooth compact bump source centered on the grid.
kernels::ScalarGrid make_bump_grid(int n, double support_radius_cells) {
  auto grid = kernels::ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, n, n, n);
  const double c = n / 2.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const double r = std::sqrt((i + 0.5 - c) * (i + 0.5 - c) +
                                   (j + 0.5 - c) * (j + 0.5 - c) +
                                   (k + 0.5 - c) * (k + 0.5 - c));
        if (r < support_radius_cells) {
          const double u = std::cos(0.5 * std::numbers::pi * r / support_radius_cells);
          grid.at(i, j, k) = u * u;
        }
      }
    }
  }
  return grid;
}

CheckResult laplacian_check(int n, double tol, const std::string& name) {
  const double support = n * 0.375;
  const auto grid = make_bump_grid(n, support);
  const double h = 1.0;
  double max_rel = 0.0;
  double max_src = 0.0;
  for (double v : grid.values) max_src = std::max(max_src, v);

  // Qualified points: >= 5 cells inside the source support and >= 5 cells
  // from the grid boundary; probe a coarse sub-lattice of them.
  const double c = n / 2.0;
  int tested = 0;
  for (int k = 6; k < n - 6; k += 5) {
    for (int j = 6; j < n - 6; j += 5) {
      for (int i = 6; i < n - 6; i += 5) {
        const double r = std::sqrt((i + 0.5 - c) * (i + 0.5 - c) +
                                   (j + 0.5 - c) * (j + 0.5 - c) +
                                   (k + 0.5 - c) * (k + 0.5 - c));
        if (r > support - 5.0) continue;
        const Vec3 x = grid.cell_center(i, j, k);
        const double lap =
            (kernels::newtonian_potential(grid, x + Vec3{h, 0, 0}) +
             kernels::newtonian_potential(grid, x - Vec3{h, 0, 0}) +
             kernels::newtonian_potential(grid, x + Vec3{0, h, 0}) +
             kernels::newtonian_potential(grid, x - Vec3{0, h, 0}) +
             kernels::newtonian_potential(grid, x + Vec3{0, 0, h}) +
             kernels::newtonian_potential(grid, x - Vec3{0, 0, h}) -
             6.0 * kernels::newtonian_potential(grid, x)) /
            (h * h);
        max_rel = std::max(max_rel, std::fabs(lap + grid.at(i, j, k)) / max_src);
        ++tested;
      }
    }
  }
  return {name, tested > 0 && max_rel <= tol, max_rel, tol,
          "max relative error over " + std::to_string(tested) + " points"};
}

CheckResult check_biot_savart_straight(double tol) {
  const double rho = 1.0;
  const double half = 100.0 * rho;
  kernels::Filament fil;
  fil.gamma = 1.0;
  const int n_seg = 4000;
  for (int i = 0; i <= n_seg; ++i) {
    fil.points.push_back({0.0, 0.0, -half + 2.0 * half * i / n_seg});
  }
  const Vec3 result = kernels::biot_savart(fil, {rho, 0.0, 0.0});
  const double expected = fil.gamma / (2.0 * std::numbers::pi * rho);
  const double rel = std::fabs(norm(result) - expected) / expected;
  // Direction must be azimuthal (+y here).
  const double dir_err = norm(normalized(result) - Vec3{0.0, 1.0, 0.0});
  const bool ok = rel <= tol && dir_err <= 1e-6;
  return {"biot_savart_straight", ok, rel, tol, "direction error " + fmt(dir_err)};
}

kernels::Filament make_ring_filament(int n_seg) {
  kernels::Filament fil;
  fil.gamma = 1.0;
  fil.closed = true;
  for (int i = 0; i < n_seg; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n_seg;
    fil.points.push_back({std::cos(a), std::sin(a), 0.0});
  }
  return fil;
}

CheckResult check_biot_savart_refinement(double tol) {
  const Vec3 x{0.3, 0.1, 0.4};
  const Vec3 coarse = kernels::biot_savart(make_ring_filament(512), x);
  const Vec3 fine = kernels::biot_savart(make_ring_filament(1024), x);
  const double rel = norm(fine - coarse) / norm(fine);
  return {"biot_savart_refinement", rel <= tol, rel, tol, "relative change on doubling"};
}

CheckResult check_lia_cutoff(const SolitonParams& base, double tol) {
  double worst = 0.0;
  const Vec3 b{0.0, 0.0, 1.0};
  SolitonParams params = base;
  for (double L : {1.0, 5.0, 20.0}) {
    params.half_length = L;
    for (double d : {0.1 * L, 0.5 * L, 1.5 * L}) {
      params.cutoff = d;
      const Vec3 capital = kernels::capital_boundary(params, 2.0, b);
      for (double r : {0.01 * L, 0.1 * L, d, L, 1.9 * L}) {
        const Vec3 lhs = kernels::lia_competition(params, 2.0, b, r, capital);
        const double amp = params.gamma * 2.0 / (4.0 * std::numbers::pi) * std::log(d / r);
        worst = std::max(worst, norm(lhs - b * amp));
        if (r == d) worst = std::max(worst, norm(lhs));
      }
    }
  }
  return {"lia_cutoff_identity", worst <= tol, worst, tol, "max identity gap over sweep"};
}

CheckResult check_berry_connection(double tol_real, double tol_phase) {
  using equilibrium::Cx;
  using equilibrium::CxVec;
  // Normalized two-component family with nontrivial X dependence.
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
  // Phase family e^{i theta(X)} u with theta = X^2 recovers -theta' = -2X.
  const auto phase_family = [](double x) {
    return CxVec{std::polar(1.0 / std::sqrt(2.0), x * x),
                 std::polar(1.0 / std::sqrt(2.0), x * x)};
  };
  const Cx conn = equilibrium::berry_connection(phase_family, 1.0, 1e-5);
  const double phase_err = std::abs(conn - Cx(-2.0, 0.0));
  const bool ok = worst_real <= tol_real && phase_err <= tol_phase;
  return {"berry_connection_reality", ok, std::max(worst_real, phase_err),
          std::max(tol_real, tol_phase),
          "re " + fmt(worst_real) + ", phase err " + fmt(phase_err)};
}

CheckResult check_residual_convergence(double deviation) {
  // Halving h and dt must shrink the curl/divergence residuals by about 4x.
  const auto coarse = make_synthetic_grid(10, 7);
  const auto fine = make_synthetic_grid(20, 14);
  const auto rc = equilibrium::residual_check(coarse);
  const auto rf = equilibrium::residual_check(fine);
  const double r15 = rc.competition_curl.max_abs / rf.competition_curl.max_abs;
  const double r16 = rc.profit_divergence.max_abs / rf.profit_divergence.max_abs;
  const double lo = 4.0 - deviation, hi = 4.0 + deviation;
  const bool ok = r15 >= lo && r15 <= hi && r16 >= lo && r16 <= hi;
  const double worst = std::fabs(r15 - 4.0) > std::fabs(r16 - 4.0) ? r15 : r16;
  return {"residual_convergence", ok, worst, deviation,
          "curl ratio " + fmt(r15) + ", div ratio " + fmt(r16)};
}

CheckResult check_demand(double /*unused*/) {
  double prev = soliton::demand_radius(1e-4);
  double worst_step = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 1000; ++i) {
    const double m = 1e-4 + (1.0 - 1e-4) * i / 1000.0;
    const double r = soliton::demand_radius(m);
    worst_step = std::max(worst_step, r - prev);
    prev = r;
  }
  const bool ok = worst_step < 0.0 && soliton::demand_radius(1.0) == 0.0;
  return {"demand_monotonicity", ok, worst_step, 0.0, "max consecutive increment"};
}

}  // namespace

equilibrium::FieldGrid make_synthetic_grid(int n, int nt) {
  const double extent = 2.0;
  const double t_extent = 0.5;
  const double h = extent / (n - 1);
  const double dt = t_extent / (nt - 1);
  auto grid =
      equilibrium::FieldGrid::allocate({0.1, 0.2, 0.3}, {h, h, h}, n, n, n, 0.0, dt, nt);
  for (int ti = 0; ti < nt; ++ti) {
    const double f = std::cos(grid.time(ti));
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          const Vec3 x = grid.point(i, j, k);
          const std::size_t idx = grid.index(i, j, k);
          // Ch = curl(0, 0, sin x sin 2y sin z) * f(t): divergence free, so a
          // static price potential satisfies the choice/price offset relation.
          // The mixed frequencies keep the discrete stencil symbols from
          // commuting, so residuals show true truncation error.
          grid.ch[ti][idx] = Vec3{2.0 * std::sin(x.x) * std::cos(2.0 * x.y) * std::sin(x.z),
                                  -std::cos(x.x) * std::sin(2.0 * x.y) * std::sin(x.z), 0.0} *
                             f;
          grid.phi[ti][idx] = std::sin(x.x) * std::cos(x.y) * std::sin(x.z);
          grid.ln_m[ti][idx] = 0.0;
        }
      }
    }
  }
  equilibrium::construct_fields(grid);
  return grid;
}

std::vector<CheckResult> run_verification(const RunConfig& cfg,
                                          const std::map<std::string, double>& overrides) {
  const auto params = cfg.params();
  std::vector<CheckResult> results;
  results.push_back(
      check_peak_amplitude(params, tol_for(overrides, "soliton_peak_amplitude", 1e-12)));
  results.push_back(check_peak_speed(params, tol_for(overrides, "soliton_peak_speed", 1e-6)));
  results.push_back(check_circle(tol_for(overrides, "frenet_circle", 1e-6)));
  results.push_back(check_helix(tol_for(overrides, "frenet_helix", 1e-6)));
  results.push_back(check_frame_drift(tol_for(overrides, "frenet_frame_drift", 1e-8)));
  results.push_back(check_order(tol_for(overrides, "frenet_order", 4.0)));
  results.push_back(check_stokes(tol_for(overrides, "stokes_equality", 1e-3)));
  results.push_back(
      laplacian_check(32, tol_for(overrides, "poisson_laplacian", 0.05), "poisson_laplacian"));
  results.push_back(
      check_biot_savart_straight(tol_for(overrides, "biot_savart_straight", 0.01)));
  results.push_back(
      check_biot_savart_refinement(tol_for(overrides, "biot_savart_refinement", 1e-3)));
  results.push_back(check_lia_cutoff(params, tol_for(overrides, "lia_cutoff_identity", 1e-12)));
  results.push_back(check_berry_connection(
      tol_for(overrides, "berry_connection_reality", 1e-8), 1e-6));
  results.push_back(
      check_residual_convergence(tol_for(overrides, "residual_convergence", 1.5)));
  results.push_back(check_demand(tol_for(overrides, "demand_monotonicity", 0.0)));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace marketfield::cli
