// Verification suite: cross-module identity and convergence checks with
// named, overridable tolerances. Used by the `verify` CLI subcommand.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "marketfield/config.hpp"
#include "marketfield/equilibrium.hpp"

namespace marketfield::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // the quantity compared against the threshold
  double threshold = 0.0;  // effective tolerance after overrides
  std::string detail;
};

// Runs every check at its default tolerance, with per-name overrides.
// Checks: soliton_peak_amplitude, soliton_peak_speed, frenet_circle,
// frenet_helix, frenet_frame_drift, frenet_order, stokes_equality,
// poisson_laplacian, biot_savart_straight, biot_savart_refinement,
// lia_cutoff_identity, berry_connection_reality, residual_convergence,
// demand_monotonicity.
std::vector<CheckResult> run_verification(const RunConfig& cfg,
                                          const std::map<std::string, double>& overrides = {});

bool all_passed(const std::vector<CheckResult>& results);

// Synthetic divergence-free choice field with a static price potential,
// satisfying the choice/price offset relation exactly; used by the residual
// convergence checks. n is the spatial resolution per axis, nt the number of
// time slices over a fixed extent, so doubling both halves h and dt.
equilibrium::FieldGrid make_synthetic_grid(int n, int nt);

}  // namespace marketfield::cli
