// Phillips-curve relations composing the field kernels: inflation as a
// function of unemployment through the capital-rate link dK/dt = 1/u.

#pragma once

#include <vector>

#include "marketfield/errors.hpp"
#include "marketfield/kernels.hpp"

namespace marketfield::macro {

struct PhillipsSample {
  double u = 0.0;             // unemployment rate, > 0
  double capital_rate = 0.0;  // dK/dt = 1/u
  double inflation = 0.0;     // resulting price-level magnitude
};

// dK/dt = 1/u. Throws ZeroUnemployment when u <= 0.
double capital_rate(double u);

// For each u, fills the capital-rate source uniformly with 1/u over the
// region grid and evaluates the self-consistent inflation relation at x with
// the given expectations (inflation-acceleration) field. With fixed
// expectations the output is strictly decreasing in u.
std::vector<PhillipsSample> phillips_curve(const std::vector<double>& u_values,
                                           const kernels::ScalarGrid& source_region,
                                           const kernels::ScalarGrid& expectations,
                                           const Vec3& x);

}  // namespace marketfield::macro
