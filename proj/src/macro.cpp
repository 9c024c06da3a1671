#include "marketfield/macro.hpp"

namespace marketfield::macro {

double capital_rate(double u) {
  if (!(u > 0.0)) throw ZeroUnemployment("capital_rate: unemployment rate must be > 0");
  return 1.0 / u;
}

std::vector<PhillipsSample> phillips_curve(const std::vector<double>& u_values,
                                           const kernels::ScalarGrid& source_region,
                                           const kernels::ScalarGrid& expectations,
                                           const Vec3& x) {
  if (!source_region.same_geometry(expectations)) {
    throw GridMismatch("phillips_curve: region and expectations grids are not congruent");
  }
  std::vector<PhillipsSample> out;
  out.reserve(u_values.size());
  kernels::ScalarGrid source = source_region;
  for (double u : u_values) {
    const double rate = capital_rate(u);
    source.values.assign(source.values.size(), rate);
    PhillipsSample sample;
    sample.u = u;
    sample.capital_rate = rate;
    sample.inflation = kernels::inflation_selfconsistent(source, expectations, x);
    out.push_back(sample);
  }
  return out;
}

}  // namespace marketfield::macro
