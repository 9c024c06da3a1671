#include "marketfield/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace marketfield::kernels {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kFilamentEps = 1e-9;

template <typename T>
T potential_sum(const SourceGrid<T>& g, const Vec3& x) {
  const double exclusion = 0.5 * std::min({g.spacing.x, g.spacing.y, g.spacing.z});
  const double dv = g.cell_volume();
  T acc{};
  for (int k = 0; k < g.nz; ++k) {
    const double zc = g.origin.z + (k + 0.5) * g.spacing.z;
    for (int j = 0; j < g.ny; ++j) {
      const double yc = g.origin.y + (j + 0.5) * g.spacing.y;
      const std::size_t row = g.index(0, j, k);
      for (int i = 0; i < g.nx; ++i) {
        const double xc = g.origin.x + (i + 0.5) * g.spacing.x;
        const double dx = x.x - xc;
        const double dy = x.y - yc;
        const double dz = x.z - zc;
        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (dist < exclusion) continue;  // self-cell exclusion
        acc += g.values[row + i] * (dv / (kFourPi * dist));
      }
    }
  }
  return acc;
}

double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  double u = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return norm(p - (a + ab * u));
}

}  // namespace

void Filament::validate() const {
  if (points.size() < 2) throw std::invalid_argument("Filament: needs at least 2 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (norm(points[i] - points[i - 1]) <= 0.0) {
      throw std::invalid_argument("Filament: consecutive points must be distinct");
    }
  }
}

double newtonian_potential(const ScalarGrid& sources, const Vec3& x) {
  return potential_sum(sources, x);
}

Vec3 newtonian_potential(const VectorGrid& sources, const Vec3& x) {
  return potential_sum(sources, x);
}

Vec3 biot_savart(const Filament& filament, const Vec3& x, const Vec3& capital) {
  filament.validate();
  const auto& pts = filament.points;
  const std::size_t n_seg = pts.size() - (filament.closed ? 0 : 1);
  Vec3 acc;
  for (std::size_t i = 0; i < n_seg; ++i) {
    const Vec3& a = pts[i];
    const Vec3& b = pts[(i + 1) % pts.size()];
    if (dist_point_segment(x, a, b) < kFilamentEps) {
      throw OnFilament("biot_savart: evaluation point lies on the filament");
    }
    const Vec3 mid = (a + b) * 0.5;
    const Vec3 de = b - a;
    const Vec3 rel = x - mid;
    const double d = norm(rel);
    acc += cross(de, rel) / (d * d * d);
  }
  return acc * (filament.gamma / kFourPi) - capital;
}

Vec3 lia_competition(const soliton::SolitonParams& params, double kappa, const Vec3& binormal,
                     double r, const Vec3& capital) {
  if (!(r > 0.0)) throw NonpositiveRadius("lia_competition: cross-section radius must be > 0");
  const double amp =
      params.gamma * kappa / kFourPi * std::log(2.0 * params.half_length / r);
  return binormal * amp - capital;
}

Vec3 capital_boundary(const soliton::SolitonParams& params, double kappa,
                      const Vec3& binormal) {
  const double d = params.cutoff;
  const double two_l = 2.0 * params.half_length;
  if (!(d > 0.0) || d >= two_l) {
    throw InvalidCutoff("capital_boundary: cutoff must satisfy 0 < d < 2L");
  }
  const double amp = params.gamma * kappa / kFourPi * std::log(two_l / d);
  return binormal * amp;
}

Vec3 inflation_from_sources(const VectorGrid& capital_rate, const VectorFieldSampler& choice_rate,
                            const Vec3& x) {
  return newtonian_potential(capital_rate, x) - choice_rate(x);
}

Vec3 choice_from_inflation(const VectorGrid& inflation_rate, const Vec3& x) {
  return -newtonian_potential(inflation_rate, x);
}

namespace {

template <typename T>
auto selfconsistent(const SourceGrid<T>& capital_rate, const SourceGrid<T>& inflation_accel,
                    const Vec3& x) {
  if (!capital_rate.same_geometry(inflation_accel)) {
    throw GridMismatch("inflation_selfconsistent: source grids are not congruent");
  }
  SourceGrid<T> combined = capital_rate;
  for (std::size_t i = 0; i < combined.values.size(); ++i) {
    combined.values[i] += inflation_accel.values[i];
  }
  return potential_sum(combined, x);
}

}  // namespace

double inflation_selfconsistent(const ScalarGrid& capital_rate,
                                const ScalarGrid& inflation_accel, const Vec3& x) {
  return selfconsistent(capital_rate, inflation_accel, x);
}

Vec3 inflation_selfconsistent(const VectorGrid& capital_rate, const VectorGrid& inflation_accel,
                              const Vec3& x) {
  return selfconsistent(capital_rate, inflation_accel, x);
}

}  // namespace marketfield::kernels
