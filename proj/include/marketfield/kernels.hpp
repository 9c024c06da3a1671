// Integral solutions of the field equations: Newtonian-potential quadrature,
// Biot-Savart filament integrals, the local-induction approximation and the
// capital-cutoff form.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "marketfield/errors.hpp"
#include "marketfield/soliton.hpp"
#include "marketfield/vec3.hpp"

namespace marketfield::kernels {

// Uniform rectangular grid of source samples, x-fastest storage order.
template <typename T>
struct SourceGrid {
  Vec3 origin;
  Vec3 spacing{1.0, 1.0, 1.0};
  int nx = 0, ny = 0, nz = 0;
  std::vector<T> values;

  static SourceGrid zeros(const Vec3& origin, const Vec3& spacing, int nx, int ny, int nz) {
    SourceGrid g;
    g.origin = origin;
    g.spacing = spacing;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.values.assign(static_cast<std::size_t>(nx) * ny * nz, T{});
    return g;
  }

  double cell_volume() const { return spacing.x * spacing.y * spacing.z; }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) +
                                           static_cast<std::size_t>(ny) * k);
  }

  Vec3 cell_center(int i, int j, int k) const {
    return {origin.x + (i + 0.5) * spacing.x, origin.y + (j + 0.5) * spacing.y,
            origin.z + (k + 0.5) * spacing.z};
  }

  T& at(int i, int j, int k) { return values[index(i, j, k)]; }
  const T& at(int i, int j, int k) const { return values[index(i, j, k)]; }

  bool same_geometry(const SourceGrid& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz &&
           norm(origin - o.origin) < 1e-12 && norm(spacing - o.spacing) < 1e-12;
  }
};

using ScalarGrid = SourceGrid<double>;
using VectorGrid = SourceGrid<Vec3>;

// Polyline filament carrying the competition circulation gamma.
struct Filament {
  std::vector<Vec3> points;
  double gamma = 0.0;
  bool closed = false;

  void validate() const;  // >= 2 points, consecutive points distinct
};

// Midpoint-rule Newtonian potential (1/4pi) sum value * dV / |x - x_cell|,
// excluding cells closer than half the minimum spacing to the target.
double newtonian_potential(const ScalarGrid& sources, const Vec3& x);
Vec3 newtonian_potential(const VectorGrid& sources, const Vec3& x);

// Biot-Savart competition field of a filament minus the capital offset:
//   (gamma/4pi) sum (x - x_mid) x de / |x - x_mid|^3  -  capital.
// Throws OnFilament when x is within 1e-9 of any segment.
Vec3 biot_savart(const Filament& filament, const Vec3& x, const Vec3& capital = Vec3{});

// Local-induction approximation:
//   C = (gamma*kappa/4pi) ln(2L/r) b - K.
// Throws NonpositiveRadius when r <= 0.
Vec3 lia_competition(const soliton::SolitonParams& params, double kappa, const Vec3& binormal,
                     double r, const Vec3& capital = Vec3{});

// Boundary capital K = (gamma*kappa/4pi) ln(2L/d) b; with this K,
// lia_competition reduces to (gamma*kappa/4pi) ln(d/r) b.
// Throws InvalidCutoff when d <= 0 or d >= 2L.
Vec3 capital_boundary(const soliton::SolitonParams& params, double kappa, const Vec3& binormal);

using VectorFieldSampler = std::function<Vec3(const Vec3&)>;

// Price-level vector: Newtonian potential of the capital-rate sources minus
// the choice evolution rate at x.
Vec3 inflation_from_sources(const VectorGrid& capital_rate, const VectorFieldSampler& choice_rate,
                            const Vec3& x);

// Choice from the inflation-rate sources (Newtonian potential with a sign flip).
Vec3 choice_from_inflation(const VectorGrid& inflation_rate, const Vec3& x);

// Self-consistent inflation: potential of the summed capital-rate and
// inflation-acceleration sources. Throws GridMismatch when the grids differ.
double inflation_selfconsistent(const ScalarGrid& capital_rate,
                                const ScalarGrid& inflation_accel, const Vec3& x);
Vec3 inflation_selfconsistent(const VectorGrid& capital_rate, const VectorGrid& inflation_accel,
                              const Vec3& x);

}  // namespace marketfield::kernels
