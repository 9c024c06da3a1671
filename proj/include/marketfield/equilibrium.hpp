// Money-dynamics and Berry-phase layer, field construction from potentials,
// and finite-difference residual checks of the equilibrium field equations
// on sampled grids.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "marketfield/errors.hpp"
#include "marketfield/vec3.hpp"

namespace marketfield::equilibrium {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;

// Inner product, conjugate-linear in the first slot.
Cx inner(const CxVec& a, const CxVec& b);

// Money supply decomposed over a basis of financial channels.
struct MoneyState {
  std::vector<Cx> coefficients;  // C_k
  std::vector<CxVec> basis;      // m_k, each unit norm
  double activity = 0.0;         // A

  void validate() const;  // unit norms within 1e-12, congruent sizes
  CxVec total_money() const;
};

// Market activity A(t) = Re[i (M, dM/dt)] from a sampled normalized
// trajectory, centered differences at interior samples. Throws TooFewSamples
// when fewer than 3 samples are given.
std::vector<double> activity_of(const std::vector<CxVec>& trajectory, double dt);

// Coefficient evolution C_n(t) = exp(-int_0^t [(m_n, dm_n/dt') + iA(t')] dt').
Cx evolve_coefficient(const std::function<Cx(double)>& connection,
                      const std::function<double(double)>& activity, double t);

// Berry connection i (m(x), dm/dx) with a centered-difference derivative.
// Real within 1e-8 for normalized families; the full complex value is
// returned so callers can check.
Cx berry_connection(const std::function<CxVec(double)>& basis_vector, double x, double dx);

// Off-diagonal inner products (m_n, dm_k/dx) of a basis family; entry (n, k),
// diagonal zeroed. Parallel-transported bases give entries below 1e-8.
std::vector<std::vector<Cx>> parallel_transport_check(
    const std::function<std::vector<CxVec>(double)>& family, double x, double dx);

using ChoiceSampler = std::function<Vec3(const Vec3&)>;

// Berry phase as the midpoint-rule line integral of the choice field around a
// closed polyline. Throws OpenContour unless first and last points coincide.
double berry_phase_line(const ChoiceSampler& choice, const std::vector<Vec3>& contour);

struct Triangle {
  Vec3 a, b, c;
};

struct SurfaceMesh {
  std::vector<Triangle> triangles;
  std::vector<Vec3> boundary;  // closed polyline, first == last
};

// Triangulated disk spanning a circle; boundary orientation matches the
// triangle orientation.
SurfaceMesh make_disk_mesh(const Vec3& center, double radius, int n_radial, int n_angular);

// Berry phase as the surface integral of rot C_h over a spanning mesh: the
// curl is taken by centered finite differences at triangle centroids and
// dotted with the area vectors. Throws MeshBoundaryMismatch when the mesh
// boundary does not match the given contour.
double berry_phase_surface(const ChoiceSampler& choice, const SurfaceMesh& mesh,
                           const std::vector<Vec3>& contour, double fd_step = 1e-5);

// Uniform space-time grid of the sampled fields. ch, phi and lnM are inputs;
// c and p are filled by construct_fields.
struct FieldGrid {
  Vec3 origin;
  Vec3 spacing{1.0, 1.0, 1.0};
  int nx = 0, ny = 0, nz = 0;
  double t0 = 0.0;
  double dt = 0.0;
  int nt = 0;

  std::vector<std::vector<Vec3>> ch;     // choice, per time slice
  std::vector<std::vector<double>> phi;  // price potential
  std::vector<std::vector<double>> ln_m; // log money supply
  std::vector<std::vector<Vec3>> c;      // competition (constructed)
  std::vector<std::vector<Vec3>> p;      // profit (constructed)
  std::vector<std::uint8_t> one_sided_time;  // slices using one-sided d/dt

  static FieldGrid allocate(const Vec3& origin, const Vec3& spacing, int nx, int ny, int nz,
                            double t0, double dt, int nt);

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) +
                                           static_cast<std::size_t>(ny) * k);
  }

  Vec3 point(int i, int j, int k) const {
    return {origin.x + i * spacing.x, origin.y + j * spacing.y, origin.z + k * spacing.z};
  }

  double time(int n) const { return t0 + n * dt; }
};

// Fills C = -dCh/dt - grad(phi) and P = rot Ch by centered differences;
// boundary time slices use one-sided differences and are flagged.
// Throws TooFewSlices with fewer than 3 time slices.
void construct_fields(FieldGrid& grid);

struct ResidualEntry {
  double max_abs = 0.0;
  double rms = 0.0;
};

// Residuals of the equilibrium relations over interior grid points:
//   div C + d(lnM)/dt            (money-supply balance)
//   rot C + dP/dt                (competition vorticity vs profit evolution)
//   div P                        (absence of profit sources)
//   rot P - dC/dt - K            (profit circulation; K = grad lnM)
//   div Ch + d(phi)/dt           (choice/price offset)
//   lap(phi) - d(lnM)/dt - d2(phi)/dt2   (inflation condition)
struct ResidualReport {
  ResidualEntry money_balance;      // (14)
  ResidualEntry competition_curl;   // (15)
  ResidualEntry profit_divergence;  // (16)
  ResidualEntry profit_curl;        // (17)
  ResidualEntry choice_price;       // (19)
  ResidualEntry inflation;          // (20)
};

// Throws IncompleteGrid when fields are missing or no interior points exist.
ResidualReport residual_check(const FieldGrid& grid);

}  // namespace marketfield::equilibrium
