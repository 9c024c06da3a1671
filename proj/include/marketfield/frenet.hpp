// Frenet-Serret integration of space curves from curvature/torsion profiles,
// rigid alignment against the closed-form choice curve, binormal flow and
// the polarization-rotation angle.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "marketfield/errors.hpp"
#include "marketfield/soliton.hpp"
#include "marketfield/vec3.hpp"

namespace marketfield::frenet {

using ScalarFn = std::function<double(double)>;

struct FrenetFrame {
  Vec3 tangent{1.0, 0.0, 0.0};
  Vec3 normal{0.0, 1.0, 0.0};
  Vec3 binormal{0.0, 0.0, 1.0};

  // Gram-Schmidt re-orthonormalization; binormal rebuilt as tangent x normal.
  void orthonormalize();

  // Max deviation of the frame Gram matrix from the identity.
  double gram_deviation() const;
};

struct CurveSample {
  double s = 0.0;
  Vec3 position;
  FrenetFrame frame;
};

struct Curve {
  std::vector<CurveSample> samples;
  double step = 0.0;
};

struct AlignmentReport {
  double rms_after_alignment = 0.0;
  std::array<std::array<double, 3>, 3> rotation{};  // row-major
  Vec3 translation;
};

// Integrates d tangent/ds = kappa*normal, d normal/ds = tau*binormal - kappa*tangent,
// d binormal/ds = -tau*normal, d position/ds = tangent with classical RK4 and
// per-step re-orthonormalization. Throws InvalidStep when step <= 0 or exceeds
// the range extent.
Curve integrate_frenet(const ScalarFn& kappa, const ScalarFn& tau, double s_min, double s_max,
                       double step, const FrenetFrame& initial = FrenetFrame{},
                       const Vec3& origin = Vec3{});

// Integrates the soliton curvature profile at time t with the constant torsion
// from params, then rigidly aligns the result to the closed-form component
// curve by least squares. The residual RMS is informational: it is tracked as
// a regression value, not asserted near zero.
std::pair<Curve, AlignmentReport> reconstruct_soliton_curve(
    const soliton::SolitonParams& params, double t, double s_min, double s_max, double step);

// Sampled closed-form curve (c1, c2, c3) over the same arclength grid.
std::vector<Vec3> closed_form_curve(const soliton::SolitonParams& params, double t,
                                    double s_min, double s_max, double step);

// Optimal rigid motion (rotation + translation) mapping `moving` onto `fixed`
// in the least-squares sense, with the post-alignment RMS.
AlignmentReport align_rigid(const std::vector<Vec3>& moving, const std::vector<Vec3>& fixed);

// Binormal-flow velocity kappa(s) * binormal(s) at every curve sample.
std::vector<Vec3> binormal_velocity(const Curve& curve, const ScalarFn& kappa);

// Polarization rotation angle: quadrature of tau over [0, L].
double polarization_rotation(const ScalarFn& tau, double L);

}  // namespace marketfield::frenet
