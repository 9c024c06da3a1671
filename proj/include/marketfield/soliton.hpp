// Closed-form solutions of the choice field: the sech curvature soliton,
// the Hasimoto wave function, the explicit choice-curve components, the
// derived Berry-phase/competition/profit fields and the demand-circle law.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "marketfield/errors.hpp"

namespace marketfield::soliton {

// Parameter record feeding every closed form. nu is always recomputed
// from beta and tau, never stored.
struct SolitonParams {
  double beta = 0.5;      // inverse-arclength scale, > 0
  double tau = 0.25;      // torsion, inverse-arclength
  double l_scale = 1.0;   // amplitude scale of the second/third components
  double half_length = 5.0;  // L, half-length of the choice region, > 0
  double activity = 1.0;  // market activity A
  double gamma = 1.0;     // competition circulation
  double cutoff = 1.0;    // d, capital cutoff radius, > 0

  double nu() const { return 2.0 * tau / beta; }

  // Throws std::invalid_argument when beta, L or d is nonpositive.
  void validate() const;
};

struct ChoiceComponents {
  double c1 = 0.0;  // price axis
  double c2 = 0.0;  // goods axis
  double c3 = 0.0;  // capital axis
};

struct DerivedFields {
  double theta3 = 0.0;  // Berry-phase component
  double c3 = 0.0;      // non-price competition component
  double p3 = 0.0;      // profit component
};

// Overflow-safe sech and ln cosh.
double sech(double x);
double log_cosh(double x);

// Curvature of the choice curve: 4*beta * sech(2*beta*(s - 2*tau*t)).
// Peak 4*beta at s = 2*tau*t; total function.
double curvature(const SolitonParams& params, double s, double t);

// Sub-grid peak location of the curvature profile at time t, found by
// ternary search over [s_min, s_max] (the profile is unimodal).
double curvature_peak(const SolitonParams& params, double t, double s_min, double s_max);

// Hasimoto wave function psi = kappa * exp(i * tau * s) for the constant
// torsion carried in params. |psi| equals the curvature.
std::complex<double> hasimoto_psi(const SolitonParams& params, double s, double t);

// General-torsion variant: the phase is the quadrature of tau_of_s over [0, s].
std::complex<double> hasimoto_psi(const SolitonParams& params,
                                  const std::function<double(double)>& tau_of_s, double s,
                                  double t);

// Explicit choice-curve components with x = 2b(s - 2*tau*t), y = 4b*tau*t:
//   c1 = (1/(b(1+nu^2))) (sin(nu x)/cosh x + sin(nu y)/cosh y)
//   c2 = (l/(b(1+nu^2))) (cos(nu x)/cosh x - cos(nu y)/cosh y)
//   c3 = s - (l/(b(1+nu^2))) (tanh x + tanh y)
ChoiceComponents choice_components(const SolitonParams& params, double s, double t);

// sqrt(c1^2 + c2^2) of choice_components.
double choice_magnitude_pq(const SolitonParams& params, double s, double t);

// Derived Berry-phase / competition / profit fields with
//   X = 2b(S + tau*r*t/(4*pi*L)),  Y = b*tau*t/(2*pi*L),  r^2 = x1^2 + x2^2:
//   theta3 = (1/(b(1+nu^2))) ln(cosh X / cosh Y)
//   c3     = (b A/(1+nu^2)) (sech^2 Y - sech^2 X)
//   p3     = (2 b tau/(1+nu^2)) (X t / r^2) sech^2 Y
// Throws ZeroRadius when x1 = x2 = 0 (the profit component divides by r^2).
DerivedFields derived_fields(const SolitonParams& params, double S, double t, double x1,
                             double x2);

inline constexpr double kDemandScaleDefault = 157.91367041742973790;  // 16*pi^2

// Demand-circle radius R = a * arcsech(ch_mag). Strictly decreasing on (0, 1].
// Throws OutOfDomain unless 0 < ch_mag <= 1.
double demand_radius(double ch_mag, double a = kDemandScaleDefault);

struct DemandSample {
  double p = 0.0;
  double q = 0.0;
  double ch_mag = 0.0;  // |C_h| = sech(sqrt(p^2+q^2)/a)
  double radius = 0.0;  // circle radius of the equilibrium locus
};

// Samples the demand-circle family over a (P, Q) grid: |C_h| = sech(rho/a)
// with rho = sqrt(P^2 + Q^2), and the associated circle radius.
std::vector<DemandSample> demand_curve_family(const std::vector<double>& p_values,
                                              const std::vector<double>& q_values,
                                              double a = kDemandScaleDefault);

}  // namespace marketfield::soliton
