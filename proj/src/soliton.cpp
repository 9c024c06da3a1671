#include "marketfield/soliton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "marketfield/quadrature.hpp"

namespace marketfield::soliton {

void SolitonParams::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("SolitonParams: beta must be > 0");
  if (!(half_length > 0.0)) throw std::invalid_argument("SolitonParams: L must be > 0");
  if (!(cutoff > 0.0)) throw std::invalid_argument("SolitonParams: cutoff d must be > 0");
}

double sech(double x) {
  // 2 e^{-|x|} / (1 + e^{-2|x|}); cosh overflows near |x| = 710.
  const double e = std::exp(-std::fabs(x));
  return 2.0 * e / (1.0 + e * e);
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double curvature(const SolitonParams& params, double s, double t) {
  return 4.0 * params.beta * sech(2.0 * params.beta * (s - 2.0 * params.tau * t));
}

double curvature_peak(const SolitonParams& params, double t, double s_min, double s_max) {
  double lo = s_min;
  double hi = s_max;
  // Ternary search on the unimodal sech profile.
  while (hi - lo > 1e-13 * std::max(1.0, std::fabs(hi) + std::fabs(lo))) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (curvature(params, m1, t) < curvature(params, m2, t)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return 0.5 * (lo + hi);
}

std::complex<double> hasimoto_psi(const SolitonParams& params, double s, double t) {
  const double kappa = curvature(params, s, t);
  return std::polar(kappa, params.tau * s);
}

std::complex<double> hasimoto_psi(const SolitonParams& params,
                                  const std::function<double(double)>& tau_of_s, double s,
                                  double t) {
  const double kappa = curvature(params, s, t);
  const double phase = quadrature::integrate_real(tau_of_s, 0.0, s, 1e-13);
  return std::polar(kappa, phase);
}

ChoiceComponents choice_components(const SolitonParams& params, double s, double t) {
  const double beta = params.beta;
  const double nu = params.nu();
  const double x = 2.0 * beta * (s - 2.0 * params.tau * t);
  const double y = 4.0 * beta * params.tau * t;
  const double amp = 1.0 / (beta * (1.0 + nu * nu));
  ChoiceComponents out;
  out.c1 = amp * (std::sin(nu * x) * sech(x) + std::sin(nu * y) * sech(y));
  out.c2 = params.l_scale * amp * (std::cos(nu * x) * sech(x) - std::cos(nu * y) * sech(y));
  out.c3 = s - params.l_scale * amp * (std::tanh(x) + std::tanh(y));
  return out;
}

double choice_magnitude_pq(const SolitonParams& params, double s, double t) {
  const ChoiceComponents c = choice_components(params, s, t);
  return std::hypot(c.c1, c.c2);
}

DerivedFields derived_fields(const SolitonParams& params, double S, double t, double x1,
                             double x2) {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 <= 0.0) {
    throw ZeroRadius("derived_fields: profit component is singular on the capital axis (r = 0)");
  }
  const double beta = params.beta;
  const double tau = params.tau;
  const double L = params.half_length;
  const double nu = params.nu();
  const double denom = 1.0 + nu * nu;
  const double r = std::sqrt(r2);
  const double X = 2.0 * beta * (S + tau * r * t / (4.0 * std::numbers::pi * L));
  const double Y = beta * tau * t / (2.0 * std::numbers::pi * L);
  DerivedFields out;
  out.theta3 = (log_cosh(X) - log_cosh(Y)) / (beta * denom);
  const double sY = sech(Y);
  const double sX = sech(X);
  out.c3 = beta * params.activity / denom * (sY * sY - sX * sX);
  out.p3 = 2.0 * beta * tau / denom * (X * t / r2) * sY * sY;
  return out;
}

double demand_radius(double ch_mag, double a) {
  if (!(ch_mag > 0.0) || ch_mag > 1.0) {
    throw OutOfDomain("demand_radius: arcsech requires 0 < ch_mag <= 1");
  }
  // arcsech(m) = ln((1 + sqrt(1 - m^2)) / m)
  const double arcsech = std::log((1.0 + std::sqrt((1.0 - ch_mag) * (1.0 + ch_mag))) / ch_mag);
  return a * arcsech;
}

std::vector<DemandSample> demand_curve_family(const std::vector<double>& p_values,
                                              const std::vector<double>& q_values, double a) {
  std::vector<DemandSample> out;
  out.reserve(p_values.size() * q_values.size());
  for (double q : q_values) {
    for (double p : p_values) {
      DemandSample row;
      row.p = p;
      row.q = q;
      row.ch_mag = sech(std::hypot(p, q) / a);
      row.radius = demand_radius(row.ch_mag, a);
      out.push_back(row);
    }
  }
  return out;
}

}  // namespace marketfield::soliton
