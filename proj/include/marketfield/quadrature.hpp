// Adaptive Simpson quadrature for real- and complex-valued integrands.

#pragma once

#include <cmath>
#include <complex>
#include <functional>

namespace marketfield::quadrature {

namespace detail {

template <typename T, typename F>
T simpson(F&& f, double a, double b, T fa, T fm, T fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T, typename F>
T adapt(F&& f, double a, double b, T fa, T fm, T fb, T whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = simpson<T>(f, a, m, fa, flm, fm);
  const T right = simpson<T>(f, m, b, fm, frm, fb);
  const T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt<T>(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt<T>(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance tol. Handles a > b by sign
// flip. depth bounds the recursion; 48 halvings put the interval width at
// machine scale, which also tames integrands with jump discontinuities.
template <typename T, typename F>
T integrate(F&& f, double a, double b, double tol = 1e-12, int depth = 48) {
  if (a == b) return T{};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double m = 0.5 * (a + b);
  const T fa = f(a);
  const T fm = f(m);
  const T fb = f(b);
  const T whole = detail::simpson<T>(f, a, b, fa, fm, fb);
  return sign * detail::adapt<T>(f, a, b, fa, fm, fb, whole, tol, depth);
}

inline double integrate_real(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12) {
  return integrate<double>(f, a, b, tol);
}

inline std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol = 1e-12) {
  return integrate<std::complex<double>>(f, a, b, tol);
}

}  // namespace marketfield::quadrature
