#pragma once

// Reference computations that do not go through the library: closed forms and
// adaptive quadrature on the continuum integrands.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Integral over [-L, L] split at the kink y = 0.
inline double integrate_sym(const std::function<double(double)>& f, double L, double tol = 1e-13) {
  return integrate(f, -L, 0.0, tol) + integrate(f, 0.0, L, tol);
}

// int_R e^{-y^2} e^{-a|y|} dy = sqrt(pi) e^{a^2/4} erfc(a/2).
inline double gauss_laplace(double a) { return std::sqrt(M_PI) * std::exp(0.25 * a * a) * std::erfc(0.5 * a); }

// Sum of Gaussians with given (amplitude, center, width) and its derivative.
struct Bumps {
  std::vector<double> amp, ctr, wid;
  double operator()(double y) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      const double z = (y - ctr[k]) / wid[k];
      s += amp[k] * std::exp(-z * z);
    }
    return s;
  }
  double d(double y) const {
    double s = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
      const double z = (y - ctr[k]) / wid[k];
      s += -2.0 * z / wid[k] * amp[k] * std::exp(-z * z);
    }
    return s;
  }
};

// Least-squares slope of log(err) against log(h), negated.
inline double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double x = std::log(h[k]), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
