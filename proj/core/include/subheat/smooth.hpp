#pragma once

#include <cmath>

namespace subheat {

// All smooth cutoffs in the project derive from the single mollifier
// g(u) = exp(-1/u) on u > 0, so outputs are bit-reproducible.

inline double mollifier_g(double u) {
  return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
}

// Smooth monotone step: 0 for u <= 0, 1 for u >= 1.
inline double smooth_step01(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double a = mollifier_g(u);
  double b = mollifier_g(1.0 - u);
  return a / (a + b);
}

// Step used by the Gaussian wave split: 0 for x <= -1, 1 for x >= -1/2.
inline double wave_step(double x) {
  return smooth_step01(2.0 * (x + 1.0));
}

// Even cutoff: 1 on |x| <= 1, 0 on |x| >= 2.
inline double cutoff_phi(double x) {
  return smooth_step01(2.0 - std::abs(x));
}

// Dyadic shell bump psi = phi(x) - phi(2x); for x > 0 supported in [1/2, 2].
inline double dyadic_psi(double x) {
  return cutoff_phi(x) - cutoff_phi(2.0 * x);
}

// Window for the scale-invariant local Sobolev norm: 1 on [3/4, 3/2],
// supported in (1/2, 2).
inline double eta_window(double x) {
  if (x <= 0.5 || x >= 2.0) return 0.0;
  double up = smooth_step01((x - 0.5) / 0.25);
  double down = smooth_step01((2.0 - x) / 0.5);
  return up * down;
}

// Smooth bump supported in [lo, hi], equal to 1 on [2*lo, hi/2] (dyadic
// shoulders).  Requires 0 < lo < hi/4.
inline double interval_bump(double x, double lo, double hi) {
  if (x <= lo || x >= hi) return 0.0;
  double up = smooth_step01(std::log2(x / lo));
  double down = smooth_step01(std::log2(hi / x));
  return up * down;
}

}  // namespace subheat
