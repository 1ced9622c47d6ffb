#pragma once
/*
 * Central finite differences with domain-aware step control.
 *
 * First derivatives use h = cbrt(eps)*max(1,|x|), the standard
 * truncation/rounding optimum for a plain central difference. Hessians
 * use a uniform step h = 2e-3*max(1,scale) and two Richardson levels
 * (stencils at h, h/2, h/4), leaving O(h^6) truncation. Both refinements
 * are needed because Hessian *determinants* of boosted states cancel
 * entry products by factors of ~1e3, so per-entry noise must sit near
 * 1e-9 relative for the 1e-5 determinant verification tolerance. The
 * right `scale` is the curvature length of the function (for entropies:
 * the rest radius), which boosted state coordinates do not reflect —
 * callers that know it should pass it. When a stencil point leaves the
 * admissible domain the step is halved, at most twice, before the
 * computation is abandoned with FiniteDifferenceFailure.
 */

#include <cmath>
#include <limits>
#include <utility>

#include "galcl/errors.hpp"
#include "galcl/smallvec.hpp"

namespace galcl {

inline double fd_step_first(double scale) {
  static const double h0 =
      std::cbrt(std::numeric_limits<double>::epsilon());
  return h0 * std::max(1.0, std::abs(scale));
}

inline double fd_step_second(double scale) {
  return 2e-3 * std::max(1.0, std::abs(scale));
}

[[noreturn]] inline void fd_fail() {
  throw FiniteDifferenceFailure(
      "finite-difference stencil leaves the admissible domain even after "
      "shrinking the step twice");
}

// Directional derivative of f (scalar- or Vec-valued) along dir at x.
// `ok(state)` must accept every stencil point; the step is halved at most
// twice before failing.
template <class F, class Ok>
auto fd_directional(F&& f, const Vec& x, const Vec& dir, Ok&& ok) {
  double h = fd_step_first(max_abs(x));
  for (int attempt = 0; attempt < 3; ++attempt, h *= 0.5) {
    Vec xp = x + h * dir;
    Vec xm = x - h * dir;
    if (!ok(xp) || !ok(xm)) continue;
    return (0.5 / h) * (f(xp) - f(xm));
  }
  fd_fail();
}

// Gradient of a scalar function by coordinate-wise central differences.
template <class F, class Ok>
Vec fd_gradient(F&& f, const Vec& x, Ok&& ok) {
  Vec g = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i) {
    Vec e = Vec::zero(x.m);
    e[i] = 1.0;
    g[i] = fd_directional(f, x, e, ok);
  }
  return g;
}

// Jacobian of a Vec-valued function; column j holds df/dx_j.
template <class F, class Ok>
Mat fd_jacobian_matrix(F&& f, const Vec& x, Ok&& ok) {
  Mat jac = Mat::zero(x.m);
  for (int j = 0; j < x.m; ++j) {
    Vec e = Vec::zero(x.m);
    e[j] = 1.0;
    Vec col = fd_directional(f, x, e, ok);
    for (int i = 0; i < x.m; ++i) jac.at(i, j) = col[i];
  }
  return jac;
}

namespace detail {

template <class Ok>
bool hessian_stencil_ok(const Vec& x, const Vec& h, Ok&& ok) {
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) {
      Vec p = x;
      p[i] += h[i];
      p[j] += h[j];
      Vec q = x;
      q[i] -= h[i];
      q[j] -= h[j];
      Vec r = x;
      r[i] += h[i];
      r[j] -= h[j];
      Vec s = x;
      s[i] -= h[i];
      s[j] += h[j];
      if (!ok(p) || !ok(q) || !ok(r) || !ok(s)) return false;
    }
  return true;
}

// Single-step symmetric Hessian with per-coordinate steps: second-order
// central differences on the diagonal, 4-point cross stencil off it. All
// stencil points must already be admissible.
template <class F>
Mat hessian_at_step(F&& f, const Vec& x, const Vec& h) {
  const int m = x.m;
  Mat hess = Mat::zero(m);
  const double fc = f(x);
  for (int i = 0; i < m; ++i) {
    Vec p = x, q = x;
    p[i] += h[i];
    q[i] -= h[i];
    hess.at(i, i) = (f(p) - 2.0 * fc + f(q)) / (h[i] * h[i]);
    for (int j = i + 1; j < m; ++j) {
      Vec pp = x, mm = x, pm = x, mp = x;
      pp[i] += h[i];
      pp[j] += h[j];
      mm[i] -= h[i];
      mm[j] -= h[j];
      pm[i] += h[i];
      pm[j] -= h[j];
      mp[i] -= h[i];
      mp[j] += h[j];
      double v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h[i] * h[j]);
      hess.at(i, j) = v;
      hess.at(j, i) = v;
    }
  }
  return hess;
}

}  // namespace detail

// Symmetric Hessian of a scalar function. Two Richardson extrapolation
// levels (stencils at h, h/2, h/4) cancel the O(h^2) and O(h^4)
// truncation terms; determinants of boosted-state Hessians cancel entry
// products so strongly that a plain stencil cannot reach the verification
// tolerance anywhere in the admissible box. scale_hint, when
// non-negative, overrides the step scale (see the header comment);
// otherwise each coordinate's own magnitude is used.
template <class F, class Ok>
Mat fd_hessian(F&& f, const Vec& x, Ok&& ok, double scale_hint = -1.0) {
  Vec h = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i)
    h[i] = fd_step_second(scale_hint >= 0.0 ? scale_hint : x[i]);
  for (int attempt = 0; attempt < 3; ++attempt, h = 0.5 * h) {
    Vec h2 = 0.5 * h, h4 = 0.25 * h;
    if (!detail::hessian_stencil_ok(x, h, ok) ||
        !detail::hessian_stencil_ok(x, h2, ok) ||
        !detail::hessian_stencil_ok(x, h4, ok))
      continue;
    Mat d0 = detail::hessian_at_step(f, x, h);
    Mat d1 = detail::hessian_at_step(f, x, h2);
    Mat d2 = detail::hessian_at_step(f, x, h4);
    Mat e1 = (1.0 / 3.0) * (4.0 * d1 - d0);
    Mat e2 = (1.0 / 3.0) * (4.0 * d2 - d1);
    return (1.0 / 15.0) * (16.0 * e2 - e1);
  }
  fd_fail();
}

}  // namespace galcl
