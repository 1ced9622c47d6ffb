#pragma once
/*
 * Fixed-capacity vectors and matrices for 2- and 3-component states.
 *
 * Every conserved state in the library is a Vec with m = 2 or 3; the group
 * representations are m x m Mat values. Capacity is fixed so the types are
 * trivially copyable and allocation-free in the solver hot loop.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "galcl/errors.hpp"

namespace galcl {

inline constexpr int kMaxDim = 3;

struct Vec {
  int m = 0;
  std::array<double, kMaxDim> a{};

  static Vec zero(int m) {
    Vec v;
    v.m = m;
    return v;
  }
  static Vec of(double x, double y) { return Vec{2, {x, y, 0.0}}; }
  static Vec of(double x, double y, double z) { return Vec{3, {x, y, z}}; }

  double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
};

// A conserved state: components (theta, zeta) for m=2, (theta, zeta, psi)
// for m=3 (for gas dynamics these read (rho, rho*u, total energy)).
using State = Vec;

struct Mat {
  int m = 0;
  std::array<double, kMaxDim * kMaxDim> a{};  // row-major m x m

  static Mat zero(int m) {
    Mat r;
    r.m = m;
    return r;
  }
  static Mat identity(int m) {
    Mat r = zero(m);
    for (int i = 0; i < m; ++i) r.at(i, i) = 1.0;
    return r;
  }

  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i * kMaxDim + j)];
  }
  double& at(int i, int j) {
    return a[static_cast<std::size_t>(i * kMaxDim + j)];
  }
};

inline Vec operator+(const Vec& x, const Vec& y) {
  Vec r = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i) r[i] = x[i] + y[i];
  return r;
}

inline Vec operator-(const Vec& x, const Vec& y) {
  Vec r = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i) r[i] = x[i] - y[i];
  return r;
}

inline Vec operator*(double s, const Vec& x) {
  Vec r = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i) r[i] = s * x[i];
  return r;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < x.m; ++i) s += x[i] * y[i];
  return s;
}

inline double max_abs(const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < x.m; ++i) s = std::max(s, std::abs(x[i]));
  return s;
}

inline double sum_abs(const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < x.m; ++i) s += std::abs(x[i]);
  return s;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r.at(i, j) = x.at(i, j) + y.at(i, j);
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r.at(i, j) = x.at(i, j) - y.at(i, j);
  return r;
}

inline Mat operator*(double s, const Mat& x) {
  Mat r = Mat::zero(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) r.at(i, j) = s * x.at(i, j);
  return r;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.m);
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) {
      double s = 0.0;
      for (int k = 0; k < x.m; ++k) s += x.at(i, k) * y.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

inline Vec operator*(const Mat& x, const Vec& v) {
  Vec r = Vec::zero(x.m);
  for (int i = 0; i < x.m; ++i) {
    double s = 0.0;
    for (int k = 0; k < x.m; ++k) s += x.at(i, k) * v[k];
    r[i] = s;
  }
  return r;
}

inline double max_abs(const Mat& x) {
  double s = 0.0;
  for (int i = 0; i < x.m; ++i)
    for (int j = 0; j < x.m; ++j) s = std::max(s, std::abs(x.at(i, j)));
  return s;
}

// Matrix-vector application with an explicit dimension check; the checked
// entry point used by library callers acting on states.
inline Vec apply(const Mat& g, const Vec& w) {
  if (g.m != w.m)
    throw DomainViolation("apply: matrix is " + std::to_string(g.m) + "x" +
                          std::to_string(g.m) + " but state has " +
                          std::to_string(w.m) + " components");
  return g * w;
}

inline std::string format_state(const Vec& w) {
  std::string s = "(";
  for (int i = 0; i < w.m; ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  s += ")";
  return s;
}

}  // namespace galcl
