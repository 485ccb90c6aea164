#pragma once

#include <array>
#include <cmath>

#include "hybridcurve/hybrid.hpp"

namespace hybridcurve {

/// Dense 3x3 real matrix, row-major, acting on (b, c, d) coordinates.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }

  static Mat3 metric() {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.m[3 * i + j] = kMetric[i][j];
    return g;
  }

  static Mat3 metric_inverse() {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.m[3 * i + j] = kMetricInverse[i][j];
    return g;
  }

  static Mat3 from_columns(const SpatialHybrid& x, const SpatialHybrid& y,
                           const SpatialHybrid& z) {
    Mat3 r;
    r.m = {x.b, y.b, z.b, x.c, y.c, z.c, x.d, y.d, z.d};
    return r;
  }

  static Mat3 diagonal(double a, double b, double c) {
    Mat3 r;
    r.m = {a, 0, 0, 0, b, 0, 0, 0, c};
    return r;
  }

  double operator()(int i, int j) const { return m[3 * i + j]; }
  double& operator()(int i, int j) { return m[3 * i + j]; }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  double det() const {
    const auto& a = m;
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
           a[2] * (a[3] * a[7] - a[4] * a[6]);
  }

  /// General inverse via the adjugate. Caller ensures det is away from zero.
  Mat3 inverse() const {
    const auto& a = m;
    const double d = det();
    Mat3 r;
    r.m = {
        (a[4] * a[8] - a[5] * a[7]) / d, (a[2] * a[7] - a[1] * a[8]) / d,
        (a[1] * a[5] - a[2] * a[4]) / d, (a[5] * a[6] - a[3] * a[8]) / d,
        (a[0] * a[8] - a[2] * a[6]) / d, (a[2] * a[3] - a[0] * a[5]) / d,
        (a[3] * a[7] - a[4] * a[6]) / d, (a[1] * a[6] - a[0] * a[7]) / d,
        (a[0] * a[4] - a[1] * a[3]) / d,
    };
    return r;
  }
};

inline Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = x.m[i] - y.m[i];
  return r;
}

inline SpatialHybrid operator*(const Mat3& a, const SpatialHybrid& x) {
  return {a(0, 0) * x.b + a(0, 1) * x.c + a(0, 2) * x.d,
          a(1, 0) * x.b + a(1, 1) * x.c + a(1, 2) * x.d,
          a(2, 0) * x.b + a(2, 1) * x.c + a(2, 2) * x.d};
}

inline double max_abs(const Mat3& a) {
  double r = 0.0;
  for (double v : a.m) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace hybridcurve
