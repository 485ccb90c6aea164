#pragma once

#include "hybridcurve/mat3.hpp"

namespace hybridcurve {

namespace tol {
/// Membership tolerance for the motion group.
inline constexpr double kMotion = 1e-9;
}  // namespace tol

/// Member of the group of spatial hybrid motions: a 3x3 matrix A with
/// A^T G A = G and det A = 1, acting on (b, c, d) coordinates.
/// Immutable; all operations are pure.
class Motion {
 public:
  /// Validates membership. Throws NotAMotion when either invariant fails
  /// beyond `tol`.
  static Motion from_matrix(const Mat3& m, double tol = tol::kMotion);

  static Motion identity() { return Motion(Mat3::identity()); }

  const Mat3& matrix() const { return m_; }

  /// Exact closed-form inverse G^-1 A^T G (valid for group members).
  Motion inverse() const;

  SpatialHybrid operator()(const SpatialHybrid& x) const { return m_ * x; }

  friend Motion operator*(const Motion& a, const Motion& b) { return Motion(a.m_ * b.m_); }

  /// Max-norm of A^T G A - G.
  static double metric_defect(const Mat3& m);

 private:
  explicit Motion(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

}  // namespace hybridcurve
