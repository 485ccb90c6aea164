#pragma once

#include <cstddef>
#include <vector>

#include "hybridcurve/framed.hpp"
#include "hybridcurve/hybrid.hpp"

namespace hybridcurve {

namespace tol {
/// Lower bound on the evolute denominator.
inline constexpr double kDenominator = 1e-10;
/// Pointwise bound on the extracted n entry for "adapted" preconditions.
inline constexpr double kAdaptedN = 1e-8;
}  // namespace tol

struct DerivedOptions {
  double denominator_tol = tol::kDenominator;
  double adapted_tol = tol::kAdaptedN;
  std::size_t grid_points = 257;
};

/// Distance squared function f_x(t) = g(gamma(t) - x, gamma(t) - x) of a
/// framed curve with respect to a fixed point, with closed-form derivatives
/// up to order three expressed through the curvature.
class DistanceSquared {
 public:
  DistanceSquared(FramedCurve fc, SpatialHybrid x);

  double value(double t) const { return derivative(t, 0); }
  /// f_x^(order)(t) for order 0..3.
  double derivative(double t, std::size_t order) const;

  const Curvature& curvature() const { return curv_; }
  const SpatialHybrid& point() const { return x_; }

 private:
  FramedCurve fc_;
  Curvature curv_;
  SpaceCurve mu_;
  SpatialHybrid x_;
};

/// Denominator m n' - m' n + delta1 delta2 l m^2 + l n^2 of the evolute and
/// of the third-derivative characterization.
ScalarFn evolute_denominator(const Curvature& curv);

/// Evolute through the general curvature formula. Throws DegenerateEvolute
/// when the denominator comes within opts.denominator_tol of zero on the grid.
SpaceCurve evolute(const FramedCurve& fc, const DerivedOptions& opts = {});

/// Evolute through the adapted-frame formula
///   gamma - (alpha/M) n1 - delta1 delta2 (M alpha' - M' alpha)/(L M^2) n2.
/// Requires the frame to be adapted (extracted n identically zero); agrees
/// with the general route on such frames.
SpaceCurve evolute_adapted(const FramedCurve& fc, const DerivedOptions& opts = {});

/// Solution (f1, f2) of f1' = sigma d1 d2 M f2, f2' = -M f1 - alpha with the
/// homogeneous constants of the analytic backend.
struct InvoluteSolution {
  ScalarFn f1;
  ScalarFn f2;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Analytic involute coefficients. Requires an adapted frame whose M entry is
/// a constant expression; the forcing alpha must close under differentiation
/// (trigonometric polynomials, exponentials, polynomials and their products
/// do). Throws ClosedFormUnavailable otherwise.
InvoluteSolution involute_coefficients(const FramedCurve& fc, double c1 = 0.0, double c2 = 0.0,
                                       const DerivedOptions& opts = {});

/// Involute gamma + f1 n1 + f2 mu from a coefficient solution.
SpaceCurve involute(const FramedCurve& fc, const InvoluteSolution& sol);

/// Analytic involute with homogeneous constants c1, c2 (both zero by default).
SpaceCurve involute(const FramedCurve& fc, double c1 = 0.0, double c2 = 0.0,
                    const DerivedOptions& opts = {});

/// Involute computed by fourth-order fixed-step integration of the (f1, f2)
/// system; works for non-constant M. Stores the coefficient samples alongside
/// the curve points.
struct NumericInvolute {
  std::vector<double> t;
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<SpatialHybrid> points;
  double h = 0.0;
};

NumericInvolute involute_numeric(const FramedCurve& fc, double f1_0, double f2_0, double h,
                                 const DerivedOptions& opts = {});

/// Pedal curve p - sigma d1 d2 g(p - gamma, n2) n2 of an adapted frame; the
/// sign factors are read from the frame's Gram values.
SpaceCurve pedal(const FramedCurve& fc, const SpatialHybrid& p, const DerivedOptions& opts = {});

/// Contrapedal curve p - d1 d2 g(p - gamma, mu) mu of an adapted frame.
SpaceCurve contrapedal(const FramedCurve& fc, const SpatialHybrid& p,
                       const DerivedOptions& opts = {});

/// The evolute packaged with the frame (n1, mu); Def 3.1 validation reruns.
FramedCurve evolute_frame(const FramedCurve& fc, const DerivedOptions& opts = {});

/// The analytic involute packaged with the frame (n1, mu).
FramedCurve involute_frame(const FramedCurve& fc, double c1 = 0.0, double c2 = 0.0,
                           const DerivedOptions& opts = {});

/// Curve sampled on a uniform grid.
struct SampledCurve {
  std::vector<double> t;
  std::vector<SpatialHybrid> p;
};

/// Evolute of a sampled base curve carried by the symbolic frame (nu1, nu2).
/// The tangent data (alpha and alpha') is recovered from the position samples
/// by finite differences, so the result genuinely measures how well the
/// samples trace a framed curve. The grid must be uniform with step h; a
/// 4-node margin at each end is dropped.
SampledCurve evolute_from_samples(const SpaceCurve& nu1, const SpaceCurve& nu2,
                                  const std::vector<double>& ts,
                                  const std::vector<SpatialHybrid>& base, double h,
                                  const DerivedOptions& opts = {});

}  // namespace hybridcurve
