#pragma once

#include "hybridcurve/framed.hpp"
#include "hybridcurve/motions.hpp"
#include "hybridcurve/reconstruct.hpp"

namespace hybridcurve::example {

/// Built-in demonstration curve: an astroid-like base curve with an adapted
/// frame on [0, 2pi]. Eight singular half-period points, constant curvature
/// entries L = sqrt(10), M = 3 and tangent factor alpha = sin t cos t.
FramedCurve curve(const FrameValidation& cfg = {});

/// The same data as a curvature quadruple (sqrt(10), 3, 0, sin t cos t) with
/// the frame signs delta1 = delta2 = -1.
Curvature curvature();

/// Frame and base point at t = 0 for reconstruction.
InitialFrame initial_frame();

/// Frame values at an arbitrary parameter, usable as alternative initial data.
InitialFrame initial_frame_at(double t);

/// Frame matrix F(t) with columns (n1, n2, mu), evaluated in closed form.
Mat3 frame_matrix(double t);

/// Frame transport F(t1) F(t0)^-1, a guaranteed member of the motion group.
Motion frame_transport(double t0, double t1);

/// Reference closed forms of the four derived curves (pedal and contrapedal
/// are taken relative to p = 0, the involute with c1 = c2 = 0).
SpaceCurve evolute_reference();
SpaceCurve involute_reference();
SpaceCurve pedal_reference();
SpaceCurve contrapedal_reference();

/// Closed forms of the involute coefficient pair for c1 = c2 = 0.
ScalarFn involute_f1_reference();
ScalarFn involute_f2_reference();

}  // namespace hybridcurve::example
