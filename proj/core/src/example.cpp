#include "hybridcurve/example.hpp"

#include <cmath>
#include <numbers>

namespace hybridcurve::example {

namespace {
const Interval kDomain{0.0, 2.0 * std::numbers::pi};
}

FramedCurve curve(const FrameValidation& cfg) {
  SpaceCurve gamma = SpaceCurve::parse(
      {"sin(t)^3 - sqrt(10)/4*cos(2*t)", "sin(t)^3", "cos(t)^3"}, kDomain);
  SpaceCurve n1 = SpaceCurve::parse({"cos(t)", "cos(t)", "sin(t)"}, kDomain);
  SpaceCurve n2 = SpaceCurve::parse(
      {"-3 - sqrt(10)*sin(t)", "-sqrt(10)*sin(t)", "sqrt(10)*cos(t)"}, kDomain);
  return FramedCurve::make(std::move(gamma), std::move(n1), std::move(n2), cfg);
}

Curvature curvature() {
  Curvature c;
  c.l = ScalarFn::parse("sqrt(10)");
  c.m = ScalarFn::parse("3");
  c.n = ScalarFn::parse("0");
  c.alpha = ScalarFn::parse("sin(t)*cos(t)");
  c.delta1 = -1;
  c.delta2 = -1;
  return c;
}

InitialFrame initial_frame() { return initial_frame_at(0.0); }

InitialFrame initial_frame_at(double t) {
  const double r = std::sqrt(10.0);
  InitialFrame init;
  init.nu1 = {std::cos(t), std::cos(t), std::sin(t)};
  init.nu2 = {-3.0 - r * std::sin(t), -r * std::sin(t), r * std::cos(t)};
  init.gamma = {std::pow(std::sin(t), 3) - r / 4.0 * std::cos(2.0 * t), std::pow(std::sin(t), 3),
                std::pow(std::cos(t), 3)};
  init.t0 = 0.0;
  return init;
}

Mat3 frame_matrix(double t) {
  const double r = std::sqrt(10.0);
  const double s = std::sin(t);
  const double c = std::cos(t);
  const SpatialHybrid n1{c, c, s};
  const SpatialHybrid n2{-3.0 - r * s, -r * s, r * c};
  const SpatialHybrid mu{r + 3.0 * s, 3.0 * s, -3.0 * c};
  return Mat3::from_columns(n1, n2, mu);
}

Motion frame_transport(double t0, double t1) {
  const Mat3 a = frame_matrix(t1) * frame_matrix(t0).inverse();
  return Motion::from_matrix(a);
}

SpaceCurve evolute_reference() {
  return SpaceCurve::parse({"2/3*sin(t)^3 - 3*sqrt(10)/20*cos(2*t)", "2/3*sin(t)^3",
                            "2/3*cos(t)^3"},
                           kDomain);
}

SpaceCurve involute_reference() {
  return SpaceCurve::parse({"10/13*sin(t)^3 - 9*sqrt(10)/52*cos(2*t)", "10/13*sin(t)^3",
                            "10/13*cos(t)^3"},
                           kDomain);
}

SpaceCurve pedal_reference() {
  return SpaceCurve::parse({"cos(2*t)*(-3*sqrt(10)/4 - 5/2*sin(t))", "cos(2*t)*(-5/2*sin(t))",
                            "cos(2*t)*(5/2*cos(t))"},
                           kDomain);
}

SpaceCurve contrapedal_reference() {
  return SpaceCurve::parse({"1/2*cos(2*t)*(sqrt(10) + 3*sin(t))", "1/2*cos(2*t)*(3*sin(t))",
                            "-1/2*cos(2*t)*(3*cos(t))"},
                           kDomain);
}

ScalarFn involute_f1_reference() { return ScalarFn::parse("-3/26*sin(2*t)"); }
ScalarFn involute_f2_reference() { return ScalarFn::parse("1/13*cos(2*t)"); }

}  // namespace hybridcurve::example
