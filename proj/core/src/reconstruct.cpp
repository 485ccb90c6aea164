#include "hybridcurve/reconstruct.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

namespace {

int rounded_unit(double g, double tol, const char* label) {
  if (std::abs(g - 1.0) <= tol) return 1;
  if (std::abs(g + 1.0) <= tol) return -1;
  throw FrameValidationError(std::string(label) + ": g = " + format_double(g) +
                             " is not +-1 within " + format_double(tol));
}

using State = std::array<SpatialHybrid, 4>;  // nu1, nu2, mu, gamma

State axpy(const State& y, double s, const State& k) {
  return {y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2], y[3] + s * k[3]};
}

}  // namespace

void InitialFrame::validate(double tol) const {
  rounded_unit(scalar_product(nu1, nu1), tol, "initial nu1");
  rounded_unit(scalar_product(nu2, nu2), tol, "initial nu2");
  const double g12 = scalar_product(nu1, nu2);
  if (std::abs(g12) > tol) {
    throw FrameValidationError("initial frame is not g-orthogonal: g(nu1, nu2) = " +
                               format_double(g12));
  }
}

int InitialFrame::delta1() const { return rounded_unit(scalar_product(nu1, nu1), kTol, "nu1"); }
int InitialFrame::delta2() const { return rounded_unit(scalar_product(nu2, nu2), kTol, "nu2"); }

std::size_t IntegrationGrid::steps() const {
  if (!(t_max > t_min)) throw Error("IntegrationGrid: t_max must exceed t_min");
  if (!(h > 0.0)) throw Error("IntegrationGrid: step must be positive");
  const double n = (t_max - t_min) / h;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(n - 1e-9)));
}

double detail::gram_defect(const SpatialHybrid& nu1, const SpatialHybrid& nu2,
                           const SpatialHybrid& mu, int d1, int d2) {
  double r = 0.0;
  r = std::max(r, std::abs(scalar_product(nu1, nu1) - d1));
  r = std::max(r, std::abs(scalar_product(nu2, nu2) - d2));
  r = std::max(r, std::abs(scalar_product(mu, mu) - d1 * d2));
  r = std::max(r, std::abs(scalar_product(nu1, nu2)));
  r = std::max(r, std::abs(scalar_product(nu1, mu)));
  r = std::max(r, std::abs(scalar_product(nu2, mu)));
  return r;
}

SampledFramedCurve integrate(const Curvature& curv, const InitialFrame& init,
                             const IntegrationGrid& grid, const IntegrateOptions& opts) {
  init.validate();
  const double scale = std::max({1.0, std::abs(grid.t_min), std::abs(grid.t_max)});
  if (std::abs(init.t0 - grid.t_min) > 1e-12 * scale) {
    throw Error("integrate: init.t0 must coincide with grid.t_min");
  }

  const int d1 = init.delta1();
  const int d2 = init.delta2();

  // Frenet-type right-hand side; the sign constants come from the initial
  // frame's Gram matrix.
  const auto rhs = [&](double t, const State& y) -> State {
    const double l = curv.l(t);
    const double m = curv.m(t);
    const double n = curv.n(t);
    const double alpha = curv.alpha(t);
    State d;
    d[0] = l * y[1] + m * y[2];
    d[1] = static_cast<double>(-d1 * d2) * l * y[0] + n * y[2];
    d[2] = static_cast<double>(-d2) * m * y[0] + static_cast<double>(-d1) * n * y[1];
    d[3] = alpha * y[2];
    return d;
  };

  const std::size_t steps = grid.steps();
  const double h = grid.actual_step();

  SampledFramedCurve out;
  out.h = h;
  out.delta1 = d1;
  out.delta2 = d2;
  out.t.reserve(steps + 1);
  out.gamma.reserve(steps + 1);
  out.nu1.reserve(steps + 1);
  out.nu2.reserve(steps + 1);
  out.mu.reserve(steps + 1);

  State y = {init.nu1, init.nu2, spatial_product_strict(init.nu1, init.nu2), init.gamma};
  const auto push = [&](double t, const State& s) {
    out.t.push_back(t);
    out.nu1.push_back(s[0]);
    out.nu2.push_back(s[1]);
    out.mu.push_back(s[2]);
    out.gamma.push_back(s[3]);
    out.eps_gram = std::max(out.eps_gram, detail::gram_defect(s[0], s[1], s[2], d1, d2));
  };
  push(grid.t_min, y);

  for (std::size_t i = 0; i < steps; ++i) {
    const double t = grid.t_min + h * static_cast<double>(i);
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(t + h, axpy(y, h, k3));
    for (int j = 0; j < 4; ++j) {
      y[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    const double tn = (i + 1 == steps) ? grid.t_max : t + h;
    push(tn, y);
  }

  if (out.eps_gram > opts.gram_bound) {
    throw StepTooLarge("Gram drift " + format_double(out.eps_gram) + " exceeds bound " +
                           format_double(opts.gram_bound) + "; retry with h = " +
                           format_double(h / 2.0),
                       out.eps_gram, h / 2.0);
  }
  return out;
}

SampledFramedCurve sample(const FramedCurve& fc, const IntegrationGrid& grid) {
  const std::size_t steps = grid.steps();
  const double h = grid.actual_step();
  const SpaceCurve mu = fc.mu();

  SampledFramedCurve out;
  out.h = h;
  out.delta1 = fc.delta1();
  out.delta2 = fc.delta2();
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = (i == steps) ? grid.t_max : grid.t_min + h * static_cast<double>(i);
    out.t.push_back(t);
    out.gamma.push_back(fc.gamma()(t));
    out.nu1.push_back(fc.nu1()(t));
    out.nu2.push_back(fc.nu2()(t));
    out.mu.push_back(mu(t));
    out.eps_gram = std::max(out.eps_gram, detail::gram_defect(out.nu1.back(), out.nu2.back(),
                                                              out.mu.back(), out.delta1,
                                                              out.delta2));
  }
  return out;
}

SampledFramedCurve transform(const SampledFramedCurve& fc, const Motion& a,
                             const SpatialHybrid& shift) {
  SampledFramedCurve out = fc;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    out.gamma[i] = a(fc.gamma[i]) + shift;
    out.nu1[i] = a(fc.nu1[i]);
    out.nu2[i] = a(fc.nu2[i]);
    out.mu[i] = a(fc.mu[i]);
  }
  return out;
}

CongruenceResult congruence(const SampledFramedCurve& fc1, const SampledFramedCurve& fc2,
                            const CongruenceOptions& opts) {
  if (fc1.size() != fc2.size() || fc1.size() == 0) {
    throw Error("congruence: curves must share one t-grid");
  }
  for (std::size_t i = 0; i < fc1.size(); ++i) {
    if (std::abs(fc1.t[i] - fc2.t[i]) > 1e-12 * std::max(1.0, std::abs(fc1.t[i]))) {
      throw Error("congruence: t-grids differ at node " + std::to_string(i));
    }
  }

  const Mat3 f1 = Mat3::from_columns(fc1.nu1.front(), fc1.nu2.front(), fc1.mu.front());
  const Mat3 f2 = Mat3::from_columns(fc2.nu1.front(), fc2.nu2.front(), fc2.mu.front());
  const Mat3 a = f2 * f1.inverse();
  const Motion motion = Motion::from_matrix(a, opts.motion_tol);
  const SpatialHybrid shift = fc2.gamma.front() - a * fc1.gamma.front();

  double gamma_res = 0.0;
  double frame_res = 0.0;
  for (std::size_t i = 0; i < fc1.size(); ++i) {
    gamma_res = std::max(gamma_res, max_abs(fc2.gamma[i] - (a * fc1.gamma[i] + shift)));
    frame_res = std::max(frame_res, max_abs(fc2.nu1[i] - a * fc1.nu1[i]));
    frame_res = std::max(frame_res, max_abs(fc2.nu2[i] - a * fc1.nu2[i]));
    frame_res = std::max(frame_res, max_abs(fc2.mu[i] - a * fc1.mu[i]));
  }
  const double residual = std::max(gamma_res, frame_res);
  if (residual > opts.residual_tol) {
    throw NotCongruent("alignment residual " + format_double(residual) + " exceeds " +
                           format_double(opts.residual_tol) + "; curvatures differ",
                       residual);
  }
  return CongruenceResult{motion, shift, gamma_res, frame_res};
}

}  // namespace hybridcurve
