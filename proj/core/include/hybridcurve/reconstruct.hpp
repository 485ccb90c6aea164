#pragma once

#include <cstddef>
#include <vector>

#include "hybridcurve/framed.hpp"
#include "hybridcurve/hybrid.hpp"
#include "hybridcurve/motions.hpp"

namespace hybridcurve {

/// Initial data for the frame ODE system: frame vectors and base point at t0.
/// The Gram matrix of (nu1, nu2) must be diag(+-1, +-1) within `tol`; the
/// signs delta1, delta2 are read off from it, never supplied by the caller.
struct InitialFrame {
  SpatialHybrid nu1;
  SpatialHybrid nu2;
  SpatialHybrid gamma;
  double t0 = 0.0;

  static constexpr double kTol = 1e-10;
  /// Throws FrameValidationError when the Gram conditions fail.
  void validate(double tol = kTol) const;
  int delta1() const;
  int delta2() const;
};

/// Uniform step grid for the one-step integrator. The number of steps is the
/// smallest integer count whose uniform step does not exceed h.
struct IntegrationGrid {
  double t_min = 0.0;
  double t_max = 1.0;
  double h = 1e-3;
  std::size_t steps() const;
  double actual_step() const { return (t_max - t_min) / static_cast<double>(steps()); }
};

struct IntegrateOptions {
  /// Bound on the Gram drift; exceeding it raises StepTooLarge.
  double gram_bound = 1e-7;
};

/// Discrete image of a framed curve: per-node frame and base-curve values.
struct SampledFramedCurve {
  std::vector<double> t;
  std::vector<SpatialHybrid> gamma;
  std::vector<SpatialHybrid> nu1;
  std::vector<SpatialHybrid> nu2;
  std::vector<SpatialHybrid> mu;
  double h = 0.0;
  int delta1 = 1;
  int delta2 = 1;
  /// Max over nodes of the max-norm deviation of the frame Gram matrix from
  /// diag(delta1, delta2, delta1*delta2).
  double eps_gram = 0.0;

  std::size_t size() const { return t.size(); }
};

/// Integrates the joint 12-dimensional system (nu1, nu2, mu, gamma) with the
/// classical fourth-order one-step scheme at fixed step. gamma is part of the
/// system state, not a post-hoc quadrature. Throws StepTooLarge when the Gram
/// drift exceeds opts.gram_bound.
SampledFramedCurve integrate(const Curvature& curv, const InitialFrame& init,
                             const IntegrationGrid& grid, const IntegrateOptions& opts = {});

/// Evaluates a closed-form framed curve on the same kind of grid (useful as
/// a reference for error studies and congruence tests).
SampledFramedCurve sample(const FramedCurve& fc, const IntegrationGrid& grid);

/// Applies x -> A x + shift to every node of a sampled curve (frame vectors
/// transform without the shift).
SampledFramedCurve transform(const SampledFramedCurve& fc, const Motion& a,
                             const SpatialHybrid& shift);

struct CongruenceOptions {
  double residual_tol = 1e-6;
  double motion_tol = 1e-8;
};

struct CongruenceResult {
  Motion motion;
  SpatialHybrid shift;
  /// Max over nodes of |gamma2 - (A gamma1 + shift)| (max norm).
  double gamma_residual = 0.0;
  /// Max over nodes and frame fields of |F2 - A F1|.
  double frame_residual = 0.0;
};

/// Aligns two sampled curves with equal curvature: A = F2(t0) F1(t0)^-1 from
/// the frame matrices (columns nu1, nu2, mu) at the first node and
/// shift = gamma2(t0) - A gamma1(t0). Throws NotCongruent when the residual
/// exceeds opts.residual_tol.
CongruenceResult congruence(const SampledFramedCurve& fc1, const SampledFramedCurve& fc2,
                            const CongruenceOptions& opts = {});

namespace detail {
/// Max-norm deviation of the Gram matrix of (nu1, nu2, mu) from
/// diag(d1, d2, d1*d2).
double gram_defect(const SpatialHybrid& nu1, const SpatialHybrid& nu2, const SpatialHybrid& mu,
                   int d1, int d2);
}  // namespace detail

}  // namespace hybridcurve
