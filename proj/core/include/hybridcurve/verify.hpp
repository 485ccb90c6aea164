#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "hybridcurve/expr.hpp"
#include "hybridcurve/framed.hpp"

namespace hybridcurve::verify {

/// Outcome of one named residual check.
struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void append(Report other);
};

struct SuiteOptions {
  std::uint64_t seed = 20260810;
  /// Randomized instances per algebra/motion property.
  int samples = 1000;
  /// Grid density for pointwise curve comparisons.
  std::size_t grid_points = 1001;
  int expression_count = 200;
  int points_per_expression = 20;
};

/// Random spatial hybrid with components uniform in [-2, 2].
SpatialHybrid random_spatial(std::mt19937_64& rng);

/// Random vector g-orthogonal to x (resamples until the projection is
/// well-conditioned).
SpatialHybrid random_orthogonal(std::mt19937_64& rng, const SpatialHybrid& x);

/// Random expression over the full grammar, depth-limited.
Expr random_expression(std::mt19937_64& rng, int max_depth = 4);

/// Hybrid-number algebra properties (randomized).
Report algebra_suite(const SuiteOptions& opts = {});

/// Motion-group properties (randomized, frame-transport generated members).
Report motion_suite(const SuiteOptions& opts = {});

/// Expression-module properties (symbolic derivative vs finite differences,
/// print/parse round trip, linearity).
Report expression_suite(const SuiteOptions& opts = {});

/// Reconstruction properties on the built-in curvature: closed-form
/// agreement, Gram drift, fourth-order convergence, congruence.
Report reconstruction_suite(const SuiteOptions& opts = {});

/// Identity checks on one framed curve (Frenet residuals, adapted frame,
/// derived-curve identities, distance-squared characterizations). Checks
/// whose preconditions fail (non-adapted frame, no analytic involute) are
/// reported as skipped.
Report curve_suite(const FramedCurve& fc, const SuiteOptions& opts = {});

/// Reference comparisons for the built-in example curve.
Report example_suite(const SuiteOptions& opts = {});

/// Everything, on the built-in example.
Report full_suite(const SuiteOptions& opts = {});

/// Everything, with the curve-dependent checks run on a user curve.
Report full_suite(const FramedCurve& fc, const SuiteOptions& opts = {});

/// Human-readable table, one line per check.
void print_report(std::ostream& os, const Report& report);

}  // namespace hybridcurve::verify
