#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hybridcurve/expr.hpp"
#include "hybridcurve/hybrid.hpp"

namespace hybridcurve {

namespace tol {
/// Pointwise tolerance for framed-curve validation.
inline constexpr double kFrame = 1e-8;
/// Lower bound on |delta1 m^2 + delta2 n^2| for the adapted frame.
inline constexpr double kAdapt = 1e-10;
/// |alpha(t)| bound under which t is reported as a singularity.
inline constexpr double kSingular = 1e-10;
}  // namespace tol

/// Closed parameter interval.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  /// n uniform nodes including both endpoints (n >= 2).
  std::vector<double> uniform(std::size_t n) const;
};

/// Symbolic expressions, one per (b, c, d) component.
using ExprVec = std::array<Expr, 3>;

/// g(x, y) as a symbolic expression.
Expr g_expr(const ExprVec& x, const ExprVec& y);

/// Component expressions of the spatial product xy (the scalar part, which
/// equals -g(x,y), is dropped; callers guarantee orthogonality).
ExprVec product_expr(const ExprVec& x, const ExprVec& y);

/// Curve t -> (b(t), c(t), d(t)) in the spatial hybrid space, with symbolic
/// component functions on a parameter interval.
class SpaceCurve {
 public:
  SpaceCurve() = default;
  SpaceCurve(ScalarFn b, ScalarFn c, ScalarFn d, Interval domain);
  static SpaceCurve parse(const std::array<std::string, 3>& components, Interval domain);

  SpatialHybrid operator()(double t) const;
  SpaceCurve derivative() const;
  ExprVec exprs(std::size_t order = 0) const;

  const ScalarFn& b() const { return b_; }
  const ScalarFn& c() const { return c_; }
  const ScalarFn& d() const { return d_; }
  const Interval& domain() const { return domain_; }

 private:
  ScalarFn b_, c_, d_;
  Interval domain_;
};

struct FrameValidation {
  std::size_t grid_points = 257;
  double tol = tol::kFrame;
};

/// Curvature functions (l, m, n, alpha) of a framed curve together with the
/// frame signs they were extracted under.
struct Curvature {
  ScalarFn l, m, n, alpha;
  int delta1 = 1;
  int delta2 = 1;
};

/// Curvature (L, M) of an adapted frame; sigma is the sign of
/// delta1 m^2 + delta2 n^2. M is positive on the domain by construction.
struct AdaptedCurvature {
  ScalarFn big_l;
  ScalarFn big_m;
  int sigma = 1;
};

enum class FrameKind { Elliptic, Hyperbolic };

/// Framed curve (gamma, nu1, nu2): a possibly-singular curve together with
/// two unit, mutually g-orthogonal normal fields that are g-orthogonal to
/// gamma'. Validated pointwise on a uniform grid at construction; immutable
/// afterwards.
class FramedCurve {
 public:
  static FramedCurve make(SpaceCurve gamma, SpaceCurve nu1, SpaceCurve nu2,
                          const FrameValidation& cfg = {});

  const SpaceCurve& gamma() const { return gamma_; }
  const SpaceCurve& nu1() const { return nu1_; }
  const SpaceCurve& nu2() const { return nu2_; }
  const Interval& domain() const { return gamma_.domain(); }

  int delta1() const { return delta1_; }
  int delta2() const { return delta2_; }
  FrameKind kind() const {
    return delta1_ * delta2_ == 1 ? FrameKind::Elliptic : FrameKind::Hyperbolic;
  }

  /// Third frame vector mu = nu1 nu2 as a closed-form curve.
  SpaceCurve mu() const;

 private:
  FramedCurve(SpaceCurve gamma, SpaceCurve nu1, SpaceCurve nu2, int d1, int d2)
      : gamma_(std::move(gamma)), nu1_(std::move(nu1)), nu2_(std::move(nu2)),
        delta1_(d1), delta2_(d2) {}
  SpaceCurve gamma_, nu1_, nu2_;
  int delta1_, delta2_;
};

/// Curvature functions built symbolically from the frame:
///   l = delta2 g(nu1', nu2),      m = delta1 delta2 g(nu1', mu),
///   n = delta1 delta2 g(nu2', mu), alpha = delta1 delta2 g(gamma', mu).
Curvature extract_curvature(const FramedCurve& fc);

/// Max-norm residuals of the Frenet-type formulas over a uniform grid.
struct FrenetResiduals {
  double nu1 = 0.0;   // nu1' - (l nu2 + m mu)
  double nu2 = 0.0;   // nu2' - (-d1 d2 l nu1 + n mu)
  double mu = 0.0;    // mu' - (-d2 m nu1 - d1 n nu2)
  double gamma = 0.0; // gamma' - alpha mu
  double max() const;
};

FrenetResiduals verify_frenet(const FramedCurve& fc, std::size_t grid_points = 1001);

struct AdaptOptions {
  double tol = tol::kAdapt;
  std::size_t grid_points = 257;
};

/// Principal-normal/binormal frame: the rotation of (nu1, nu2) that removes
/// the n entry of the curvature.
struct AdaptedFrame {
  SpaceCurve n1;
  SpaceCurve n2;
  AdaptedCurvature curvature;
};

/// Requires sigma (delta1 m^2 + delta2 n^2) > tol with constant sign over the
/// whole grid; throws ParabolicNormal otherwise.
AdaptedFrame adapt_frame(const FramedCurve& fc, const AdaptOptions& opts = {});

/// Convenience: the adapted frame packaged as a framed curve (gamma, n1, n2).
FramedCurve adapted_curve(const FramedCurve& fc, const AdaptOptions& opts = {});

/// True when |alpha(t)| <= tol, i.e. t is a singular point of gamma.
bool is_singular(const Curvature& curv, double t, double tol = tol::kSingular);

/// Grid points flagged as singular.
std::vector<double> singular_points(const Curvature& curv, const Interval& domain,
                                    std::size_t grid_points = 1001,
                                    double tol = tol::kSingular);

}  // namespace hybridcurve
