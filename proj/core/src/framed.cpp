#include "hybridcurve/framed.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

std::vector<double> Interval::uniform(std::size_t n) const {
  std::vector<double> ts(n);
  const double h = length() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) ts[i] = lo + h * static_cast<double>(i);
  ts.back() = hi;
  return ts;
}

Expr g_expr(const ExprVec& x, const ExprVec& y) {
  return x[0] * y[0] - x[0] * y[1] - y[0] * x[1] - x[2] * y[2];
}

ExprVec product_expr(const ExprVec& x, const ExprVec& y) {
  Expr b = x[0] * y[2] - y[0] * x[2];
  Expr c = x[0] * y[2] - y[0] * x[2] - x[1] * y[2] + y[1] * x[2];
  Expr d = y[0] * x[1] - x[0] * y[1];
  return {std::move(b), std::move(c), std::move(d)};
}

SpaceCurve::SpaceCurve(ScalarFn b, ScalarFn c, ScalarFn d, Interval domain)
    : b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), domain_(domain) {
  if (!(domain_.lo < domain_.hi)) throw Error("SpaceCurve: empty parameter interval");
}

SpaceCurve SpaceCurve::parse(const std::array<std::string, 3>& components, Interval domain) {
  return SpaceCurve(ScalarFn::parse(components[0]), ScalarFn::parse(components[1]),
                    ScalarFn::parse(components[2]), domain);
}

SpatialHybrid SpaceCurve::operator()(double t) const { return {b_(t), c_(t), d_(t)}; }

SpaceCurve SpaceCurve::derivative() const {
  return SpaceCurve(b_.derivative(), c_.derivative(), d_.derivative(), domain_);
}

ExprVec SpaceCurve::exprs(std::size_t order) const {
  return {b_.derivative_expr(order), c_.derivative_expr(order), d_.derivative_expr(order)};
}

namespace {

bool same_interval(const Interval& a, const Interval& b) {
  const double scale = std::max({1.0, std::abs(a.lo), std::abs(a.hi)});
  return std::abs(a.lo - b.lo) <= 1e-12 * scale && std::abs(a.hi - b.hi) <= 1e-12 * scale;
}

/// Rounds a squared-norm value to +-1, or fails.
int unit_sign(double g, double tol, const char* label) {
  if (std::abs(g - 1.0) <= tol) return 1;
  if (std::abs(g + 1.0) <= tol) return -1;
  throw FrameValidationError(std::string(label) + " is not a non-parabolic unit field: g = " +
                             format_double(g));
}

struct WorstPoint {
  double value = 0.0;
  double t = 0.0;
  void update(double v, double at) {
    if (std::abs(v) > std::abs(value)) {
      value = v;
      t = at;
    }
  }
};

}  // namespace

FramedCurve FramedCurve::make(SpaceCurve gamma, SpaceCurve nu1, SpaceCurve nu2,
                              const FrameValidation& cfg) {
  if (!same_interval(gamma.domain(), nu1.domain()) ||
      !same_interval(gamma.domain(), nu2.domain())) {
    throw FrameValidationError("frame fields and base curve must share one domain");
  }
  const auto ts = gamma.domain().uniform(cfg.grid_points);
  const SpaceCurve dgamma = gamma.derivative();

  const int d1 = unit_sign(scalar_product(nu1(ts.front()), nu1(ts.front())), cfg.tol, "nu1");
  const int d2 = unit_sign(scalar_product(nu2(ts.front()), nu2(ts.front())), cfg.tol, "nu2");

  WorstPoint unit1, unit2, ortho, tangent1, tangent2;
  for (double t : ts) {
    const SpatialHybrid v1 = nu1(t);
    const SpatialHybrid v2 = nu2(t);
    const SpatialHybrid dg = dgamma(t);
    unit1.update(scalar_product(v1, v1) - d1, t);
    unit2.update(scalar_product(v2, v2) - d2, t);
    ortho.update(scalar_product(v1, v2), t);
    tangent1.update(scalar_product(dg, v1), t);
    tangent2.update(scalar_product(dg, v2), t);
  }
  const auto check = [&](const WorstPoint& w, const char* what) {
    if (std::abs(w.value) > cfg.tol) {
      throw FrameValidationError(std::string(what) + " fails at t = " + format_double(w.t) +
                                 ": residual " + format_double(w.value));
    }
  };
  check(unit1, "|g(nu1, nu1) - delta1| <= tol");
  check(unit2, "|g(nu2, nu2) - delta2| <= tol");
  check(ortho, "|g(nu1, nu2)| <= tol");
  check(tangent1, "|g(gamma', nu1)| <= tol");
  check(tangent2, "|g(gamma', nu2)| <= tol");

  return FramedCurve(std::move(gamma), std::move(nu1), std::move(nu2), d1, d2);
}

SpaceCurve FramedCurve::mu() const {
  const ExprVec p = product_expr(nu1_.exprs(), nu2_.exprs());
  return SpaceCurve(ScalarFn(p[0]), ScalarFn(p[1]), ScalarFn(p[2]), domain());
}

Curvature extract_curvature(const FramedCurve& fc) {
  const ExprVec nu1 = fc.nu1().exprs();
  const ExprVec nu2 = fc.nu2().exprs();
  const ExprVec dnu1 = fc.nu1().exprs(1);
  const ExprVec dnu2 = fc.nu2().exprs(1);
  const ExprVec dgamma = fc.gamma().exprs(1);
  const ExprVec mu = product_expr(nu1, nu2);
  const double d1 = fc.delta1();
  const double d2 = fc.delta2();

  Curvature curv;
  curv.l = ScalarFn(Expr(d2) * g_expr(dnu1, nu2));
  curv.m = ScalarFn(Expr(d1 * d2) * g_expr(dnu1, mu));
  curv.n = ScalarFn(Expr(d1 * d2) * g_expr(dnu2, mu));
  curv.alpha = ScalarFn(Expr(d1 * d2) * g_expr(dgamma, mu));
  curv.delta1 = fc.delta1();
  curv.delta2 = fc.delta2();
  return curv;
}

double FrenetResiduals::max() const { return std::max({nu1, nu2, mu, gamma}); }

FrenetResiduals verify_frenet(const FramedCurve& fc, std::size_t grid_points) {
  const Curvature curv = extract_curvature(fc);
  const SpaceCurve mu = fc.mu();
  const SpaceCurve dnu1 = fc.nu1().derivative();
  const SpaceCurve dnu2 = fc.nu2().derivative();
  const SpaceCurve dmu = mu.derivative();
  const SpaceCurve dgamma = fc.gamma().derivative();
  const double d1 = fc.delta1();
  const double d2 = fc.delta2();

  FrenetResiduals r;
  for (double t : fc.domain().uniform(grid_points)) {
    const SpatialHybrid v1 = fc.nu1()(t);
    const SpatialHybrid v2 = fc.nu2()(t);
    const SpatialHybrid w = mu(t);
    const double l = curv.l(t);
    const double m = curv.m(t);
    const double n = curv.n(t);
    const double alpha = curv.alpha(t);
    r.nu1 = std::max(r.nu1, max_abs(dnu1(t) - (l * v2 + m * w)));
    r.nu2 = std::max(r.nu2, max_abs(dnu2(t) - (-d1 * d2 * l * v1 + n * w)));
    r.mu = std::max(r.mu, max_abs(dmu(t) - (-d2 * m * v1 + -d1 * n * v2)));
    r.gamma = std::max(r.gamma, max_abs(dgamma(t) - alpha * w));
  }
  return r;
}

AdaptedFrame adapt_frame(const FramedCurve& fc, const AdaptOptions& opts) {
  const Curvature curv = extract_curvature(fc);
  const double d1 = fc.delta1();
  const double d2 = fc.delta2();

  const Expr q = Expr(d1) * curv.m.expr() * curv.m.expr() +
                 Expr(d2) * curv.n.expr() * curv.n.expr();
  const ScalarFn qf{q};

  // sigma must be a single sign across the domain, bounded away from zero.
  int sigma = 0;
  for (double t : fc.domain().uniform(opts.grid_points)) {
    const double v = qf(t);
    if (std::abs(v) <= opts.tol) {
      throw ParabolicNormal("delta1 m^2 + delta2 n^2 vanishes at t = " + format_double(t));
    }
    const int s = v > 0 ? 1 : -1;
    if (sigma == 0) sigma = s;
    if (s != sigma) {
      throw ParabolicNormal("delta1 m^2 + delta2 n^2 changes sign at t = " + format_double(t));
    }
  }

  const Expr big_m = sqrt(Expr(sigma) * q);
  const ExprVec nu1 = fc.nu1().exprs();
  const ExprVec nu2 = fc.nu2().exprs();
  const Expr c1 = Expr(sigma * d1) * curv.m.expr() / big_m;
  const Expr c2 = Expr(sigma * d2) * curv.n.expr() / big_m;
  const Expr c3 = -curv.n.expr() / big_m;
  const Expr c4 = curv.m.expr() / big_m;

  ExprVec n1, n2;
  for (int i = 0; i < 3; ++i) {
    n1[i] = c1 * nu1[i] + c2 * nu2[i];
    n2[i] = c3 * nu1[i] + c4 * nu2[i];
  }

  const Expr big_l =
      Expr(d1 * d2) * (curv.m.expr() * curv.n.derivative_expr() -
                       curv.m.derivative_expr() * curv.n.expr()) /
          (Expr(sigma) * q) +
      Expr(sigma * d1) * curv.l.expr();

  AdaptedFrame out;
  out.n1 = SpaceCurve(ScalarFn(n1[0]), ScalarFn(n1[1]), ScalarFn(n1[2]), fc.domain());
  out.n2 = SpaceCurve(ScalarFn(n2[0]), ScalarFn(n2[1]), ScalarFn(n2[2]), fc.domain());
  out.curvature = AdaptedCurvature{ScalarFn(big_l), ScalarFn(big_m), sigma};
  return out;
}

FramedCurve adapted_curve(const FramedCurve& fc, const AdaptOptions& opts) {
  AdaptedFrame af = adapt_frame(fc, opts);
  return FramedCurve::make(fc.gamma(), std::move(af.n1), std::move(af.n2));
}

bool is_singular(const Curvature& curv, double t, double tol) {
  return std::abs(curv.alpha(t)) <= tol;
}

std::vector<double> singular_points(const Curvature& curv, const Interval& domain,
                                    std::size_t grid_points, double tol) {
  std::vector<double> out;
  for (double t : domain.uniform(grid_points)) {
    if (is_singular(curv, t, tol)) out.push_back(t);
  }
  return out;
}

}  // namespace hybridcurve
