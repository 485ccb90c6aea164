#include "hybridcurve/derived.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

namespace {

/// Frame Gram signs of the curve at hand, read off the validated frame.
struct FrameSigns {
  int e1;  // g(nu1, nu1)
  int e2;  // g(nu2, nu2)
  int d1d2() const { return e1 * e2; }
};

FrameSigns signs_of(const FramedCurve& fc) { return {fc.delta1(), fc.delta2()}; }

/// Checks that the extracted n entry vanishes on the grid.
Curvature require_adapted(const FramedCurve& fc, const DerivedOptions& opts, const char* who) {
  Curvature curv = extract_curvature(fc);
  for (double t : fc.domain().uniform(opts.grid_points)) {
    const double n = curv.n(t);
    if (std::abs(n) > opts.adapted_tol) {
      throw NotAdapted(std::string(who) + " needs an adapted frame: n(" + format_double(t) +
                       ") = " + format_double(n));
    }
  }
  return curv;
}

ExprVec combine(const ExprVec& base, const Expr& ca, const ExprVec& va, const Expr& cb,
                const ExprVec& vb) {
  ExprVec out;
  for (int i = 0; i < 3; ++i) out[i] = base[i] - ca * va[i] - cb * vb[i];
  return out;
}

SpaceCurve curve_from(const ExprVec& v, const Interval& domain) {
  return SpaceCurve(ScalarFn(v[0]), ScalarFn(v[1]), ScalarFn(v[2]), domain);
}

void check_away_from_zero(const ScalarFn& f, const Interval& domain, std::size_t grid_points,
                          double tol, const char* what) {
  for (double t : domain.uniform(grid_points)) {
    const double v = f(t);
    if (std::abs(v) <= tol) {
      throw DegenerateEvolute(std::string(what) + " vanishes at t = " + format_double(t) +
                              " (value " + format_double(v) + ")");
    }
  }
}

}  // namespace

// -- distance squared -----------------------------------------------------------

DistanceSquared::DistanceSquared(FramedCurve fc, SpatialHybrid x)
    : fc_(std::move(fc)), curv_(extract_curvature(fc_)), mu_(fc_.mu()), x_(x) {}

double DistanceSquared::derivative(double t, std::size_t order) const {
  const SpatialHybrid d = fc_.gamma()(t) - x_;
  if (order == 0) return scalar_product(d, d);

  const double d1 = curv_.delta1;
  const double d2 = curv_.delta2;
  const double alpha = curv_.alpha(t);
  const double gmu = scalar_product(d, mu_(t));
  if (order == 1) return 2.0 * alpha * gmu;

  const double m = curv_.m(t);
  const double n = curv_.n(t);
  const double da = curv_.alpha.derivative_expr(1).eval(t);
  const SpatialHybrid v1 = fc_.nu1()(t);
  const SpatialHybrid v2 = fc_.nu2()(t);
  const double g1 = scalar_product(d, v1);
  const double g2 = scalar_product(d, v2);
  if (order == 2) {
    return 2.0 * (da * gmu + d1 * d2 * alpha * alpha - alpha * (d2 * m * g1 + d1 * n * g2));
  }
  if (order == 3) {
    const double l = curv_.l(t);
    const double dm = curv_.m.derivative_expr(1).eval(t);
    const double dn = curv_.n.derivative_expr(1).eval(t);
    const double dda = curv_.alpha.derivative_expr(2).eval(t);
    const double c1 = -d2 * dm * alpha + d2 * l * n * alpha - 2.0 * d2 * m * da;
    const double c2 = d1 * dn * alpha + d2 * l * m * alpha + 2.0 * d1 * n * da;
    const double c3 = d2 * m * m * alpha + d1 * n * n * alpha + dda;
    return 2.0 * (c1 * g1 - c2 * g2 - c3 * gmu + 3.0 * d1 * d2 * alpha * da);
  }
  throw Error("DistanceSquared: derivative order must be 0..3");
}

// -- evolute ----------------------------------------------------------------------

ScalarFn evolute_denominator(const Curvature& curv) {
  const Expr l = curv.l.expr();
  const Expr m = curv.m.expr();
  const Expr n = curv.n.expr();
  const Expr dm = curv.m.derivative_expr(1);
  const Expr dn = curv.n.derivative_expr(1);
  return ScalarFn(m * dn - dm * n + Expr(curv.delta1 * curv.delta2) * l * m * m + l * n * n);
}

SpaceCurve evolute(const FramedCurve& fc, const DerivedOptions& opts) {
  const Curvature curv = extract_curvature(fc);
  const ScalarFn den = evolute_denominator(curv);
  check_away_from_zero(den, fc.domain(), opts.grid_points, opts.denominator_tol,
                       "evolute denominator");

  const Expr l = curv.l.expr();
  const Expr m = curv.m.expr();
  const Expr n = curv.n.expr();
  const Expr alpha = curv.alpha.expr();
  const Expr dm = curv.m.derivative_expr(1);
  const Expr dn = curv.n.derivative_expr(1);
  const Expr da = curv.alpha.derivative_expr(1);
  const Expr d1d2{static_cast<double>(curv.delta1 * curv.delta2)};

  const Expr p = (dn * alpha - n * da + d1d2 * l * m * alpha) / den.expr();
  const Expr q = (m * da - dm * alpha + l * n * alpha) / den.expr();
  return curve_from(combine(fc.gamma().exprs(), p, fc.nu1().exprs(), q, fc.nu2().exprs()),
                    fc.domain());
}

SpaceCurve evolute_adapted(const FramedCurve& fc, const DerivedOptions& opts) {
  const Curvature curv = require_adapted(fc, opts, "evolute_adapted");
  const FrameSigns s = signs_of(fc);

  const Expr big_l = curv.l.expr();
  const Expr big_m = curv.m.expr();
  const Expr alpha = curv.alpha.expr();
  const Expr dm = curv.m.derivative_expr(1);
  const Expr da = curv.alpha.derivative_expr(1);

  check_away_from_zero(curv.l, fc.domain(), opts.grid_points, opts.denominator_tol, "L");

  const Expr p = alpha / big_m;
  const Expr q = Expr(static_cast<double>(s.d1d2())) * (big_m * da - dm * alpha) /
                 (big_l * big_m * big_m);
  return curve_from(combine(fc.gamma().exprs(), p, fc.nu1().exprs(), q, fc.nu2().exprs()),
                    fc.domain());
}

// -- involute ---------------------------------------------------------------------

namespace {

/// Derivative-closure basis of alpha: b[0] = alpha, b[i+1] = b[i]', stopped
/// as soon as the last derivative is a linear combination of the basis.
struct ClosureBasis {
  std::vector<Expr> fns;
  Eigen::MatrixXd ddt;  // row i: coefficients of fns[i]' in the basis
};

constexpr int kMaxBasis = 16;

Eigen::MatrixXd sample_matrix(const std::vector<Expr>& fns, const std::vector<double>& ts) {
  Eigen::MatrixXd b(static_cast<Eigen::Index>(ts.size()), static_cast<Eigen::Index>(fns.size()));
  for (std::size_t j = 0; j < ts.size(); ++j)
    for (std::size_t i = 0; i < fns.size(); ++i)
      b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = fns[i].eval(ts[j]);
  return b;
}

ClosureBasis derivative_closure(const Expr& alpha, const Interval& domain) {
  std::vector<Expr> fns{alpha};
  for (int k = 1; k <= kMaxBasis; ++k) {
    const Expr next = fns.back().derivative();
    const std::vector<double> ts = domain.uniform(2 * fns.size() + 9);
    Eigen::MatrixXd b;
    Eigen::VectorXd y(static_cast<Eigen::Index>(ts.size()));
    try {
      b = sample_matrix(fns, ts);
      for (std::size_t j = 0; j < ts.size(); ++j)
        y(static_cast<Eigen::Index>(j)) = next.eval(ts[j]);
    } catch (const EvalDomainError&) {
      throw ClosedFormUnavailable("alpha is not evaluable across the whole domain");
    }
    const Eigen::VectorXd coef = b.colPivHouseholderQr().solve(y);
    const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
    if ((b * coef - y).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
      ClosureBasis out;
      out.fns = std::move(fns);
      const auto n = static_cast<Eigen::Index>(out.fns.size());
      out.ddt = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index i = 0; i + 1 < n; ++i) out.ddt(i, i + 1) = 1.0;
      out.ddt.row(n - 1) = coef.transpose();
      return out;
    }
    fns.push_back(next);
  }
  throw ClosedFormUnavailable("alpha does not close under differentiation (basis cap reached)");
}

/// Extends a closed basis with t * b_i; handles simple resonance.
ClosureBasis extend_with_t(const ClosureBasis& in) {
  const auto n = static_cast<Eigen::Index>(in.fns.size());
  ClosureBasis out;
  out.fns = in.fns;
  const Expr t = Expr::var();
  for (const Expr& f : in.fns) out.fns.push_back(t * f);
  out.ddt = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  out.ddt.topLeftCorner(n, n) = in.ddt;
  out.ddt.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  out.ddt.bottomRightCorner(n, n) = in.ddt;
  return out;
}

Expr linear_combination(const Eigen::VectorXd& coef, const std::vector<Expr>& fns) {
  Expr out{0.0};
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const double c = coef(static_cast<Eigen::Index>(i));
    if (c != 0.0) out = out + Expr(c) * fns[i];
  }
  return out;
}

/// Particular solution of f1' = k1 f2, f2' = -k2 f1 - alpha over the basis.
/// Returns false when the system is singular (resonant forcing).
bool solve_particular(const ClosureBasis& basis, double k1, double k2, Expr* f1, Expr* f2) {
  const auto n = static_cast<Eigen::Index>(basis.fns.size());
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
  const Eigen::MatrixXd dt = basis.ddt.transpose();
  sys.topLeftCorner(n, n) = dt;
  sys.topRightCorner(n, n) = -k1 * Eigen::MatrixXd::Identity(n, n);
  sys.bottomLeftCorner(n, n) = k2 * Eigen::MatrixXd::Identity(n, n);
  sys.bottomRightCorner(n, n) = dt;
  rhs(n) = -1.0;  // alpha is the first basis function

  const Eigen::VectorXd sol = sys.colPivHouseholderQr().solve(rhs);
  if ((sys * sol - rhs).cwiseAbs().maxCoeff() > 1e-8) return false;
  *f1 = linear_combination(sol.head(n), basis.fns);
  *f2 = linear_combination(sol.tail(n), basis.fns);
  return true;
}

}  // namespace

InvoluteSolution involute_coefficients(const FramedCurve& fc, double c1, double c2,
                                       const DerivedOptions& opts) {
  const Curvature curv = require_adapted(fc, opts, "involute");
  // Extracted curvature entries are rarely constant *structurally*; M counts
  // as constant when it is pointwise constant on the grid. The residual gate
  // below rejects any false positive.
  const double m = curv.m(fc.domain().lo);
  for (double t : fc.domain().uniform(opts.grid_points)) {
    if (std::abs(curv.m(t) - m) > 1e-12 * std::max(1.0, std::abs(m))) {
      throw ClosedFormUnavailable("analytic involute needs a constant M; use the numeric backend");
    }
  }
  if (std::abs(m) <= opts.denominator_tol) {
    throw ClosedFormUnavailable("analytic involute needs M bounded away from zero");
  }
  const FrameSigns s = signs_of(fc);
  const double k1 = s.e2 * m;  // sigma delta1 delta2 M for the frame at hand
  const double k2 = m;

  ClosureBasis basis = derivative_closure(curv.alpha.expr(), fc.domain());
  Expr f1p, f2p;
  if (!solve_particular(basis, k1, k2, &f1p, &f2p)) {
    basis = extend_with_t(basis);
    if (!solve_particular(basis, k1, k2, &f1p, &f2p)) {
      throw ClosedFormUnavailable("resonant forcing: no particular solution in the closure basis");
    }
  }

  // Homogeneous part. Hyperbolic pairing (e2 = -1): exponentials; elliptic
  // pairing (e2 = +1): a circular rotation at rate M.
  const Expr t = Expr::var();
  Expr h1f1, h1f2, h2f1, h2f2;
  if (s.e2 < 0) {
    h1f1 = exp(Expr(m) * t);
    h1f2 = Expr(static_cast<double>(s.e2)) * exp(Expr(m) * t);
    h2f1 = exp(Expr(-m) * t);
    h2f2 = Expr(static_cast<double>(-s.e2)) * exp(Expr(-m) * t);
  } else {
    h1f1 = cos(Expr(m) * t);
    h1f2 = -sin(Expr(m) * t);
    h2f1 = sin(Expr(m) * t);
    h2f2 = cos(Expr(m) * t);
  }

  InvoluteSolution sol;
  sol.c1 = c1;
  sol.c2 = c2;
  sol.f1 = ScalarFn(f1p + Expr(c1) * h1f1 + Expr(c2) * h2f1);
  sol.f2 = ScalarFn(f2p + Expr(c1) * h1f2 + Expr(c2) * h2f2);

  // The construction is only accepted if the defining system holds.
  const Expr r1 = sol.f1.derivative_expr(1) - Expr(k1) * sol.f2.expr();
  const Expr r2 = sol.f2.derivative_expr(1) + Expr(k2) * sol.f1.expr() + curv.alpha.expr();
  for (double tv : fc.domain().uniform(opts.grid_points)) {
    if (std::abs(r1.eval(tv)) > 1e-8 || std::abs(r2.eval(tv)) > 1e-8) {
      throw ClosedFormUnavailable("analytic involute residual check failed at t = " +
                                  format_double(tv));
    }
  }
  return sol;
}

SpaceCurve involute(const FramedCurve& fc, const InvoluteSolution& sol) {
  const ExprVec mu = product_expr(fc.nu1().exprs(), fc.nu2().exprs());
  const ExprVec n1 = fc.nu1().exprs();
  const ExprVec gamma = fc.gamma().exprs();
  ExprVec out;
  for (int i = 0; i < 3; ++i) out[i] = gamma[i] + sol.f1.expr() * n1[i] + sol.f2.expr() * mu[i];
  return curve_from(out, fc.domain());
}

SpaceCurve involute(const FramedCurve& fc, double c1, double c2, const DerivedOptions& opts) {
  return involute(fc, involute_coefficients(fc, c1, c2, opts));
}

NumericInvolute involute_numeric(const FramedCurve& fc, double f1_0, double f2_0, double h,
                                 const DerivedOptions& opts) {
  const Curvature curv = require_adapted(fc, opts, "involute_numeric");
  const FrameSigns s = signs_of(fc);
  const double e2 = s.e2;
  const SpaceCurve mu = fc.mu();
  const Interval dom = fc.domain();

  const auto rhs = [&](double t, double f1, double f2, double* df1, double* df2) {
    const double m = curv.m(t);
    *df1 = e2 * m * f2;
    *df2 = -m * f1 - curv.alpha(t);
  };

  const std::size_t steps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(dom.length() / h - 1e-9)));
  const double hs = dom.length() / static_cast<double>(steps);

  NumericInvolute out;
  out.h = hs;
  double f1 = f1_0;
  double f2 = f2_0;
  const auto push = [&](double t, double a, double b) {
    out.t.push_back(t);
    out.f1.push_back(a);
    out.f2.push_back(b);
    out.points.push_back(fc.gamma()(t) + a * fc.nu1()(t) + b * mu(t));
  };
  push(dom.lo, f1, f2);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = dom.lo + hs * static_cast<double>(i);
    double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    rhs(t, f1, f2, &k1a, &k1b);
    rhs(t + 0.5 * hs, f1 + 0.5 * hs * k1a, f2 + 0.5 * hs * k1b, &k2a, &k2b);
    rhs(t + 0.5 * hs, f1 + 0.5 * hs * k2a, f2 + 0.5 * hs * k2b, &k3a, &k3b);
    rhs(t + hs, f1 + hs * k3a, f2 + hs * k3b, &k4a, &k4b);
    f1 += (hs / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    f2 += (hs / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    push((i + 1 == steps) ? dom.hi : t + hs, f1, f2);
  }
  return out;
}

// -- pedal / contrapedal -----------------------------------------------------------

SpaceCurve pedal(const FramedCurve& fc, const SpatialHybrid& p, const DerivedOptions& opts) {
  require_adapted(fc, opts, "pedal");
  const FrameSigns s = signs_of(fc);
  const ExprVec n2 = fc.nu2().exprs();
  const ExprVec gamma = fc.gamma().exprs();
  const ExprVec pv = {Expr(p.b), Expr(p.c), Expr(p.d)};
  ExprVec diff;
  for (int i = 0; i < 3; ++i) diff[i] = pv[i] - gamma[i];
  // sigma delta1 delta2 equals g(n2, n2) for the frame at hand.
  const Expr coef = Expr(static_cast<double>(s.e2)) * g_expr(diff, n2);
  ExprVec out;
  for (int i = 0; i < 3; ++i) out[i] = pv[i] - coef * n2[i];
  return curve_from(out, fc.domain());
}

SpaceCurve contrapedal(const FramedCurve& fc, const SpatialHybrid& p, const DerivedOptions& opts) {
  require_adapted(fc, opts, "contrapedal");
  const FrameSigns s = signs_of(fc);
  const ExprVec mu = product_expr(fc.nu1().exprs(), fc.nu2().exprs());
  const ExprVec gamma = fc.gamma().exprs();
  const ExprVec pv = {Expr(p.b), Expr(p.c), Expr(p.d)};
  ExprVec diff;
  for (int i = 0; i < 3; ++i) diff[i] = pv[i] - gamma[i];
  const Expr coef = Expr(static_cast<double>(s.d1d2())) * g_expr(diff, mu);
  ExprVec out;
  for (int i = 0; i < 3; ++i) out[i] = pv[i] - coef * mu[i];
  return curve_from(out, fc.domain());
}

// -- derived frames ------------------------------------------------------------------

FramedCurve evolute_frame(const FramedCurve& fc, const DerivedOptions& opts) {
  require_adapted(fc, opts, "evolute_frame");
  SpaceCurve ev = evolute(fc, opts);
  return FramedCurve::make(std::move(ev), fc.nu1(), fc.mu());
}

FramedCurve involute_frame(const FramedCurve& fc, double c1, double c2,
                           const DerivedOptions& opts) {
  SpaceCurve inv = involute(fc, c1, c2, opts);
  return FramedCurve::make(std::move(inv), fc.nu1(), fc.mu());
}

// -- evolute of a sampled base curve ---------------------------------------------------

SampledCurve evolute_from_samples(const SpaceCurve& nu1, const SpaceCurve& nu2,
                                  const std::vector<double>& ts,
                                  const std::vector<SpatialHybrid>& base, double h,
                                  const DerivedOptions& opts) {
  if (ts.size() != base.size() || ts.size() < 9) {
    throw Error("evolute_from_samples: need matching grids with at least 9 nodes");
  }

  // Frame-only curvature entries are exact; only alpha comes from the samples.
  const ExprVec v1 = nu1.exprs();
  const ExprVec v2 = nu2.exprs();
  const ExprVec dv1 = nu1.exprs(1);
  const ExprVec dv2 = nu2.exprs(1);
  const ExprVec mu = product_expr(v1, v2);
  const SpaceCurve mu_curve = curve_from(mu, nu1.domain());

  const double e1v = g_expr(v1, v1).eval(ts.front());
  const double e2v = g_expr(v2, v2).eval(ts.front());
  const int e1 = e1v > 0 ? 1 : -1;
  const int e2 = e2v > 0 ? 1 : -1;
  const double d1d2 = e1 * e2;

  const ScalarFn l{Expr(static_cast<double>(e2)) * g_expr(dv1, v2)};
  const ScalarFn m{Expr(d1d2) * g_expr(dv1, mu)};
  const ScalarFn n{Expr(d1d2) * g_expr(dv2, mu)};

  // Five-point central first derivative of the position samples.
  const auto fd = [&](const std::vector<SpatialHybrid>& y, std::size_t i) -> SpatialHybrid {
    return (1.0 / (12.0 * h)) *
           (-1.0 * y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + 1.0 * y[i - 2]);
  };

  std::vector<double> alpha(ts.size(), 0.0);
  for (std::size_t i = 2; i + 2 < ts.size(); ++i) {
    alpha[i] = d1d2 * scalar_product(fd(base, i), mu_curve(ts[i]));
  }

  SampledCurve out;
  for (std::size_t i = 4; i + 4 < ts.size(); ++i) {
    const double t = ts[i];
    const double lv = l(t);
    const double mv = m(t);
    const double nv = n(t);
    const double dmv = m.derivative_expr(1).eval(t);
    const double dnv = n.derivative_expr(1).eval(t);
    const double av = alpha[i];
    const double dav =
        (-alpha[i + 2] + 8.0 * alpha[i + 1] - 8.0 * alpha[i - 1] + alpha[i - 2]) / (12.0 * h);

    const double den = mv * dnv - dmv * nv + d1d2 * lv * mv * mv + lv * nv * nv;
    if (std::abs(den) <= opts.denominator_tol) {
      throw DegenerateEvolute("evolute denominator vanishes at t = " + format_double(t));
    }
    const double p = (dnv * av - nv * dav + d1d2 * lv * mv * av) / den;
    const double q = (mv * dav - dmv * av + lv * nv * av) / den;

    const SpatialHybrid w1{v1[0].eval(t), v1[1].eval(t), v1[2].eval(t)};
    const SpatialHybrid w2{v2[0].eval(t), v2[1].eval(t), v2[2].eval(t)};
    out.t.push_back(t);
    out.p.push_back(base[i] - p * w1 - q * w2);
  }
  return out;
}

}  // namespace hybridcurve
