#pragma once

#include <array>
#include <cmath>
#include <string>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

namespace tol {
/// Absolute tolerance for the elliptic/hyperbolic/parabolic trichotomy.
inline constexpr double kClassify = 1e-12;
/// |g(x,y)| bound under which a product is accepted as spatial.
inline constexpr double kOrthogonal = 1e-9;
}  // namespace tol

namespace detail {
inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(std::string(what) + ": component is not finite");
  }
}
}  // namespace detail

/// Element a + b*i + c*eps + d*h of the four-dimensional hybrid algebra,
/// with i^2 = -1, eps^2 = 0, h^2 = 1.
struct Hybrid {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  Hybrid() = default;
  Hybrid(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    detail::require_finite(a, "Hybrid");
    detail::require_finite(b, "Hybrid");
    detail::require_finite(c, "Hybrid");
    detail::require_finite(d, "Hybrid");
  }
};

/// Hybrid number with zero scalar part, stored as (b, c, d) in the
/// (i, eps, h) basis. The scalar part is absent by construction.
struct SpatialHybrid {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  SpatialHybrid() = default;
  SpatialHybrid(double b_, double c_, double d_) : b(b_), c(c_), d(d_) {
    detail::require_finite(b, "SpatialHybrid");
    detail::require_finite(c, "SpatialHybrid");
    detail::require_finite(d, "SpatialHybrid");
  }

  double operator[](int i) const { return i == 0 ? b : (i == 1 ? c : d); }
};

enum class CausalClass { Elliptic, Hyperbolic, Parabolic };

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Elliptic: return "elliptic";
    case CausalClass::Hyperbolic: return "hyperbolic";
    default: return "parabolic";
  }
}

// -- vector-space structure of the spatial subspace ---------------------------

inline SpatialHybrid operator+(const SpatialHybrid& x, const SpatialHybrid& y) {
  return {x.b + y.b, x.c + y.c, x.d + y.d};
}
inline SpatialHybrid operator-(const SpatialHybrid& x, const SpatialHybrid& y) {
  return {x.b - y.b, x.c - y.c, x.d - y.d};
}
inline SpatialHybrid operator-(const SpatialHybrid& x) { return {-x.b, -x.c, -x.d}; }
inline SpatialHybrid operator*(double s, const SpatialHybrid& x) {
  return {s * x.b, s * x.c, s * x.d};
}
inline SpatialHybrid operator*(const SpatialHybrid& x, double s) { return s * x; }

inline double max_abs(const SpatialHybrid& x) {
  return std::max({std::abs(x.b), std::abs(x.c), std::abs(x.d)});
}

/// Embed a spatial hybrid as a full hybrid number with zero scalar part.
inline Hybrid embed(const SpatialHybrid& x) { return {0.0, x.b, x.c, x.d}; }

/// Vector part (b, c, d) of a hybrid number; the scalar part is dropped.
inline SpatialHybrid vector_part(const Hybrid& x) { return {x.b, x.c, x.d}; }

inline Hybrid conjugate(const Hybrid& x) { return {x.a, -x.b, -x.c, -x.d}; }

inline Hybrid operator+(const Hybrid& x, const Hybrid& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
inline Hybrid operator*(double s, const Hybrid& x) {
  return {s * x.a, s * x.b, s * x.c, s * x.d};
}

// -- products and the scalar product ------------------------------------------

/// Hybridian product of two hybrid numbers. Associative, non-commutative.
inline Hybrid hybrid_product(const Hybrid& x, const Hybrid& y) {
  const double a = x.a * y.a - x.b * y.b + x.b * y.c + y.b * x.c + x.d * y.d;
  const double b = x.a * y.b + y.a * x.b + x.b * y.d - y.b * x.d;
  const double c = x.a * y.c + y.a * x.c + x.b * y.d - y.b * x.d - x.c * y.d + y.c * x.d;
  const double d = x.a * y.d + y.a * x.d + y.b * x.c - x.b * y.c;
  return {a, b, c, d};
}

/// Product of two spatial hybrids via the simplified component formulas.
/// The scalar part of the result equals -g(x, y); it lies in the spatial
/// subspace exactly when x and y are g-orthogonal.
inline Hybrid spatial_product(const SpatialHybrid& x, const SpatialHybrid& y) {
  const double a = -x.b * y.b + x.b * y.c + y.b * x.c + x.d * y.d;
  const double b = x.b * y.d - y.b * x.d;
  const double c = x.b * y.d - y.b * x.d - x.c * y.d + y.c * x.d;
  const double d = y.b * x.c - x.b * y.c;
  return {a, b, c, d};
}

/// Indefinite scalar product g(x, y) = b1*b2 - b1*c2 - b2*c1 - d1*d2,
/// the bilinear form of the metric matrix in (b, c, d) coordinates.
inline double scalar_product(const SpatialHybrid& x, const SpatialHybrid& y) {
  return x.b * y.b - x.b * y.c - y.b * x.c - x.d * y.d;
}

/// Product constrained to the spatial subspace. Requires |g(x,y)| <= tol.
inline SpatialHybrid spatial_product_strict(const SpatialHybrid& x, const SpatialHybrid& y,
                                            double tol = tol::kOrthogonal) {
  const double g = scalar_product(x, y);
  if (std::abs(g) > tol) {
    throw NotOrthogonal("spatial product leaves the spatial subspace: g = " + std::to_string(g), g);
  }
  const Hybrid p = spatial_product(x, y);
  return vector_part(p);
}

inline CausalClass classify(const SpatialHybrid& x, double tol = tol::kClassify) {
  const double g = scalar_product(x, x);
  if (g > tol) return CausalClass::Elliptic;
  if (g < -tol) return CausalClass::Hyperbolic;
  return CausalClass::Parabolic;
}

/// Norm sqrt(|g(x, x)|).
inline double norm(const SpatialHybrid& x) {
  return std::sqrt(std::abs(scalar_product(x, x)));
}

/// Determinant of the 3x3 matrix whose rows are the (b, c, d) components of
/// x, y, z. Equals g(xy, z) whenever g(x, y) = 0.
inline double triple_det(const SpatialHybrid& x, const SpatialHybrid& y, const SpatialHybrid& z) {
  return x.b * (y.c * z.d - y.d * z.c) - x.c * (y.b * z.d - y.d * z.b) +
         x.d * (y.b * z.c - y.c * z.b);
}

// -- metric matrix -------------------------------------------------------------

/// Rows of the constant metric matrix G in (b, c, d) coordinates.
inline constexpr std::array<std::array<double, 3>, 3> kMetric = {{
    {1.0, -1.0, 0.0},
    {-1.0, 0.0, 0.0},
    {0.0, 0.0, -1.0},
}};

/// Rows of G^-1 (det G = 1, so this is the adjugate).
inline constexpr std::array<std::array<double, 3>, 3> kMetricInverse = {{
    {0.0, -1.0, 0.0},
    {-1.0, -1.0, 0.0},
    {0.0, 0.0, -1.0},
}};

}  // namespace hybridcurve
