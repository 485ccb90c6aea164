#include "hybridcurve/motions.hpp"

#include <cmath>
#include <string>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

double Motion::metric_defect(const Mat3& m) {
  const Mat3 g = Mat3::metric();
  return max_abs(m.transpose() * g * m - g);
}

Motion Motion::from_matrix(const Mat3& m, double tol) {
  const double defect = metric_defect(m);
  if (defect > tol) {
    throw NotAMotion("matrix does not preserve the metric: max |A^T G A - G| = " +
                     std::to_string(defect));
  }
  const double det = m.det();
  if (std::abs(det - 1.0) > tol) {
    throw NotAMotion("matrix determinant is " + std::to_string(det) + ", expected 1");
  }
  return Motion(m);
}

Motion Motion::inverse() const {
  return Motion(Mat3::metric_inverse() * m_.transpose() * Mat3::metric());
}

}  // namespace hybridcurve
