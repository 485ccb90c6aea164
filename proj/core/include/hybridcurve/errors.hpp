#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hybridcurve {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Expression evaluation left the real domain (NaN or infinity).
class EvalDomainError : public Error {
 public:
  using Error::Error;
};

/// The product of two spatial hybrids would leave the spatial subspace.
class NotOrthogonal : public Error {
 public:
  NotOrthogonal(const std::string& what, double scalar_product)
      : Error(what), scalar_product_(scalar_product) {}
  double scalar_product() const { return scalar_product_; }

 private:
  double scalar_product_;
};

/// Matrix fails the motion-group membership check.
class NotAMotion : public Error {
 public:
  using Error::Error;
};

/// Frame fails the framed-curve validation grid.
class FrameValidationError : public Error {
 public:
  using Error::Error;
};

/// delta1*m^2 + delta2*n^2 vanishes or changes sign; no global adapted frame.
class ParabolicNormal : public Error {
 public:
  using Error::Error;
};

/// Evolute denominator vanishes on the grid.
class DegenerateEvolute : public Error {
 public:
  using Error::Error;
};

/// Operation requires a frame whose extracted third curvature entry is zero.
class NotAdapted : public Error {
 public:
  using Error::Error;
};

/// Gram drift exceeded the configured bound during integration.
class StepTooLarge : public Error {
 public:
  StepTooLarge(const std::string& what, double eps_gram, double suggested_h)
      : Error(what), eps_gram_(eps_gram), suggested_h_(suggested_h) {}
  double eps_gram() const { return eps_gram_; }
  double suggested_h() const { return suggested_h_; }

 private:
  double eps_gram_;
  double suggested_h_;
};

/// Alignment residual of two sampled curves exceeds tolerance.
class NotCongruent : public Error {
 public:
  NotCongruent(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// The analytic involute backend cannot handle the given curvature.
class ClosedFormUnavailable : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input file (schema or expression problems).
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace hybridcurve
