#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridcurve/errors.hpp"

namespace hybridcurve {

/// Shortest locale-independent decimal that round-trips to the same double.
std::string format_double(double v);

enum class ExprKind : std::uint8_t {
  Number, Var, Neg, Add, Sub, Mul, Div, Pow,
  Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs,
};

/// Immutable expression tree in one variable t.
///
/// Grammar (in precedence order, ^ binds tightest, then unary minus, then
/// * /, then + -): real literals, the constants pi and e, the variable t,
/// parentheses, and the functions sin cos tan sinh cosh tanh exp log sqrt
/// abs. Exponents must be constant.
class Expr {
 public:
  Expr();               // the constant 0
  Expr(double value);   // NOLINT: implicit by design, expressions mix with reals
  static Expr var();
  static Expr parse(std::string_view src);

  ExprKind kind() const;
  /// True when the tree contains the variable t.
  bool depends_on_var() const;
  /// Value when this node is a literal number.
  std::optional<double> as_number() const;

  /// Numeric value at t. Throws EvalDomainError when the result (or any
  /// subexpression) is NaN or infinite.
  double eval(double t) const;

  /// Exact symbolic derivative with respect to t.
  Expr derivative() const;

  /// Canonical text form; reparses to a semantically equal expression.
  std::string str() const;

  friend Expr operator+(const Expr& x, const Expr& y);
  friend Expr operator-(const Expr& x, const Expr& y);
  friend Expr operator*(const Expr& x, const Expr& y);
  friend Expr operator/(const Expr& x, const Expr& y);
  Expr operator-() const;

  friend Expr pow(const Expr& base, double exponent);
  friend Expr sin(const Expr& x);
  friend Expr cos(const Expr& x);
  friend Expr tan(const Expr& x);
  friend Expr sinh(const Expr& x);
  friend Expr cosh(const Expr& x);
  friend Expr tanh(const Expr& x);
  friend Expr exp(const Expr& x);
  friend Expr log(const Expr& x);
  friend Expr sqrt(const Expr& x);
  friend Expr abs(const Expr& x);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Scalar function of t: an expression plus a memoized table of its symbolic
/// derivatives. Copies share the table; all operations are safe for
/// concurrent use once constructed.
class ScalarFn {
 public:
  ScalarFn();             // the zero function
  ScalarFn(Expr e);       // NOLINT: implicit by design
  static ScalarFn parse(std::string_view src);

  double operator()(double t) const;
  Expr expr() const;
  /// Symbolic derivative of the given order (order 0 is the function itself).
  Expr derivative_expr(std::size_t order = 1) const;
  ScalarFn derivative(std::size_t order = 1) const;
  bool is_constant() const;

 private:
  struct Table;
  std::shared_ptr<Table> table_;
  std::size_t shift_ = 0;
};

inline ScalarFn differentiate(const ScalarFn& f, std::size_t order = 1) {
  return f.derivative(order);
}

}  // namespace hybridcurve
