#include "hybridcurve/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <utility>

namespace hybridcurve {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct Expr::Node {
  ExprKind kind;
  double number = 0.0;  // literal value, or the exponent of Pow
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool has_var = false;
  // Saturating tree size. Derivative chains share subtrees heavily, so the
  // tree can be exponentially larger than the underlying DAG; evaluation
  // switches to pointer-memoized traversal above a weight threshold.
  std::uint64_t weight = 1;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

constexpr std::uint64_t kWeightCap = std::uint64_t(1) << 40;
constexpr std::uint64_t kMemoThreshold = 256;

std::uint64_t combined_weight(const NodePtr& a, const NodePtr& b) {
  const std::uint64_t wa = a ? a->weight : 0;
  const std::uint64_t wb = b ? b->weight : 0;
  return std::min(kWeightCap, 1 + wa + wb);
}

NodePtr make_number(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = ExprKind::Number;
  n->number = v;
  return n;
}

const NodePtr& var_node() {
  static const NodePtr n = [] {
    auto v = std::make_shared<Expr::Node>();
    v->kind = ExprKind::Var;
    v->has_var = true;
    return v;
  }();
  return n;
}

bool is_number(const NodePtr& n, double v) {
  return n->kind == ExprKind::Number && n->number == v;
}

double apply_function(ExprKind kind, double x) {
  switch (kind) {
    case ExprKind::Sin: return std::sin(x);
    case ExprKind::Cos: return std::cos(x);
    case ExprKind::Tan: return std::tan(x);
    case ExprKind::Sinh: return std::sinh(x);
    case ExprKind::Cosh: return std::cosh(x);
    case ExprKind::Tanh: return std::tanh(x);
    case ExprKind::Exp: return std::exp(x);
    case ExprKind::Log: return std::log(x);
    case ExprKind::Sqrt: return std::sqrt(x);
    case ExprKind::Abs: return std::abs(x);
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

NodePtr make_unary_node(ExprKind kind, NodePtr a) {
  if (kind == ExprKind::Neg) {
    if (a->kind == ExprKind::Number) return make_number(-a->number);
    if (a->kind == ExprKind::Neg) return a->a;
  } else if (a->kind == ExprKind::Number) {
    const double v = apply_function(kind, a->number);
    if (std::isfinite(v)) return make_number(v);
    // Out-of-domain constant: keep the node so evaluation reports the error.
  }
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->has_var = n->a->has_var;
  n->weight = combined_weight(n->a, nullptr);
  return n;
}

NodePtr make_binary_node(ExprKind kind, NodePtr a, NodePtr b) {
  if (a->kind == ExprKind::Number && b->kind == ExprKind::Number) {
    double v = 0.0;
    switch (kind) {
      case ExprKind::Add: v = a->number + b->number; break;
      case ExprKind::Sub: v = a->number - b->number; break;
      case ExprKind::Mul: v = a->number * b->number; break;
      case ExprKind::Div: v = a->number / b->number; break;
      default: v = std::numeric_limits<double>::quiet_NaN(); break;
    }
    if (std::isfinite(v)) return make_number(v);
  }
  switch (kind) {
    case ExprKind::Add:
      if (is_number(a, 0.0)) return b;
      if (is_number(b, 0.0)) return a;
      break;
    case ExprKind::Sub:
      if (is_number(b, 0.0)) return a;
      if (is_number(a, 0.0)) return make_unary_node(ExprKind::Neg, std::move(b));
      break;
    case ExprKind::Mul:
      if (is_number(a, 0.0) || is_number(b, 0.0)) return make_number(0.0);
      if (is_number(a, 1.0)) return b;
      if (is_number(b, 1.0)) return a;
      if (is_number(a, -1.0)) return make_unary_node(ExprKind::Neg, std::move(b));
      if (is_number(b, -1.0)) return make_unary_node(ExprKind::Neg, std::move(a));
      break;
    case ExprKind::Div:
      if (is_number(b, 1.0)) return a;
      if (is_number(a, 0.0) && !is_number(b, 0.0)) return make_number(0.0);
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  n->has_var = n->a->has_var || n->b->has_var;
  n->weight = combined_weight(n->a, n->b);
  return n;
}

NodePtr make_pow_node(NodePtr base, double exponent) {
  if (exponent == 0.0) return make_number(1.0);
  if (exponent == 1.0) return base;
  if (base->kind == ExprKind::Number) {
    const double v = std::pow(base->number, exponent);
    if (std::isfinite(v)) return make_number(v);
  }
  auto n = std::make_shared<Expr::Node>();
  n->kind = ExprKind::Pow;
  n->number = exponent;
  n->a = std::move(base);
  n->has_var = n->a->has_var;
  n->weight = combined_weight(n->a, nullptr);
  return n;
}

const char* kind_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::Number: return "number";
    case ExprKind::Var: return "t";
    case ExprKind::Neg: return "negation";
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    case ExprKind::Div: return "/";
    case ExprKind::Pow: return "^";
    case ExprKind::Sin: return "sin";
    case ExprKind::Cos: return "cos";
    case ExprKind::Tan: return "tan";
    case ExprKind::Sinh: return "sinh";
    case ExprKind::Cosh: return "cosh";
    case ExprKind::Tanh: return "tanh";
    case ExprKind::Exp: return "exp";
    case ExprKind::Log: return "log";
    case ExprKind::Sqrt: return "sqrt";
    case ExprKind::Abs: return "abs";
  }
  return "?";
}

[[noreturn]] void throw_domain_error(ExprKind kind, double t) {
  throw EvalDomainError(std::string("expression left the real domain in '") + kind_name(kind) +
                        "' at t = " + format_double(t));
}

double eval_plain(const Expr::Node* n, double t) {
  double v = 0.0;
  switch (n->kind) {
    case ExprKind::Number: return n->number;  // finite by construction
    case ExprKind::Var: return t;
    case ExprKind::Neg: return -eval_plain(n->a.get(), t);
    case ExprKind::Add: v = eval_plain(n->a.get(), t) + eval_plain(n->b.get(), t); break;
    case ExprKind::Sub: v = eval_plain(n->a.get(), t) - eval_plain(n->b.get(), t); break;
    case ExprKind::Mul: v = eval_plain(n->a.get(), t) * eval_plain(n->b.get(), t); break;
    case ExprKind::Div: v = eval_plain(n->a.get(), t) / eval_plain(n->b.get(), t); break;
    case ExprKind::Pow: v = std::pow(eval_plain(n->a.get(), t), n->number); break;
    default: v = apply_function(n->kind, eval_plain(n->a.get(), t)); break;
  }
  if (!std::isfinite(v)) throw_domain_error(n->kind, t);
  return v;
}

using EvalCache = std::unordered_map<const Expr::Node*, double>;

double eval_cached(const Expr::Node* n, double t, EvalCache& cache) {
  if (n->weight <= kMemoThreshold) return eval_plain(n, t);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  double v = 0.0;
  switch (n->kind) {
    case ExprKind::Number: v = n->number; break;
    case ExprKind::Var: v = t; break;
    case ExprKind::Neg: v = -eval_cached(n->a.get(), t, cache); break;
    case ExprKind::Add: v = eval_cached(n->a.get(), t, cache) + eval_cached(n->b.get(), t, cache); break;
    case ExprKind::Sub: v = eval_cached(n->a.get(), t, cache) - eval_cached(n->b.get(), t, cache); break;
    case ExprKind::Mul: v = eval_cached(n->a.get(), t, cache) * eval_cached(n->b.get(), t, cache); break;
    case ExprKind::Div: v = eval_cached(n->a.get(), t, cache) / eval_cached(n->b.get(), t, cache); break;
    case ExprKind::Pow: v = std::pow(eval_cached(n->a.get(), t, cache), n->number); break;
    default: v = apply_function(n->kind, eval_cached(n->a.get(), t, cache)); break;
  }
  if (!std::isfinite(v)) throw_domain_error(n->kind, t);
  cache.emplace(n, v);
  return v;
}

double eval_node(const Expr::Node* n, double t) {
  if (n->weight <= kMemoThreshold) return eval_plain(n, t);
  EvalCache cache;
  return eval_cached(n, t, cache);
}

using DerivCache = std::unordered_map<const Expr::Node*, NodePtr>;

NodePtr derivative_node(const NodePtr& n, DerivCache& cache) {
  if (auto it = cache.find(n.get()); it != cache.end()) return it->second;
  const NodePtr& a = n->a;
  const NodePtr& b = n->b;
  const auto d = [&cache](const NodePtr& x) { return derivative_node(x, cache); };
  NodePtr out;
  switch (n->kind) {
    case ExprKind::Number: out = make_number(0.0); break;
    case ExprKind::Var: out = make_number(1.0); break;
    case ExprKind::Neg: out = make_unary_node(ExprKind::Neg, d(a)); break;
    case ExprKind::Add: out = make_binary_node(ExprKind::Add, d(a), d(b)); break;
    case ExprKind::Sub: out = make_binary_node(ExprKind::Sub, d(a), d(b)); break;
    case ExprKind::Mul:
      out = make_binary_node(ExprKind::Add, make_binary_node(ExprKind::Mul, d(a), b),
                             make_binary_node(ExprKind::Mul, a, d(b)));
      break;
    case ExprKind::Div:
      out = make_binary_node(
          ExprKind::Div,
          make_binary_node(ExprKind::Sub, make_binary_node(ExprKind::Mul, d(a), b),
                           make_binary_node(ExprKind::Mul, a, d(b))),
          make_binary_node(ExprKind::Mul, b, b));
      break;
    case ExprKind::Pow:
      // d/dt a^e = e * a^(e-1) * a'
      out = make_binary_node(
          ExprKind::Mul,
          make_binary_node(ExprKind::Mul, make_number(n->number), make_pow_node(a, n->number - 1.0)),
          d(a));
      break;
    case ExprKind::Sin:
      out = make_binary_node(ExprKind::Mul, make_unary_node(ExprKind::Cos, a), d(a));
      break;
    case ExprKind::Cos:
      out = make_binary_node(
          ExprKind::Mul, make_unary_node(ExprKind::Neg, make_unary_node(ExprKind::Sin, a)), d(a));
      break;
    case ExprKind::Tan: {
      auto c = make_unary_node(ExprKind::Cos, a);
      out = make_binary_node(ExprKind::Div, d(a), make_binary_node(ExprKind::Mul, c, c));
      break;
    }
    case ExprKind::Sinh:
      out = make_binary_node(ExprKind::Mul, make_unary_node(ExprKind::Cosh, a), d(a));
      break;
    case ExprKind::Cosh:
      out = make_binary_node(ExprKind::Mul, make_unary_node(ExprKind::Sinh, a), d(a));
      break;
    case ExprKind::Tanh: {
      auto c = make_unary_node(ExprKind::Cosh, a);
      out = make_binary_node(ExprKind::Div, d(a), make_binary_node(ExprKind::Mul, c, c));
      break;
    }
    case ExprKind::Exp:
      out = make_binary_node(ExprKind::Mul, n, d(a));
      break;
    case ExprKind::Log:
      out = make_binary_node(ExprKind::Div, d(a), a);
      break;
    case ExprKind::Sqrt:
      out = make_binary_node(ExprKind::Div, d(a),
                             make_binary_node(ExprKind::Mul, make_number(2.0), n));
      break;
    case ExprKind::Abs:
      // u/|u| * u'; evaluation reports the kink at u = 0 as a domain error
      out = make_binary_node(ExprKind::Mul, make_binary_node(ExprKind::Div, a, n), d(a));
      break;
  }
  cache.emplace(n.get(), out);
  return out;
}

// -- printing -----------------------------------------------------------------

int precedence(ExprKind kind) {
  switch (kind) {
    case ExprKind::Add:
    case ExprKind::Sub: return 1;
    case ExprKind::Mul:
    case ExprKind::Div: return 2;
    case ExprKind::Neg: return 3;
    case ExprKind::Pow: return 4;
    default: return 5;
  }
}

void print_node(const Expr::Node* n, std::string& out);

void print_child(const Expr::Node* child, int parent_prec, bool parenthesize_equal,
                 std::string& out) {
  int child_prec = precedence(child->kind);
  if (child->kind == ExprKind::Number && child->number < 0) child_prec = 3;
  const bool parens = child_prec < parent_prec || (parenthesize_equal && child_prec == parent_prec);
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Expr::Node* n, std::string& out) {
  switch (n->kind) {
    case ExprKind::Number: out += format_double(n->number); return;
    case ExprKind::Var: out += 't'; return;
    case ExprKind::Neg:
      out += '-';
      print_child(n->a.get(), 3, false, out);
      return;
    case ExprKind::Add:
      print_child(n->a.get(), 1, false, out);
      out += " + ";
      print_child(n->b.get(), 1, true, out);
      return;
    case ExprKind::Sub:
      print_child(n->a.get(), 1, false, out);
      out += " - ";
      print_child(n->b.get(), 1, true, out);
      return;
    case ExprKind::Mul:
      print_child(n->a.get(), 2, false, out);
      out += '*';
      print_child(n->b.get(), 2, true, out);
      return;
    case ExprKind::Div:
      print_child(n->a.get(), 2, false, out);
      out += '/';
      print_child(n->b.get(), 2, true, out);
      return;
    case ExprKind::Pow:
      print_child(n->a.get(), 4, true, out);
      out += '^';
      if (n->number < 0) {
        out += '(';
        out += format_double(n->number);
        out += ')';
      } else {
        out += format_double(n->number);
      }
      return;
    default:
      out += kind_name(n->kind);
      out += '(';
      print_node(n->a.get(), out);
      out += ')';
      return;
  }
}

// -- parser -------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail(pos_, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::size_t at, const std::string& what) { throw SyntaxError(at, what); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (consume('+')) {
        lhs = make_binary_node(ExprKind::Add, std::move(lhs), parse_term());
      } else if (consume('-')) {
        lhs = make_binary_node(ExprKind::Sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (consume('*')) {
        lhs = make_binary_node(ExprKind::Mul, std::move(lhs), parse_factor());
      } else if (consume('/')) {
        lhs = make_binary_node(ExprKind::Div, std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (consume('-')) return make_unary_node(ExprKind::Neg, parse_factor());
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    const std::size_t caret = pos_;
    if (!consume('^')) return base;
    NodePtr raw = parse_factor();  // allows a leading sign in the exponent
    if (raw->has_var) fail(caret, "exponent must be a constant expression");
    double e = 0.0;
    try {
      e = eval_node(raw.get(), 0.0);
    } catch (const EvalDomainError&) {
      fail(caret, "exponent is not evaluable");
    }
    return make_pow_node(std::move(base), e);
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail(pos_, "expected expression");
    const char c = src_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      NodePtr e = parse_expr();
      if (!consume(')')) fail(pos_, "expected ')' to close '(' at offset " + std::to_string(open));
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    // Exponent part only when followed by at least one digit.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        ++p;
        while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) fail(start, "malformed number");
    return make_number(v);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return var_node();
    if (name == "pi") return make_number(std::numbers::pi);
    if (name == "e") return make_number(std::numbers::e);

    static const std::unordered_map<std::string_view, ExprKind> kFunctions = {
        {"sin", ExprKind::Sin},   {"cos", ExprKind::Cos},   {"tan", ExprKind::Tan},
        {"sinh", ExprKind::Sinh}, {"cosh", ExprKind::Cosh}, {"tanh", ExprKind::Tanh},
        {"exp", ExprKind::Exp},   {"log", ExprKind::Log},   {"sqrt", ExprKind::Sqrt},
        {"abs", ExprKind::Abs},
    };
    auto it = kFunctions.find(name);
    if (it == kFunctions.end()) fail(start, "unknown identifier '" + std::string(name) + "'");
    if (!consume('(')) fail(pos_, "expected '(' after function name");
    NodePtr arg = parse_expr();
    if (!consume(')')) fail(pos_, "expected ')' to close function argument");
    return make_unary_node(it->second, std::move(arg));
  }
};

}  // namespace

// -- Expr ----------------------------------------------------------------------

Expr::Expr() : node_(make_number(0.0)) {}

Expr::Expr(double value) : node_(make_number(value)) {
  if (!std::isfinite(value)) throw Error("Expr: literal must be finite");
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::var() { return Expr(var_node()); }

Expr Expr::parse(std::string_view src) { return Expr(Parser(src).run()); }

ExprKind Expr::kind() const { return node_->kind; }

bool Expr::depends_on_var() const { return node_->has_var; }

std::optional<double> Expr::as_number() const {
  if (node_->kind == ExprKind::Number) return node_->number;
  return std::nullopt;
}

double Expr::eval(double t) const { return eval_node(node_.get(), t); }

Expr Expr::derivative() const {
  DerivCache cache;
  return Expr(derivative_node(node_, cache));
}

std::string Expr::str() const {
  std::string out;
  print_node(node_.get(), out);
  return out;
}

Expr operator+(const Expr& x, const Expr& y) {
  return Expr(make_binary_node(ExprKind::Add, x.node_, y.node_));
}
Expr operator-(const Expr& x, const Expr& y) {
  return Expr(make_binary_node(ExprKind::Sub, x.node_, y.node_));
}
Expr operator*(const Expr& x, const Expr& y) {
  return Expr(make_binary_node(ExprKind::Mul, x.node_, y.node_));
}
Expr operator/(const Expr& x, const Expr& y) {
  return Expr(make_binary_node(ExprKind::Div, x.node_, y.node_));
}
Expr Expr::operator-() const { return Expr(make_unary_node(ExprKind::Neg, node_)); }

Expr pow(const Expr& base, double exponent) {
  return Expr(make_pow_node(base.node_, exponent));
}
Expr sin(const Expr& x) { return Expr(make_unary_node(ExprKind::Sin, x.node_)); }
Expr cos(const Expr& x) { return Expr(make_unary_node(ExprKind::Cos, x.node_)); }
Expr tan(const Expr& x) { return Expr(make_unary_node(ExprKind::Tan, x.node_)); }
Expr sinh(const Expr& x) { return Expr(make_unary_node(ExprKind::Sinh, x.node_)); }
Expr cosh(const Expr& x) { return Expr(make_unary_node(ExprKind::Cosh, x.node_)); }
Expr tanh(const Expr& x) { return Expr(make_unary_node(ExprKind::Tanh, x.node_)); }
Expr exp(const Expr& x) { return Expr(make_unary_node(ExprKind::Exp, x.node_)); }
Expr log(const Expr& x) { return Expr(make_unary_node(ExprKind::Log, x.node_)); }
Expr sqrt(const Expr& x) { return Expr(make_unary_node(ExprKind::Sqrt, x.node_)); }
Expr abs(const Expr& x) { return Expr(make_unary_node(ExprKind::Abs, x.node_)); }

// -- ScalarFn -------------------------------------------------------------------

struct ScalarFn::Table {
  std::mutex mu;
  std::vector<Expr> derivs;  // derivs[k] is the k-th symbolic derivative
};

ScalarFn::ScalarFn() : ScalarFn(Expr()) {}

ScalarFn::ScalarFn(Expr e) : table_(std::make_shared<Table>()) {
  table_->derivs.push_back(std::move(e));
}

ScalarFn ScalarFn::parse(std::string_view src) { return ScalarFn(Expr::parse(src)); }

Expr ScalarFn::derivative_expr(std::size_t order) const {
  const std::size_t wanted = shift_ + order;
  std::lock_guard<std::mutex> lock(table_->mu);
  while (table_->derivs.size() <= wanted) {
    table_->derivs.push_back(table_->derivs.back().derivative());
  }
  return table_->derivs[wanted];
}

Expr ScalarFn::expr() const { return derivative_expr(0); }

double ScalarFn::operator()(double t) const { return derivative_expr(0).eval(t); }

ScalarFn ScalarFn::derivative(std::size_t order) const {
  ScalarFn out = *this;
  out.shift_ += order;
  out.derivative_expr(0);  // materialize so later reads are cheap
  return out;
}

bool ScalarFn::is_constant() const { return !derivative_expr(0).depends_on_var(); }

}  // namespace hybridcurve
