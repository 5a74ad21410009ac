#include "lorentz/expr.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace lorentz {

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  std::string name;  // symbol name, or label of a named constant
  BinaryOp op = BinaryOp::Add;
  UnaryFn fn = UnaryFn::Neg;
  // Null until set, so building a Node never builds another one.
  Expr lhs{std::shared_ptr<const Node>()};  // doubles as the unary argument
  Expr rhs{std::shared_ptr<const Node>()};
};

// ---------------------------------------------------------------- Bindings

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
  for (const auto& [name, value] : init) set(name, value);
}

void Bindings::set(std::string_view name, double value) {
  for (auto& entry : entries_) {
    if (entry.first == name) {
      entry.second = value;
      return;
    }
  }
  entries_.emplace_back(std::string(name), value);
}

std::optional<double> Bindings::find(std::string_view name) const {
  for (const auto& entry : entries_) {
    if (entry.first == name) return entry.second;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- construction

namespace {

std::shared_ptr<Expr::Node> make_node(NodeKind kind) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  return n;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  node_ = std::move(n);
}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(value); }

Expr Expr::named_constant(std::string label, double value) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = value;
  n->name = std::move(label);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Symbol;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

namespace {

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow: return std::pow(a, b);
  }
  return 0.0;
}

double apply(UnaryFn fn, double a) {
  switch (fn) {
    case UnaryFn::Neg: return -a;
    case UnaryFn::Sin: return std::sin(a);
    case UnaryFn::Cos: return std::cos(a);
    case UnaryFn::Tan: return std::tan(a);
    case UnaryFn::Exp: return std::exp(a);
    case UnaryFn::Log: return std::log(a);
    case UnaryFn::Sqrt: return std::sqrt(a);
    case UnaryFn::Abs: return std::fabs(a);
    case UnaryFn::Sign: return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
  }
  return 0.0;
}

// Constant folding is only done when the folded value is finite and the
// operation is defined on the real line (no fractional powers of negatives).
bool foldable(BinaryOp op, double a, double b) {
  if (op == BinaryOp::Div && b == 0.0) return false;
  if (op == BinaryOp::Pow && a <= 0.0 && !is_integer(b)) return false;
  return std::isfinite(apply(op, a, b));
}

bool foldable(UnaryFn fn, double a) {
  if (fn == UnaryFn::Log && a <= 0.0) return false;
  if (fn == UnaryFn::Sqrt && a < 0.0) return false;
  return std::isfinite(apply(fn, a));
}

}  // namespace

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  const bool lc = lhs.is_constant(), rc = rhs.is_constant();
  const bool labelled = (lc && !lhs.node_->name.empty()) || (rc && !rhs.node_->name.empty());
  if (lc && rc && !labelled && foldable(op, lhs.value(), rhs.value())) {
    return Expr(apply(op, lhs.value(), rhs.value()));
  }
  switch (op) {
    case BinaryOp::Add:
      if (lhs.is_zero()) return rhs;
      if (rhs.is_zero()) return lhs;
      break;
    case BinaryOp::Sub:
      if (rhs.is_zero()) return lhs;
      if (lhs.is_zero()) return -rhs;
      break;
    case BinaryOp::Mul:
      if (lhs.is_zero() || rhs.is_zero()) return Expr(0.0);
      if (lhs.is_one()) return rhs;
      if (rhs.is_one()) return lhs;
      if (lc && lhs.value() == -1.0) return -rhs;
      if (rc && rhs.value() == -1.0) return -lhs;
      break;
    case BinaryOp::Div:
      if (rhs.is_one()) return lhs;
      if (lhs.is_zero() && !(rc && rhs.value() == 0.0)) return Expr(0.0);
      break;
    case BinaryOp::Pow:
      if (rhs.is_zero()) return Expr(1.0);
      if (rhs.is_one()) return lhs;
      break;
  }
  auto n = make_node(NodeKind::Binary);
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::unary(UnaryFn fn, Expr arg) {
  if (arg.is_constant() && foldable(fn, arg.value())) return Expr(apply(fn, arg.value()));
  if (fn == UnaryFn::Neg && arg.kind() == NodeKind::Unary && arg.fn() == UnaryFn::Neg) {
    return arg.children().front();
  }
  auto n = make_node(NodeKind::Unary);
  n->fn = fn;
  n->lhs = std::move(arg);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

// ---------------------------------------------------------------- inspection

NodeKind Expr::kind() const { return node_->kind; }

double Expr::value() const {
  if (node_->kind != NodeKind::Constant) throw Error("Expr::value on non-constant node");
  return node_->value;
}

const std::string& Expr::name() const {
  if (node_->kind != NodeKind::Symbol) throw Error("Expr::name on non-symbol node");
  return node_->name;
}

BinaryOp Expr::op() const {
  if (node_->kind != NodeKind::Binary) throw Error("Expr::op on non-binary node");
  return node_->op;
}

UnaryFn Expr::fn() const {
  if (node_->kind != NodeKind::Unary) throw Error("Expr::fn on non-unary node");
  return node_->fn;
}

std::vector<Expr> Expr::children() const {
  switch (node_->kind) {
    case NodeKind::Binary: return {node_->lhs, node_->rhs};
    case NodeKind::Unary: return {node_->lhs};
    default: return {};
  }
}

bool Expr::is_zero() const { return is_constant() && node_->value == 0.0; }
bool Expr::is_one() const { return is_constant() && node_->value == 1.0; }

std::size_t Expr::node_count() const {
  switch (node_->kind) {
    case NodeKind::Binary: return 1 + node_->lhs.node_count() + node_->rhs.node_count();
    case NodeKind::Unary: return 1 + node_->lhs.node_count();
    default: return 1;
  }
}

static void collect_names(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == NodeKind::Symbol) {
    out.insert(e.name());
    return;
  }
  for (const auto& c : e.children()) collect_names(c, out);
}

std::set<std::string> Expr::free_names() const {
  std::set<std::string> out;
  collect_names(*this, out);
  return out;
}

bool Expr::depends_on(std::string_view name) const {
  switch (node_->kind) {
    case NodeKind::Symbol: return node_->name == name;
    case NodeKind::Binary: return node_->lhs.depends_on(name) || node_->rhs.depends_on(name);
    case NodeKind::Unary: return node_->lhs.depends_on(name);
    default: return false;
  }
}

// ---------------------------------------------------------------- evaluation

double Expr::evaluate(const Bindings& bindings) const {
  const Node& n = *node_;
  double result = 0.0;
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value;
    case NodeKind::Symbol: {
      auto v = bindings.find(n.name);
      if (!v) throw EvalError("missing binding for '" + n.name + "'", n.name);
      result = *v;
      break;
    }
    case NodeKind::Binary: {
      const double a = n.lhs.evaluate(bindings);
      const double b = n.rhs.evaluate(bindings);
      if (n.op == BinaryOp::Div && b == 0.0) throw EvalError("division by zero", str());
      if (n.op == BinaryOp::Pow && !is_integer(b) && a <= 0.0) {
        if (!(a == 0.0 && b > 0.0)) {
          throw EvalError("non-integer power of non-positive base", str());
        }
      }
      result = apply(n.op, a, b);
      break;
    }
    case NodeKind::Unary: {
      const double a = n.lhs.evaluate(bindings);
      if (n.fn == UnaryFn::Log && a <= 0.0) throw EvalError("log of non-positive value", str());
      if (n.fn == UnaryFn::Sqrt && a < 0.0) throw EvalError("sqrt of negative value", str());
      result = apply(n.fn, a);
      break;
    }
  }
  if (!std::isfinite(result)) throw EvalError("non-finite value", str());
  return result;
}

// ---------------------------------------------------------------- operators

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryFn::Neg, a); }

Expr pow(const Expr& base, const Expr& exponent) {
  return Expr::binary(BinaryOp::Pow, base, exponent);
}
Expr sin(const Expr& a) { return Expr::unary(UnaryFn::Sin, a); }
Expr cos(const Expr& a) { return Expr::unary(UnaryFn::Cos, a); }
Expr tan(const Expr& a) { return Expr::unary(UnaryFn::Tan, a); }
Expr exp(const Expr& a) { return Expr::unary(UnaryFn::Exp, a); }
Expr log(const Expr& a) { return Expr::unary(UnaryFn::Log, a); }
Expr sqrt(const Expr& a) { return Expr::unary(UnaryFn::Sqrt, a); }
Expr abs(const Expr& a) { return Expr::unary(UnaryFn::Abs, a); }

// ---------------------------------------------------------------- differentiation

Expr differentiate(const Expr& e, std::string_view var) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return Expr(0.0);
    case NodeKind::Symbol:
      return Expr(e.name() == var ? 1.0 : 0.0);
    case NodeKind::Binary: {
      const auto ch = e.children();
      const Expr& a = ch[0];
      const Expr& b = ch[1];
      if (!e.depends_on(var)) return Expr(0.0);
      const Expr da = differentiate(a, var);
      const Expr db = differentiate(b, var);
      switch (e.op()) {
        case BinaryOp::Add: return da + db;
        case BinaryOp::Sub: return da - db;
        case BinaryOp::Mul: return da * b + a * db;
        case BinaryOp::Div: return (da * b - a * db) / pow(b, 2.0);
        case BinaryOp::Pow:
          if (b.is_constant()) return b * pow(a, b.value() - 1.0) * da;
          if (!a.depends_on(var)) return e * log(a) * db;
          return e * (db * log(a) + b * da / a);
      }
      break;
    }
    case NodeKind::Unary: {
      const Expr a = e.children().front();
      if (!a.depends_on(var)) return Expr(0.0);
      const Expr da = differentiate(a, var);
      switch (e.fn()) {
        case UnaryFn::Neg: return -da;
        case UnaryFn::Sin: return cos(a) * da;
        case UnaryFn::Cos: return -(sin(a) * da);
        case UnaryFn::Tan: return da / pow(cos(a), 2.0);
        case UnaryFn::Exp: return e * da;
        case UnaryFn::Log: return da / a;
        case UnaryFn::Sqrt: return da / (2.0 * e);
        case UnaryFn::Abs: return Expr::unary(UnaryFn::Sign, a) * da;
        case UnaryFn::Sign: return Expr(0.0);
      }
      break;
    }
  }
  return Expr(0.0);
}

// ---------------------------------------------------------------- printing

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant:
      return e.value() < 0.0 ? 2 : 5;
    case NodeKind::Symbol:
      return 5;
    case NodeKind::Unary:
      return e.fn() == UnaryFn::Neg ? 2 : 5;
    case NodeKind::Binary:
      switch (e.op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 3;
        case BinaryOp::Pow: return 4;
      }
  }
  return 5;
}

const char* fn_name(UnaryFn fn) {
  switch (fn) {
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Tan: return "tan";
    case UnaryFn::Exp: return "exp";
    case UnaryFn::Log: return "log";
    case UnaryFn::Sqrt: return "sqrt";
    case UnaryFn::Abs: return "abs";
    case UnaryFn::Sign: return "sign";
    case UnaryFn::Neg: return "-";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string wrap(const Expr& e, bool parens) {
  return parens ? "(" + e.str() + ")" : e.str();
}

}  // namespace

std::string Expr::str() const {
  const Node& n = *node_;
  switch (n.kind) {
    case NodeKind::Constant:
      if (!n.name.empty()) return n.name;
      return format_number(n.value);
    case NodeKind::Symbol:
      return n.name;
    case NodeKind::Unary:
      if (n.fn == UnaryFn::Neg) return "-" + wrap(n.lhs, precedence(n.lhs) < 4);
      return std::string(fn_name(n.fn)) + "(" + n.lhs.str() + ")";
    case NodeKind::Binary: {
      const int p = precedence(*this);
      const int pl = precedence(n.lhs), pr = precedence(n.rhs);
      switch (n.op) {
        case BinaryOp::Add:
          return n.lhs.str() + " + " + wrap(n.rhs, pr <= 2);
        case BinaryOp::Sub:
          return n.lhs.str() + " - " + wrap(n.rhs, pr <= 2);
        case BinaryOp::Mul:
          return wrap(n.lhs, pl < p) + "*" + wrap(n.rhs, pr <= p);
        case BinaryOp::Div:
          return wrap(n.lhs, pl < p) + "/" + wrap(n.rhs, pr <= p);
        case BinaryOp::Pow:
          return wrap(n.lhs, pl <= p) + "^" + wrap(n.rhs, pr < p);
      }
    }
  }
  return {};
}

}  // namespace lorentz
