#pragma once

// Immutable scalar expression trees over named chart coordinates and
// parameters, with exact partial differentiation.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lorentz/errors.hpp"

namespace lorentz {

enum class NodeKind { Constant, Symbol, Binary, Unary };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Neg is unary minus; Sign is the derivative of abs and is never produced
// by the parser unless the user writes sign(...).
enum class UnaryFn { Neg, Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Sign };

// Name -> value table used at evaluation. Lookups are linear; charts carry a
// handful of names.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::initializer_list<std::pair<std::string, double>> init);

  void set(std::string_view name, double value);
  std::optional<double> find(std::string_view name) const;
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

class Expr {
 public:
  // The zero constant.
  Expr();
  Expr(double value);  // NOLINT(google-explicit-constructor)

  static Expr constant(double value);
  static Expr named_constant(std::string label, double value);
  static Expr symbol(std::string name);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr unary(UnaryFn fn, Expr arg);

  NodeKind kind() const;
  // Constant nodes only.
  double value() const;
  // Symbol nodes only.
  const std::string& name() const;
  BinaryOp op() const;
  UnaryFn fn() const;
  // Children in order: lhs, rhs for Binary; arg for Unary.
  std::vector<Expr> children() const;

  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  // Throws EvalError for a missing binding or a non-finite intermediate value.
  double evaluate(const Bindings& bindings) const;

  std::set<std::string> free_names() const;
  bool depends_on(std::string_view name) const;

  // Canonical infix form; parse_expression(str()) reproduces the value.
  std::string str() const;

  std::size_t node_count() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  struct Node;  // opaque

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, const Expr& exponent);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sqrt(const Expr& a);
Expr abs(const Expr& a);

Expr differentiate(const Expr& e, std::string_view var);

// Grammar: infix + - * / with ^ for (right associative) power, unary minus,
// calls sin cos tan exp log sqrt abs sign, the constant pi, decimal numbers.
// Implicit multiplication is rejected.
Expr parse_expression(std::string_view text, const std::set<std::string>& declared);

}  // namespace lorentz
