#include <doctest.h>

#include <cmath>
#include <random>

#include "lorentz/expr.hpp"

using namespace lorentz;

namespace {

const std::set<std::string> kXY = {"x", "y"};

double at(const Expr& e, double x, double y) { return e.evaluate(Bindings{{"x", x}, {"y", y}}); }

// Random trees whose every subexpression stays finite and smooth on [-1, 1]^2.
Expr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 12);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return Expr::symbol("x");
    case 1: return Expr::symbol("y");
    case 2: return Expr(std::round(coef(rng) * 4.0) / 4.0);
    case 3: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 4: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) / (2.5 + cos(random_expr(rng, depth - 1)));
    case 7: return sin(random_expr(rng, depth - 1));
    case 8: return cos(random_expr(rng, depth - 1));
    case 9: return exp(sin(random_expr(rng, depth - 1)));
    case 10: return log(2.0 + sin(random_expr(rng, depth - 1)));
    case 11: return sqrt(1.0 + pow(random_expr(rng, depth - 1), Expr(2.0)));
    default: return pow(random_expr(rng, depth - 1), Expr(3.0));
  }
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(parse_expression("1 + 2 * 3", {}).evaluate({}) == 7.0);
  CHECK(parse_expression("2^3^2", {}).evaluate({}) == 512.0);
  CHECK(parse_expression("-2^2", {}).evaluate({}) == -4.0);
  CHECK(parse_expression("(1 + 2) * 3", {}).evaluate({}) == 9.0);
  CHECK(parse_expression("8 / 4 / 2", {}).evaluate({}) == 1.0);
  CHECK(parse_expression("2 - 3 - 4", {}).evaluate({}) == -5.0);
  CHECK(parse_expression("cos(pi)", {}).evaluate({}) == doctest::Approx(-1.0));
  CHECK(parse_expression("1.5e2", {}).evaluate({}) == 150.0);
  CHECK(parse_expression("abs(-3) + sqrt(16)", {}).evaluate({}) == 7.0);
}

TEST_CASE("derivatives of known forms") {
  const Expr e = parse_expression("x^2*sin(y)", kXY);
  CHECK(at(differentiate(e, "x"), 0.7, 0.3) == doctest::Approx(2 * 0.7 * std::sin(0.3)));
  CHECK(at(differentiate(e, "y"), 0.7, 0.3) == doctest::Approx(0.49 * std::cos(0.3)));
  CHECK(differentiate(parse_expression("3*y", kXY), "x").is_zero());
  CHECK(at(differentiate(parse_expression("x^y", kXY), "y"), 2.0, 3.0) == doctest::Approx(8.0 * std::log(2.0)));
  CHECK(at(differentiate(parse_expression("tan(x)", kXY), "x"), 0.4, 0.0) ==
        doctest::Approx(1.0 / (std::cos(0.4) * std::cos(0.4))));
}

TEST_CASE("symbolic derivatives agree with central differences on random trees") {
  std::mt19937_64 rng(20260);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int k = 0; k < 100; ++k) {
    const Expr e = random_expr(rng, 4);
    const double x = u(rng), y = u(rng);
    for (const char* var : {"x", "y"}) {
      const Expr d = differentiate(e, var);
      const double h = 1e-5;
      const bool is_x = std::string(var) == "x";
      const double fd = (at(e, x + (is_x ? h : 0), y + (is_x ? 0 : h)) - at(e, x - (is_x ? h : 0), y - (is_x ? 0 : h))) /
                        (2 * h);
      const double exact = at(d, x, y);
      INFO(e.str(), " d/d", var, " at ", x, ", ", y);
      CHECK(std::abs(exact - fd) <= 1e-5 * std::max(1.0, std::abs(exact)));
      ++checked;
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 100; ++k) {
    const Expr e = random_expr(rng, 4);
    const Expr back = parse_expression(e.str(), kXY);
    INFO(e.str());
    CHECK(at(back, 0.3, -0.6) == doctest::Approx(at(e, 0.3, -0.6)).epsilon(1e-12));
  }
}

TEST_CASE("free names and dependence") {
  const Expr e = parse_expression("x*cos(y) + 2", kXY);
  CHECK(e.free_names() == std::set<std::string>{"x", "y"});
  CHECK(e.depends_on("y"));
  CHECK_FALSE(parse_expression("pi*2", kXY).depends_on("x"));
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(parse_expression("2x", kXY), ParseError);
  CHECK_THROWS_AS(parse_expression("sin(x", kXY), ParseError);
  CHECK_THROWS_AS(parse_expression("x +", kXY), ParseError);
  CHECK_THROWS_AS(parse_expression("", kXY), ParseError);
  CHECK_THROWS_AS(parse_expression("foo(x)", kXY), Error);
  CHECK_THROWS_AS(parse_expression("z + 1", kXY), UndeclaredName);
  try {
    parse_expression("1 + * 2", {});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("non-finite results are reported") {
  CHECK_THROWS_AS(parse_expression("1/x", kXY).evaluate(Bindings{{"x", 0.0}, {"y", 0.0}}), EvalError);
  CHECK_THROWS_AS(parse_expression("log(x)", kXY).evaluate(Bindings{{"x", -1.0}, {"y", 0.0}}), EvalError);
  CHECK_THROWS_AS(parse_expression("sqrt(x)", kXY).evaluate(Bindings{{"x", -1.0}, {"y", 0.0}}), EvalError);
  CHECK_THROWS_AS(parse_expression("x + 1", kXY).evaluate(Bindings{{"y", 0.0}}), EvalError);
}
