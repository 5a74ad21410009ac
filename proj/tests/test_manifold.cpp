#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lorentz/catalog.hpp"
#include "lorentz/dsl.hpp"

using namespace lorentz;

namespace {

const char* kSmall = R"dsl(
# two-dimensional test chart
[manifold]
name = small
dim = 2
coords = t, x
range.t = -inf, inf
sample.t = -1, 1
range.x = 0, 1
periodic = x
signature = lorentzian

[params]
a = 0.5

[metric]
g.t.t = "-(1 + a*cos(2*pi*x))"
g.x.x = "1"

[field.T]
t = "1"

[scalar.f]
value = "a*x^2"
)dsl";

}  // namespace

TEST_CASE("a document loads with its declared structure") {
  const ManifoldSpec m = load_spec(kSmall);
  CHECK(m.name() == "small");
  CHECK(m.dim() == 2);
  CHECK(m.signature() == Signature::Lorentzian);
  CHECK(m.param("a") == 0.5);
  CHECK(m.has_field("T"));
  CHECK(m.scalar("f").value.evaluate(m.bindings({0.0, 0.5})) == doctest::Approx(0.125));
  const MetricAt g = metric_at(m, {0.3, 0.0});
  CHECK(g.g(0, 0) == doctest::Approx(-1.5));
  CHECK(g.g(0, 1) == 0.0);
  CHECK(g.negative_count() == 1);
}

TEST_CASE("export and reload reproduce the metric and fields") {
  for (const auto& e : catalog()) {
    const ManifoldSpec m = e.build();
    const ManifoldSpec back = load_spec(export_spec(m));
    INFO(e.name);
    CHECK(back.name() == m.name());
    CHECK(back.dim() == m.dim());
    CHECK(export_spec(back) == export_spec(m));
    for (const auto& p : m.sample_points(10)) {
      const Mat d = metric_at(back, p).g - metric_at(m, p).g;
      CHECK(d.cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, metric_at(m, p).g.cwiseAbs().maxCoeff()));
      for (const auto& f : m.fields()) {
        CHECK((back.field(f.name()).at(back.bindings(p)) - f.at(m.bindings(p))).norm() <= 1e-14);
      }
    }
  }
}

TEST_CASE("every catalog entry has its declared signature at 100 interior samples") {
  for (const auto& e : catalog()) {
    const ManifoldSpec m = e.build();
    INFO(e.name);
    CHECK_NOTHROW(m.validate_signature(m.sample_points(100)));
    for (const auto& p : m.sample_points(100)) {
      const int neg = metric_at(m, p).negative_count();
      CHECK(neg == (m.signature() == Signature::Riemannian ? 0 : 1));
    }
  }
}

TEST_CASE("malformed documents name the offending line") {
  const std::string base = "[manifold]\nname = bad\ndim = 2\ncoords = x, y\nrange.x = 0, 1\nrange.y = 0, 1\n";
  try {
    load_spec(base + "[metric]\ng.x.x = 1 + y\n");
    FAIL("expected a spec error");
  } catch (const SpecError& e) {
    CHECK(e.line() == 8);
  }
  CHECK_THROWS_AS(load_spec(base + "[metric]\ng.x.x = \"1 + q\"\ng.y.y = \"1\"\n"), SpecError);
  CHECK_THROWS_AS(load_spec(base + "dim = 3\n"), SpecError);
  CHECK_THROWS_AS(load_spec("[manifold]\nname = bad\ndim = 2\ncoords = x, x\nrange.x = 0, 1\n[metric]\ng.x.x = \"1\"\n"),
                  SpecError);
  CHECK_THROWS_AS(load_spec(base + "range.x = 1, 0\n"), SpecError);
  CHECK_THROWS_AS(load_spec("[manifold]\nname = bad\ndim = 2\ncoords = x, y\n[metric]\ng.x.x = \"1\"\n"), SpecError);
}

TEST_CASE("a declared signature that does not hold is refused") {
  const std::string doc =
      "[manifold]\nname = wrong\ndim = 2\ncoords = x, y\nrange.x = 0, 1\nrange.y = 0, 1\n"
      "signature = lorentzian\n[metric]\ng.x.x = \"1\"\ng.y.y = \"1\"\n";
  CHECK_THROWS_AS(load_spec(doc), SignatureError);
  LoadOptions off;
  off.check_signature = false;
  CHECK_NOTHROW(load_spec(doc, off));
}

TEST_CASE("chart domain checks") {
  const ManifoldSpec m = load_spec(kSmall);
  CHECK(m.wrap({0.0, 1.25})[1] == doctest::Approx(0.25));
  CHECK_THROWS_AS(m.bindings({0.0}), DomainError);
  CHECK_THROWS_AS(m.bindings({std::nan(""), 0.0}), DomainError);
  const ManifoldSpec s = build_example("schwarzschild_exterior");
  CHECK_THROWS_AS(s.bindings({0.0, 2.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(s.bindings({0.0, 2.0 + 1e-8, 1.0, 0.0}), DomainError);
  CHECK_NOTHROW(s.bindings({0.0, 3.0, 1.0, 0.0}));
}

TEST_CASE("sample points are deterministic and inside the windows") {
  const ManifoldSpec m = build_example("schwarzschild_exterior");
  const auto a = m.sample_points(50);
  CHECK(a == m.sample_points(50));
  CHECK(a != m.sample_points(50, 99));
  for (const auto& p : a) {
    CHECK(p[1] >= 2.5);
    CHECK(p[1] <= 20.0);
  }
}

TEST_CASE("causal character and plane types") {
  const ManifoldSpec m = build_example("minkowski2");
  const MetricAt g = metric_at(m, {0.0, 0.0});
  CHECK(causal_character(g, Vec::Unit(2, 0)) == Causal::Timelike);
  CHECK(causal_character(g, Vec::Unit(2, 1)) == Causal::Spacelike);
  CHECK(causal_character(g, Vec::Ones(2)) == Causal::Lightlike);
  CHECK(causal_character(g, Vec::Zero(2)) == Causal::Zero);

  const ManifoldSpec m4 = build_example("minkowski4");
  const MetricAt g4 = metric_at(m4, {0.0, 0.0, 0.0, 0.0});
  Vec null(4);
  null << 1, 1, 0, 0;
  CHECK(plane_type(g4, make_plane(g4, Vec::Unit(4, 0), Vec::Unit(4, 1))) == PlaneType::Timelike);
  CHECK(plane_type(g4, make_plane(g4, Vec::Unit(4, 2), Vec::Unit(4, 3))) == PlaneType::Spacelike);
  CHECK(plane_type(g4, make_plane(g4, null, Vec::Unit(4, 2))) == PlaneType::Degenerate);
  CHECK_THROWS_AS(make_plane(g4, Vec::Unit(4, 2), 3.0 * Vec::Unit(4, 2)), DependentVectors);
}

TEST_CASE("a degenerate metric is reported") {
  LoadOptions off;
  off.check_signature = false;
  const ManifoldSpec m = load_spec(
      "[manifold]\nname = deg\ndim = 2\ncoords = x, y\nrange.x = -1, 1\nrange.y = -1, 1\n"
      "signature = riemannian\n[metric]\ng.x.x = \"x^2\"\ng.y.y = \"1\"\n",
      off);
  CHECK_THROWS_AS(metric_at(m, {0.0, 0.0}), DegenerateMetric);
  CHECK_NOTHROW(metric_at(m, {0.5, 0.0}));
}

TEST_CASE("round sphere angles") {
  const ManifoldSpec m = build_example("round_s2");
  const MetricAt g = metric_at(m, {std::numbers::pi / 6, 1.0});
  CHECK(g.g(1, 1) == doctest::Approx(0.25));
}
