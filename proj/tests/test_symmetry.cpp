#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lorentz/catalog.hpp"
#include "lorentz/dsl.hpp"
#include "lorentz/linalg.hpp"
#include "lorentz/symmetry.hpp"

using namespace lorentz;

namespace {

FieldClass classify(const ManifoldSpec& m, const std::string& field) {
  return classify_field(m, m.field(field), m.sample_points(32));
}

const char* kPlane = R"dsl(
[manifold]
name = plane
dim = 2
coords = t, x
range.t = -1, 1
range.x = -1, 1
signature = lorentzian

[metric]
g.t.t = "-1"
g.x.x = "1"

[field.S]
x = "x"

[field.B]
t = "x"
x = "t"
)dsl";

}  // namespace

TEST_CASE("classification picks the most specific tag") {
  const ManifoldSpec m2 = build_example("minkowski2");
  CHECK(classify(m2, "T").tag == FieldClass::Tag::Killing);
  const FieldClass e = classify(m2, "E");
  CHECK(e.tag == FieldClass::Tag::Homothetic);
  CHECK(e.lambda == doctest::Approx(2.0));
  CHECK(e.is_homothetic());

  const ManifoldSpec plane = load_spec(kPlane);
  CHECK(classify(plane, "B").tag == FieldClass::Tag::Killing);  // boost
  CHECK(classify(plane, "S").tag == FieldClass::Tag::None);

  CHECK(classify(build_example("minkowski4"), "R").tag == FieldClass::Tag::Killing);
  CHECK(classify(build_example("round_s2"), "Z").tag == FieldClass::Tag::Killing);
  CHECK(classify(build_example("hopf_lorentz_s3"), "H").tag == FieldClass::Tag::Killing);
  CHECK(classify(build_example("schwarzschild_exterior"), "T").tag == FieldClass::Tag::Killing);
  const FieldClass y = classify(build_example("conformal_counterexample"), "Y");
  CHECK(y.tag == FieldClass::Tag::Conformal);
  CHECK_FALSE(y.is_homothetic());
}

TEST_CASE("classification needs enough samples") {
  const ManifoldSpec m = build_example("minkowski2");
  CHECK_THROWS_AS(classify_field(m, m.field("T"), m.sample_points(4)), Error);
}

TEST_CASE("Lie derivative of the metric") {
  const ManifoldSpec m = build_example("minkowski2");
  const Mat l = lie_derivative_metric_at(m, m.field("E"), {0.2, -0.4});
  CHECK((l - 2.0 * metric_at(m, {0.2, -0.4}).g).cwiseAbs().maxCoeff() == 0.0);
  const ManifoldSpec s = build_example("schwarzschild_exterior");
  CHECK(lie_derivative_metric_at(s, s.field("T"), {0.0, 5.0, 1.0, 1.0}).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conformal factor of the counterexample field") {
  // g = e^{2u} eta with u = -(x^2 + 2y^2): L_Y g = 2 u_y g, so sigma = -8y and Y(sigma) = -8.
  const ManifoldSpec m = build_example("conformal_counterexample");
  const ConformalFactorAt c0 = conformal_factor_at(m, m.field("Y"), {0.0, 0.0});
  CHECK(std::abs(c0.sigma) <= 1e-15);
  CHECK(c0.along_x == doctest::Approx(-8.0));
  const ConformalFactorAt c1 = conformal_factor_at(m, m.field("Y"), {0.3, 0.2});
  CHECK(c1.sigma == doctest::Approx(-1.6));
  CHECK(c1.grad(0) == doctest::Approx(0.0));
  CHECK(c1.grad(1) == doctest::Approx(-8.0));
}

TEST_CASE("A_X is skew-adjoint exactly for Killing fields") {
  const ManifoldSpec m = build_example("torus_family");
  for (const auto& p : m.sample_points(10)) CHECK(skew_adjoint_residual(m, m.field("X"), p) <= 1e-12);
  const ManifoldSpec m2 = build_example("minkowski2");
  CHECK(skew_adjoint_residual(m2, m2.field("E"), {0.1, 0.1}) == doctest::Approx(2.0));
}

TEST_CASE("Hessian identity for f = g(X,X)/2 holds for Killing fields") {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"torus_family", "X"}, {"hopf_lorentz_s3", "H"}, {"minkowski4", "T"}, {"circle_lift_torus", "Xbar"},
      {"schwarzschild_exterior", "T"}, {"torus3_null_variant", "X"}, {"round_s2", "Z"}};
  for (const auto& [name, field] : cases) {
    const ManifoldSpec m = build_example(name);
    for (const auto& p : m.sample_points(20, 42)) {
      INFO(name);
      CHECK(hessian_identity_residual(m, m.field(field), p) <= 1e-7);
    }
  }
}

TEST_CASE("orthogonal restriction at the torus minimum") {
  const ManifoldSpec m = build_example("torus_family");
  const RestrictedOperator r = restricted_operator(m, m.field("X"), {0.5, 0.0}, RestrictionMode::Orthogonal);
  CHECK(r.basis.cols() == 1);
  CHECK(r.op.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r.invariance_residual <= 1e-12);
  // the frame is g-orthonormal and orthogonal to X
  const MetricAt g = metric_at(m, {0.5, 0.0});
  CHECK(g.inner(r.basis.col(0), r.basis.col(0)) == doctest::Approx(1.0));
  CHECK(std::abs(g.inner(r.basis.col(0), r.x)) <= 1e-12);
}

TEST_CASE("Hopf field: rotation on X-perp has no kernel") {
  const ManifoldSpec m = build_example("hopf_lorentz_s3");
  for (const auto& p : m.sample_points(10)) {
    const RestrictedOperator r = restricted_operator(m, m.field("H"), p, RestrictionMode::Orthogonal);
    CHECK(r.op.rows() == 2);
    const KernelResult k = kernel_direction(r.op, r.metric);
    CHECK_FALSE(k.found);
    CHECK(k.smallest_singular == doctest::Approx(1.0));
  }
}

TEST_CASE("quotient restriction on the lightlike locus of the circle lift") {
  const ManifoldSpec m = build_example("circle_lift_torus");
  const RestrictedOperator r = restricted_operator(m, m.field("Xbar"), {0.0, 0.0, 0.0}, RestrictionMode::Quotient);
  CHECK(r.mode == RestrictionMode::Quotient);
  CHECK(r.basis.cols() == 1);
  CHECK(std::abs(r.eigen_lambda) <= 1e-12);
  CHECK(r.eigen_residual <= 1e-12);
  CHECK(r.metric(0, 0) > 0.0);
}

TEST_CASE("restriction modes must match the causal character") {
  const ManifoldSpec m = build_example("torus_family");
  CHECK_THROWS_AS(restricted_operator(m, m.field("X"), {0.5, 0.0}, RestrictionMode::Quotient), CausalCharacterError);
  const ManifoldSpec lift = build_example("circle_lift_torus");
  CHECK_THROWS_AS(restricted_operator(lift, lift.field("Xbar"), {0.0, 0.0, 0.0}, RestrictionMode::Orthogonal),
                  CausalCharacterError);
}

TEST_CASE("indefinite Gram-Schmidt") {
  Mat g = Mat::Identity(3, 3);
  g(0, 0) = -1;
  const OrthonormalFrame f = indefinite_gram_schmidt(Mat::Identity(3, 3) + Mat::Constant(3, 3, 0.3), g, Mat::Identity(3, 3), 3);
  const Mat gram = f.basis.transpose() * g * f.basis;
  int negatives = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(gram(a, b) == doctest::Approx(a == b ? f.signs[static_cast<std::size_t>(a)] : 0.0).scale(1.0));
    negatives += f.signs[static_cast<std::size_t>(a)] < 0;
  }
  CHECK(negatives == 1);
}

TEST_CASE("kernel of an odd skew operator") {
  Mat a(3, 3);
  a << 0, -3, 2, 3, 0, -1, -2, 1, 0;  // cross product with (1, 2, 3)
  const KernelResult k = kernel_direction(a);
  CHECK(k.found);
  Vec w(3);
  w << 1, 2, 3;
  CHECK(std::abs(std::abs(k.direction.normalized().dot(w.normalized())) - 1.0) <= 1e-12);
  CHECK(k.residual <= 1e-12);
}
