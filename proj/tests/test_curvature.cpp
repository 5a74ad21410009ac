#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lorentz/catalog.hpp"
#include "lorentz/curvature.hpp"

using namespace lorentz;

namespace {

constexpr double kPi = std::numbers::pi;

// Christoffel symbols from central differences of the metric values only.
Tensor3 fd_christoffel(const ManifoldSpec& m, const Point& p, double h) {
  const int n = m.dim();
  std::vector<Mat> dg(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Point a = p, b = p;
    a[static_cast<std::size_t>(k)] += h;
    b[static_cast<std::size_t>(k)] -= h;
    dg[static_cast<std::size_t>(k)] = (metric_at(m, a).g - metric_at(m, b).g) / (2 * h);
  }
  const Mat ginv = metric_at(m, p).g.inverse();
  Tensor3 gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
          s += 0.5 * ginv(k, l) *
               (dg[static_cast<std::size_t>(i)](l, j) + dg[static_cast<std::size_t>(j)](l, i) -
                dg[static_cast<std::size_t>(l)](i, j));
        }
        gamma(k, i, j) = s;
      }
  return gamma;
}

// R_abcd = g_ae (d_c G^e_db - d_d G^e_cb + G^e_cf G^f_db - G^e_df G^f_cb)
Tensor4 fd_riemann(const ManifoldSpec& m, const Point& p) {
  const int n = m.dim();
  const double h = 1e-4;
  const Tensor3 g0 = fd_christoffel(m, p, 1e-5);
  std::vector<Tensor3> dgam;
  for (int c = 0; c < n; ++c) {
    Point a = p, b = p;
    a[static_cast<std::size_t>(c)] += h;
    b[static_cast<std::size_t>(c)] -= h;
    const Tensor3 ga = fd_christoffel(m, a, 1e-5), gb = fd_christoffel(m, b, 1e-5);
    Tensor3 d(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) d(i, j, k) = (ga(i, j, k) - gb(i, j, k)) / (2 * h);
    dgam.push_back(d);
  }
  Tensor4 up(n);
  for (int e = 0; e < n; ++e)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = dgam[static_cast<std::size_t>(c)](e, d, b) - dgam[static_cast<std::size_t>(d)](e, c, b);
          for (int f = 0; f < n; ++f) s += g0(e, c, f) * g0(f, d, b) - g0(e, d, f) * g0(f, c, b);
          up(e, b, c, d) = s;
        }
  const Mat g = metric_at(m, p).g;
  Tensor4 low(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0;
          for (int e = 0; e < n; ++e) s += g(a, e) * up(e, b, c, d);
          low(a, b, c, d) = s;
        }
  return low;
}

double max_diff(const Tensor4& a, const Tensor4& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("Riemann tensor agrees with a finite-difference oracle") {
  for (const char* name : {"round_s2", "hopf_lorentz_s3", "torus_family", "torus3_null_variant",
                           "conformal_counterexample", "schwarzschild_exterior", "static_product_warped"}) {
    const ManifoldSpec m = build_example(name);
    for (const auto& p : m.sample_points(4, 11)) {
      const Tensor4 exact = riemann_at(m, p);
      const Tensor4 fd = fd_riemann(m, p);
      INFO(name);
      CHECK(max_diff(exact, fd) <= 1e-5 * std::max(1.0, exact.max_abs()));
    }
  }
}

TEST_CASE("Christoffel symbols agree with a finite-difference oracle") {
  for (const auto& e : catalog()) {
    const ManifoldSpec m = e.build();
    for (const auto& p : m.sample_points(5, 3)) {
      const Tensor3 exact = christoffel_at(m, p);
      const Tensor3 fd = fd_christoffel(m, p, 1e-6);
      double diff = 0, size = 1;
      for (std::size_t i = 0; i < exact.data().size(); ++i) {
        diff = std::max(diff, std::abs(exact.data()[i] - fd.data()[i]));
        size = std::max(size, std::abs(exact.data()[i]));
      }
      INFO(e.name);
      CHECK(diff <= 1e-6 * size);
    }
  }
}

TEST_CASE("algebraic identities hold on every catalog entry") {
  for (const auto& e : catalog()) {
    const ManifoldSpec m = e.build();
    for (const auto& p : m.sample_points(50)) {
      const TensorIdentityResiduals r = tensor_identity_residuals(geometry_at(m, p));
      INFO(e.name);
      CHECK(r.max() <= 1e-8);
    }
  }
}

TEST_CASE("round spheres have unit sectional curvature") {
  const ManifoldSpec s2 = build_example("round_s2");
  for (const auto& p : s2.sample_points(20)) {
    CHECK(sectional_curvature(geometry_at(s2, p), Vec::Unit(2, 0), Vec::Unit(2, 1)) == doctest::Approx(1.0));
  }
  const ManifoldSpec s3 = build_example("round_s3");
  for (const auto& p : s3.sample_points(20)) {
    const PointGeometry geo = geometry_at(s3, p);
    CHECK(sectional_curvature(geo, vec({1, 0.3, -2}), vec({0.2, 1, 0.5})) == doctest::Approx(1.0));
    CHECK(geo.scalar == doctest::Approx(6.0));
  }
}

TEST_CASE("flat charts have zero curvature") {
  for (const char* name : {"minkowski2", "minkowski2_torus", "minkowski4"}) {
    const ManifoldSpec m = build_example(name);
    for (const auto& p : m.sample_points(10)) CHECK(riemann_at(m, p).max_abs() == 0.0);
  }
}

TEST_CASE("torus family: K = f'' on every non-degenerate plane") {
  const ManifoldSpec m = build_example("torus_family");
  for (double x : {0.0, 0.1, 0.25, 0.4, 0.5, 0.77}) {
    const double fpp = -kPi * kPi * std::cos(2 * kPi * x);
    CHECK(sectional_curvature(geometry_at(m, {x, 0.3}), Vec::Unit(2, 0), Vec::Unit(2, 1)) ==
          doctest::Approx(fpp).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("conformal counterexample curvature") {
  const ManifoldSpec m = build_example("conformal_counterexample");
  CHECK(sectional_curvature(geometry_at(m, {0.0, 0.0}), Vec::Unit(2, 0), Vec::Unit(2, 1)) ==
        doctest::Approx(-2.0).epsilon(1e-12));
  for (const auto& p : m.sample_points(20)) {
    const double expected = -2.0 * std::exp(2.0 * (p[0] * p[0] + 2 * p[1] * p[1]));
    CHECK(sectional_curvature(geometry_at(m, p), Vec::Unit(2, 0), Vec::Unit(2, 1)) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("Schwarzschild is Ricci flat with Kretschmann scalar 48 m^2 / r^6") {
  const ManifoldSpec m = build_example("schwarzschild_exterior");
  for (const auto& p : m.sample_points(20)) {
    const PointGeometry geo = geometry_at(m, p);
    CHECK(geo.ricci.cwiseAbs().maxCoeff() <= 1e-10);
    const Mat& gi = geo.metric.inverse;
    const int n = 4;
    double k = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            double up = 0;
            for (int e = 0; e < n; ++e)
              for (int f = 0; f < n; ++f)
                for (int g = 0; g < n; ++g)
                  for (int h = 0; h < n; ++h)
                    up += gi(a, e) * gi(b, f) * gi(c, g) * gi(d, h) * geo.riemann(e, f, g, h);
            k += geo.riemann(a, b, c, d) * up;
          }
    CHECK(k == doctest::Approx(48.0 / std::pow(p[1], 6)).epsilon(1e-9));
  }
}

TEST_CASE("warped static product: planes through d_t") {
  const ManifoldSpec m = build_example("static_product_warped");
  for (double x : {0.0, 0.13, 0.5, 0.9}) {
    const double c = std::cos(2 * kPi * x);
    CHECK(sectional_curvature(geometry_at(m, {x, 0.4}), Vec::Unit(2, 0), Vec::Unit(2, 1)) ==
          doctest::Approx(4 * kPi * kPi * c / (c + 4)).epsilon(1e-10));
  }
}

TEST_CASE("Einstein static universe: planes through d_t are flat, spatial planes have K = 1") {
  const ManifoldSpec m = build_example("static_product");
  for (const auto& p : m.sample_points(10)) {
    const PointGeometry geo = geometry_at(m, p);
    CHECK(std::abs(sectional_curvature(geo, Vec::Unit(4, 3), vec({1, 0.5, 0.2, 0}))) <= 1e-12);
    CHECK(sectional_curvature(geo, vec({1, 0, 0, 0}), vec({0, 1, 0.4, 0})) == doctest::Approx(1.0));
  }
}

TEST_CASE("sectional curvature is independent of the spanning pair") {
  const ManifoldSpec m = build_example("schwarzschild_exterior");
  const PointGeometry geo = geometry_at(m, {0.3, 4.0, 1.1, 2.0});
  const Vec u = vec({1, 0.2, 0, 0.1}), v = vec({0, 1, 0.3, 0});
  const double k = sectional_curvature(geo, u, v);
  CHECK(sectional_curvature(geo, 2 * u + v, u - 3 * v) == doctest::Approx(k).epsilon(1e-10));
  CHECK(sectional_curvature(geo, v, u) == doctest::Approx(k).epsilon(1e-12));
}

TEST_CASE("degenerate planes are refused by sectional_curvature") {
  const ManifoldSpec m = build_example("minkowski2");
  const PointGeometry geo = geometry_at(m, {0, 0});
  CHECK_THROWS_AS(sectional_curvature(geo, vec({1, 1}), vec({1, 1.0 + 1e-14})), Error);
  const ManifoldSpec m4 = build_example("minkowski4");
  CHECK_THROWS_AS(sectional_curvature(geometry_at(m4, {0, 0, 0, 0}), vec({1, 1, 0, 0}), vec({0, 0, 1, 0})),
                  DegeneratePlane);
}

TEST_CASE("covariant Hessian of the height function on the sphere") {
  // z = cos(theta) restricted to S^2 has Hess z = -z g.
  const ManifoldSpec m = build_example("round_s2");
  const Expr z = parse_expression("cos(theta)", m.declared_names());
  for (const auto& p : m.sample_points(10)) {
    const Mat h = hessian_scalar_at(m, z, p);
    const Mat expected = -std::cos(p[0]) * metric_at(m, p).g;
    CHECK((h - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("shape operator of translations and dilations") {
  const ManifoldSpec m = build_example("minkowski2");
  CHECK(shape_operator_at(m, m.field("T"), {0.3, 0.2}).cwiseAbs().maxCoeff() == 0.0);
  CHECK((shape_operator_at(m, m.field("E"), {0.3, 0.2}) + Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("curvature operator matches the lowered tensor") {
  const ManifoldSpec m = build_example("hopf_lorentz_s3");
  const PointGeometry geo = geometry_at(m, {0.6, 1.0, 2.0});
  const Vec u = vec({1, 0.2, 0}), v = vec({0, 1, -0.5}), w = vec({0.3, 0, 1}), z = vec({0.1, 0.7, 0.2});
  CHECK(geo.metric.inner(geo.curvature_operator(u, v, w), z) ==
        doctest::Approx(geo.riemann_contract(z, w, u, v)).epsilon(1e-12));
}
