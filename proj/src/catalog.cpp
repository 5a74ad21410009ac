#include "lorentz/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lorentz/dsl.hpp"
#include "lorentz/errors.hpp"

namespace lorentz {

const char* to_string(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::ClosedForm: return "closed_form";
    case Source::Identity: return "identity";
  }
  return "?";
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "==";
    case Comparison::AtMost: return "<=";
    case Comparison::AtLeast: return ">=";
  }
  return "?";
}

bool meets(Comparison c, double computed, double expected, double tol) {
  if (!std::isfinite(computed)) return false;
  switch (c) {
    case Comparison::Equal: return std::abs(computed - expected) <= tol;
    case Comparison::AtMost: return computed <= expected + tol;
    case Comparison::AtLeast: return computed >= expected - tol;
  }
  return false;
}

namespace {

constexpr double kPi = std::numbers::pi;

// ---- documents ---------------------------------------------------------

const char* kMinkowski2 = R"dsl(
[manifold]
name = minkowski2
coords = t, x
range.t = -inf, inf
range.x = -inf, inf
sample.t = -1, 1
sample.x = -1, 1
signature = lorentzian

[metric]
g.t.t = "-1"
g.x.x = "1"

[field.T]
t = "1"

# position field, homothetic with L_E g = 2 g
[field.E]
t = "t"
x = "x"
)dsl";

const char* kMinkowski2Torus = R"dsl(
[manifold]
name = minkowski2_torus
coords = t, x
range.t = 0, 1
range.x = 0, 1
periodic = t, x
signature = lorentzian

[metric]
g.t.t = "-1"
g.x.x = "1"

[field.T]
t = "1"
)dsl";

const char* kMinkowski4 = R"dsl(
[manifold]
name = minkowski4
coords = t, x, y, z
range.t = -inf, inf
range.x = -inf, inf
range.y = -inf, inf
range.z = -inf, inf
sample.t = -1, 1
sample.x = -1, 1
sample.y = -1, 1
sample.z = -1, 1
signature = lorentzian

[metric]
g.t.t = "-1"
g.x.x = "1"
g.y.y = "1"
g.z.z = "1"

[field.T]
t = "1"

[field.R]
x = "-y"
y = "x"
)dsl";

const char* kRoundS2 = R"dsl(
[manifold]
name = round_s2
coords = theta, phi
range.theta = 0, 3.141592653589793
range.phi = 0, 6.283185307179586
sample.theta = 0.1, 3.041592653589793
periodic = phi
signature = riemannian

[metric]
g.theta.theta = "1"
g.phi.phi = "sin(theta)^2"

[field.Z]
phi = "1"
)dsl";

// Hopf coordinates: (cos(eta) e^{i xi1}, sin(eta) e^{i xi2}).
const char* kRoundS3 = R"dsl(
[manifold]
name = round_s3
coords = eta, xi1, xi2
range.eta = 0, 1.5707963267948966
range.xi1 = 0, 6.283185307179586
range.xi2 = 0, 6.283185307179586
sample.eta = 0.001, 1.5697963267948966
periodic = xi1, xi2
signature = riemannian

[metric]
g.eta.eta = "1"
g.xi1.xi1 = "cos(eta)^2"
g.xi2.xi2 = "sin(eta)^2"

[field.H]
xi1 = "1"
xi2 = "1"
)dsl";

// g = g_round - 2 w (x) w, w = g_round(H, .) = cos^2 d xi1 + sin^2 d xi2.
const char* kHopfLorentz = R"dsl(
[manifold]
name = hopf_lorentz_s3
coords = eta, xi1, xi2
range.eta = 0, 1.5707963267948966
range.xi1 = 0, 6.283185307179586
range.xi2 = 0, 6.283185307179586
sample.eta = 0.001, 1.5697963267948966
periodic = xi1, xi2
signature = lorentzian

[metric]
g.eta.eta = "1"
g.xi1.xi1 = "cos(eta)^2 - 2*cos(eta)^4"
g.xi1.xi2 = "-2*cos(eta)^2*sin(eta)^2"
g.xi2.xi2 = "sin(eta)^2 - 2*sin(eta)^4"

[field.H]
xi1 = "1"
xi2 = "1"
)dsl";

const char* kTorus = R"dsl(
[manifold]
name = torus_family
coords = x, y
range.x = 0, 1
range.y = 0, 1
periodic = x, y
signature = lorentzian

[metric]
g.x.y = "1"
g.y.y = "2*(-1 + cos(2*pi*x)/4)"

[field.X]
y = "1"

[scalar.f]
value = "-1 + cos(2*pi*x)/4"
)dsl";

const char* kTorusSignChanging = R"dsl(
[manifold]
name = torus_family_sign_changing
coords = x, y
range.x = 0, 1
range.y = 0, 1
periodic = x, y
signature = lorentzian

[metric]
g.x.y = "1"
g.y.y = "2*(cos(2*pi*x)/4 - 1/8)"

[field.X]
y = "1"

[scalar.f]
value = "cos(2*pi*x)/4 - 1/8"
)dsl";

const char* kTorus3 = R"dsl(
[manifold]
name = torus3_null_variant
coords = x, y, z
range.x = -inf, inf
range.y = 0, 1
range.z = 0, 1
sample.x = -0.25, 0.75
periodic = y, z
signature = lorentzian

[metric]
g.x.y = "1"
g.y.y = "2*(-1 + cos(2*pi*x)/4)"
g.z.z = "2 + sin(2*pi*z)*exp(-x^2)"

[field.X]
y = "1"
)dsl";

const char* kConformal = R"dsl(
[manifold]
name = conformal_counterexample
coords = x, y
range.x = -1, 1
range.y = -1, 1
signature = lorentzian

[metric]
g.x.x = "exp(-2*(x^2 + 2*y^2))"
g.y.y = "-exp(-2*(x^2 + 2*y^2))"

[field.Y]
y = "1"

[scalar.u]
value = "-(x^2 + 2*y^2)"
)dsl";

const char* kSchwarzschild = R"dsl(
[manifold]
name = schwarzschild_exterior
coords = t, r, th, ph
range.t = -inf, inf
range.r = 2, inf
range.th = 0, 3.141592653589793
range.ph = 0, 6.283185307179586
sample.t = 0, 1
sample.r = 2.5, 20
sample.th = 0.1, 3.041592653589793
periodic = ph
signature = lorentzian

[params]
m = 1

[metric]
g.t.t = "-(1 - 2*m/r)"
g.r.r = "1/(1 - 2*m/r)"
g.th.th = "r^2"
g.ph.ph = "r^2*sin(th)^2"

[field.T]
t = "1"
)dsl";

// R x S^3 with the round base (Einstein static universe), rho = 1.
const char* kStaticProduct = R"dsl(
[manifold]
name = static_product
coords = eta, xi1, xi2, t
range.eta = 0, 1.5707963267948966
range.xi1 = 0, 6.283185307179586
range.xi2 = 0, 6.283185307179586
range.t = -inf, inf
sample.eta = 0.001, 1.5697963267948966
sample.t = 0, 1
periodic = xi1, xi2
signature = lorentzian

[params]
rho = 1

[metric]
g.eta.eta = "1"
g.xi1.xi1 = "cos(eta)^2"
g.xi2.xi2 = "sin(eta)^2"
g.t.t = "-rho^2"

[field.T]
t = "1"
)dsl";

const char* kStaticWarped = R"dsl(
[manifold]
name = static_product_warped
coords = x, t
range.x = 0, 1
range.t = -inf, inf
sample.t = 0, 1
periodic = x
signature = lorentzian

[metric]
g.x.x = "1"
g.t.t = "-(1 + cos(2*pi*x)/4)^2"

[field.T]
t = "1"
)dsl";

// ---- quantities ---------------------------------------------------------

ManifoldSpec from_doc(const char* doc) { return load_spec(doc); }

const VectorField& designated(const CatalogEntry& e, const ManifoldSpec& m) { return m.field(e.field); }

// Sampled value farthest from `target`.
double farthest(double current, double candidate, double target) {
  if (!std::isfinite(current) || std::abs(candidate - target) > std::abs(current - target)) return candidate;
  return current;
}

double random_plane_extreme(const ManifoldSpec& m, double target, int points, int planes) {
  std::mt19937_64 rng(0xc0ffeeULL);
  std::normal_distribution<double> normal;
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (const auto& p : m.sample_points(points, 0xa11ceULL)) {
    const PointGeometry geo = geometry_at(m, p);
    for (int k = 0; k < planes; ++k) {
      Vec u(m.dim()), v(m.dim());
      for (int i = 0; i < m.dim(); ++i) {
        u(i) = normal(rng);
        v(i) = normal(rng);
      }
      try {
        worst = farthest(worst, sectional_curvature(geo, u, v), target);
      } catch (const DegeneratePlane&) {
      }
    }
  }
  return worst;
}

double containing_extreme(const ManifoldSpec& m, const VectorField& x, double target, int points) {
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (const auto& p : m.sample_points(points, 0xb0bULL)) {
    for (const auto& s : sample_planes_containing(m, x, p, 8)) {
      if (s.k) worst = farthest(worst, *s.k, target);
    }
  }
  return worst;
}

double max_ricci(const ManifoldSpec& m, int points) {
  double worst = 0.0;
  for (const auto& p : m.sample_points(points)) worst = std::max(worst, ricci_at(m, p).ricci.cwiseAbs().maxCoeff());
  return worst;
}

double max_hessian_residual(const ManifoldSpec& m, const VectorField& x, int points) {
  double worst = 0.0;
  for (const auto& p : m.sample_points(points, 0x4e55ULL)) worst = std::max(worst, hessian_identity_residual(m, x, p));
  return worst;
}

FieldClass field_class(const ManifoldSpec& m, const VectorField& x) { return classify_field(m, x, m.sample_points(32)); }

ExtremaScan scan64(const ManifoldSpec& m, const VectorField& x) {
  ScanOptions o;
  o.resolution = 64;
  return scan_extrema(m, x, o);
}

const ExtremumRecord& first_of(const ExtremaScan& s, ExtremumKind kind) {
  for (const auto& r : s.records) {
    if (r.kind == kind) return r;
  }
  throw Error(std::string("scan found no ") + to_string(kind));
}

double count_of(const ExtremaScan& s, ExtremumKind kind) {
  double n = 0;
  for (const auto& r : s.records) n += r.kind == kind ? 1 : 0;
  return n;
}

double witness_value(const ManifoldSpec& m, const VectorField& x) {
  const auto scan = scan64(m, x);
  const WitnessReport w = minimum_witness(m, x, first_of(scan, ExtremumKind::LocalMin));
  if (w.verdict == Verdict::OutOfScope) throw Error("witness out of scope: " + w.note);
  return w.value;
}

double max_side_extreme(const ManifoldSpec& m, const VectorField& x, double target) {
  const auto scan = scan64(m, x);
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : sample_planes_containing(m, x, first_of(scan, ExtremumKind::LocalMax).point, 32)) {
    worst = farthest(worst, s.value, target);
  }
  return worst;
}

double sign_zero(const CatalogEntry& e, const ManifoldSpec& m, std::size_t axis) {
  const auto report = plane_sign_scan(m, designated(e, m), e.paths.at(0));
  if (!report.zero) throw Error("no sign change or zero along the path");
  return report.zero->detected[axis];
}

double periodic_distance(double a, double b, double period) {
  const double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

// Lorentzian Hopf: K(span{u, iu}) over horizontal u at sampled points, i
// taken from the complex structure of C^2 through the embedding.
double hopf_holomorphic_extreme(const ManifoldSpec& m, double target) {
  double worst = std::numeric_limits<double>::quiet_NaN();
  std::mt19937_64 rng(0x401fULL);
  std::normal_distribution<double> normal;
  for (const auto& p : m.sample_points(20, 0x407fULL)) {
    const double eta = p[0], a = p[1], b = p[2];
    Eigen::Matrix<double, 4, 3> jac;
    jac << -std::sin(eta) * std::cos(a), -std::cos(eta) * std::sin(a), 0,
        -std::sin(eta) * std::sin(a), std::cos(eta) * std::cos(a), 0,
        std::cos(eta) * std::cos(b), 0, -std::sin(eta) * std::sin(b),
        std::cos(eta) * std::sin(b), 0, std::sin(eta) * std::cos(b);
    auto mult_i = [](const Eigen::Vector4d& z) { return Eigen::Vector4d(-z(1), z(0), -z(3), z(2)); };
    const PointGeometry geo = geometry_at(m, p);
    // horizontal = g_round-orthogonal to the Hopf field (1,1) in (xi1, xi2)
    const Vec h1 = Vec::Unit(3, 0);
    const Vec h2 = (Vec(3) << 0.0, std::tan(eta), -1.0 / std::tan(eta)).finished();
    const Vec u = normal(rng) * h1 + normal(rng) * h2;
    const Eigen::Vector4d iu4 = mult_i(jac * u);
    const Vec iu = jac.colPivHouseholderQr().solve(iu4);
    worst = farthest(worst, sectional_curvature(geo, u, iu), target);
  }
  return worst;
}

Point torus_point(double x) { return {x, 0.0}; }

Expectation expect(std::string q, double value, double tol, Source src, Comparison cmp, std::string note,
                   std::function<double(const CatalogEntry&, const ManifoldSpec&)> fn) {
  return Expectation{std::move(q), value, tol, src, cmp, std::move(note), std::move(fn)};
}

Expectation killing_row(Source src = Source::ClosedForm) {
  return expect("killing residual", 0.0, 1e-10, src, Comparison::AtMost, "designated field is Killing",
                [](const CatalogEntry& e, const ManifoldSpec& m) {
                  const FieldClass fc = field_class(m, designated(e, m));
                  return fc.tag == FieldClass::Tag::Killing ? fc.killing_residual : std::numeric_limits<double>::infinity();
                });
}

Expectation hessian_row(double tol = 1e-7) {
  return expect("hessian identity residual (20 points)", 0.0, tol, Source::Identity, Comparison::AtMost, "",
                [](const CatalogEntry& e, const ManifoldSpec& m) { return max_hessian_residual(m, designated(e, m), 20); });
}

Expectation flat_row() {
  return expect("sectional curvature (random planes)", 0.0, 1e-10, Source::Identity, Comparison::Equal, "flat",
                [](const CatalogEntry&, const ManifoldSpec& m) { return random_plane_extreme(m, 0.0, 10, 10); });
}

ManifoldSpec torus_lift(double c2, LiftMode mode) {
  const ManifoldSpec base = from_doc(kTorus);
  return circle_lift(base, base.field("X"), std::sqrt(c2), mode);
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.name = "minkowski2";
    e.description = "flat R^2_1, T = d_t (Killing) and E = t d_t + x d_x (homothetic)";
    e.field = "T";
    e.build = [] { return from_doc(kMinkowski2); };
    e.paths = {linear_path({-0.5, -0.5}, {0.5, 0.5}, 16)};
    e.expectations = {
        flat_row(),
        killing_row(Source::Identity),
        expect("homothety constant of E", 2.0, 1e-10, Source::Identity, Comparison::Equal, "L_E g = 2 g",
               [](const CatalogEntry&, const ManifoldSpec& m) {
                 const FieldClass fc = field_class(m, m.field("E"));
                 return fc.tag == FieldClass::Tag::Homothetic ? fc.lambda : std::numeric_limits<double>::quiet_NaN();
               }),
        expect("skew-adjoint residual of A_E", 2.0, 1e-12, Source::Identity, Comparison::Equal,
               "A_E = -Id is self-adjoint", [](const CatalogEntry&, const ManifoldSpec& m) {
                 return skew_adjoint_residual(m, m.field("E"), {0.3, -0.2});
               }),
        expect("witness K on the plateau", 0.0, 1e-10, Source::Identity, Comparison::Equal, "equality case",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return witness_value(m, designated(e, m)); }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "minkowski2_torus";
    e.description = "flat Lorentzian torus R^2_1 / Z^2";
    e.field = "T";
    e.build = [] { return from_doc(kMinkowski2Torus); };
    e.paths = {linear_path({0.1, 0.1}, {0.9, 0.7}, 24)};
    e.expectations = {
        flat_row(),
        killing_row(Source::Identity),
        expect("max |K| along the path (planes through T)", 0.0, 1e-10, Source::Identity, Comparison::Equal,
               "zero everywhere, no strict sign", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const auto r = plane_sign_scan(m, designated(e, m), e.paths[0]);
                 return std::max(std::abs(r.min_value), std::abs(r.max_value));
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "minkowski4";
    e.description = "flat R^4_1 with T = d_t and the rotation R = -y d_x + x d_y";
    e.field = "T";
    e.build = [] { return from_doc(kMinkowski4); };
    e.expectations = {
        flat_row(),
        killing_row(Source::Identity),
        expect("max |Ric|", 0.0, 1e-12, Source::Identity, Comparison::AtMost, "",
               [](const CatalogEntry&, const ManifoldSpec& m) { return max_ricci(m, 10); }),
        hessian_row(),
        expect("killing residual of R", 0.0, 1e-10, Source::Identity, Comparison::AtMost, "",
               [](const CatalogEntry&, const ManifoldSpec& m) { return field_class(m, m.field("R")).killing_residual; }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "round_s2";
    e.description = "unit sphere S^2 in polar coordinates";
    e.field = "Z";
    e.build = [] { return from_doc(kRoundS2); };
    e.expectations = {
        expect("sectional curvature", 1.0, 1e-8, Source::Identity, Comparison::Equal, "unit sphere",
               [](const CatalogEntry&, const ManifoldSpec& m) { return random_plane_extreme(m, 1.0, 20, 4); }),
        killing_row(Source::Identity),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "round_s3";
    e.description = "unit sphere S^3 in Hopf coordinates with the Hopf field H";
    e.field = "H";
    e.build = [] { return from_doc(kRoundS3); };
    e.expectations = {
        expect("sectional curvature", 1.0, 1e-8, Source::Identity, Comparison::Equal, "unit sphere",
               [](const CatalogEntry&, const ManifoldSpec& m) { return random_plane_extreme(m, 1.0, 20, 6); }),
        killing_row(Source::Published),
        expect("g(H,H)", 1.0, 1e-12, Source::Identity, Comparison::Equal, "unit Hopf fibres",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 double worst = std::numeric_limits<double>::quiet_NaN();
                 for (const auto& p : m.sample_points(20)) {
                   const Vec h = designated(e, m).at(m.bindings(p));
                   worst = farthest(worst, metric_at(m, p).inner(h, h), 1.0);
                 }
                 return worst;
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "hopf_lorentz_s3";
    e.description = "S^3 with the Hopf fibres made timelike: g = g_round - 2 w (x) w";
    e.field = "H";
    e.build = [] { return from_doc(kHopfLorentz); };
    e.paths = {linear_path({0.2, 0.0, 0.0}, {1.3, 1.0, 2.0}, 16)};
    e.expectations = {
        expect("K of planes containing H", -1.0, 1e-8, Source::Published, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return containing_extreme(m, designated(e, m), -1.0, 50); }),
        expect("g(H,H)", -1.0, 1e-12, Source::Published, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return 2.0 * scan64(m, designated(e, m)).f_min; }),
        expect("K(span{u, iu}), u horizontal", 7.0, 1e-6, Source::ClosedForm, Comparison::Equal,
               "K_FS + 3 g(iu,iu)^2 with K_FS = 4",
               [](const CatalogEntry&, const ManifoldSpec& m) { return hopf_holomorphic_extreme(m, 7.0); }),
        killing_row(Source::Published),
        hessian_row(),
        expect("max |g - flip(round_s3)|", 0.0, 1e-10, Source::Published, Comparison::AtMost,
               "agrees with the Killing-field flip of the round metric", [](const CatalogEntry&, const ManifoldSpec& m) {
                 const ManifoldSpec round = from_doc(kRoundS3);
                 const ManifoldSpec flipped = lorentzianize(round, round.field("H"));
                 double worst = 0.0;
                 for (const auto& p : m.sample_points(20, 0x77ULL)) {
                   worst = std::max(worst, (metric_at(m, p).g - metric_at(flipped, p).g).cwiseAbs().maxCoeff());
                 }
                 return worst;
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "torus_family";
    e.description = "Lorentzian torus g = 2 dx dy + 2 f(x) dy^2, f = -1 + cos(2 pi x)/4, X = d_y";
    e.field = "X";
    e.build = [] { return from_doc(kTorus); };
    e.paths = {linear_path(torus_point(0.5), torus_point(0.0), 64)};
    e.expectations = {
        killing_row(),
        expect("K - f''(x) (random planes)", 0.0, 1e-9, Source::ClosedForm, Comparison::Equal, "K = f''",
               [](const CatalogEntry&, const ManifoldSpec& m) {
                 double worst = 0.0;
                 for (const auto& p : m.sample_points(30)) {
                   const double k = sectional_curvature(geometry_at(m, p), Vec::Unit(2, 0), Vec::Unit(2, 1));
                   worst = std::max(worst, std::abs(k + kPi * kPi * std::cos(2 * kPi * p[0])));
                 }
                 return worst;
               }),
        expect("local min x", 0.5, 1e-4, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).point[0];
               }),
        expect("f at the local min", -1.25, 1e-10, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).f;
               }),
        expect("local max distance to x = 0", 0.0, 1e-4, Source::ClosedForm, Comparison::AtMost, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return periodic_distance(first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMax).point[0], 0.0, 1.0);
               }),
        expect("witness K at the min", kPi * kPi, 1e-4, Source::ClosedForm, Comparison::Equal, "f''(1/2) = pi^2",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return witness_value(m, designated(e, m)); }),
        expect("K of planes through X at the max", -kPi * kPi, 1e-4, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return max_side_extreme(m, designated(e, m), -kPi * kPi);
               }),
        expect("sign-scan zero x (N = 64)", 0.25, 2.0 / 64, Source::ClosedForm, Comparison::Equal, "cos(2 pi x) = 0",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return sign_zero(e, m, 0); }),
        expect("conformal bound at the min", 0.0, 1e-9, Source::Identity, Comparison::Equal, "sigma = 0",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return conformal_bound_check(m, designated(e, m), torus_point(0.5)).bound;
               }),
        hessian_row(),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "torus_family_sign_changing";
    e.description = "torus_family with f = cos(2 pi x)/4 - 1/8; X spacelike near x = 0";
    e.field = "X";
    e.build = [] { return from_doc(kTorusSignChanging); };
    e.paths = {linear_path(torus_point(0.5), torus_point(0.0), 64)};
    e.expectations = {
        killing_row(),
        expect("witness K at the min", kPi * kPi, 1e-4, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return witness_value(m, designated(e, m)); }),
        expect("g(X,X) at the max", 0.25, 1e-10, Source::ClosedForm, Comparison::Equal, "spacelike",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return 2.0 * first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMax).f;
               }),
        expect("g(X,X) at the min", -0.75, 1e-10, Source::ClosedForm, Comparison::Equal, "timelike",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return 2.0 * first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).f;
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "torus3_null_variant";
    e.description = "2 dx dy + 2 f(x) dy^2 + h(x,z) dz^2, h = 2 + sin(2 pi z) exp(-x^2)";
    e.field = "X";
    e.build = [] { return from_doc(kTorus3); };
    e.expectations = {
        killing_row(),
        hessian_row(),
        expect("g(X,X) at the min", -2.5, 1e-10, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return 2.0 * first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).f;
               }),
        expect("witness in scope (timelike X, m = 3)", 0.0, 0.0, Source::Identity, Comparison::Equal,
               "odd dimension with timelike X", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const auto& x = designated(e, m);
                 const auto w = minimum_witness(m, x, first_of(scan64(m, x), ExtremumKind::LocalMin));
                 return w.verdict == Verdict::OutOfScope ? 0.0 : 1.0;
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "conformal_counterexample";
    e.description = "g = exp(2u)(dx^2 - dy^2), u = -(x^2 + 2 y^2), conformal Y = d_y";
    e.field = "Y";
    e.build = [] { return from_doc(kConformal); };
    e.conformal_point = Point{0.0, 0.0};
    e.expectations = {
        expect("min of g(Y,Y): |p|", 0.0, 1e-4, Source::ClosedForm, Comparison::AtMost, "at the origin",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const Point p = first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).point;
                 return std::hypot(p[0], p[1]);
               }),
        expect("K(0,0)", -2.0, 1e-6, Source::ClosedForm, Comparison::Equal, "-(u_xx - u_yy) e^0",
               [](const CatalogEntry&, const ManifoldSpec& m) {
                 return sectional_curvature(geometry_at(m, {0.0, 0.0}), Vec::Unit(2, 0), Vec::Unit(2, 1));
               }),
        expect("max K at 100 samples", 0.0, 0.0, Source::ClosedForm, Comparison::AtMost,
               "K = -2 exp(2(x^2 + 2y^2)) < 0", [](const CatalogEntry&, const ManifoldSpec& m) {
                 double worst = -std::numeric_limits<double>::infinity();
                 for (const auto& p : m.sample_points(100)) {
                   worst = std::max(worst, sectional_curvature(geometry_at(m, p), Vec::Unit(2, 0), Vec::Unit(2, 1)));
                 }
                 return worst;
               }),
        expect("sigma(0,0)", 0.0, 1e-9, Source::ClosedForm, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return conformal_factor_at(m, designated(e, m), {0, 0}).sigma; }),
        expect("X(sigma)(0,0)", -8.0, 1e-9, Source::ClosedForm, Comparison::Equal,
               "2 u_yy; -4 is the value usually quoted", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return conformal_factor_at(m, designated(e, m), {0, 0}).along_x;
               }),
        expect("K - bound at (0,0)", 0.0, 1e-6, Source::ClosedForm, Comparison::AtLeast, "bound holds",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const auto r = conformal_bound_check(m, designated(e, m), {0, 0});
                 return r.k - r.bound;
               }),
        expect("witness K (the K >= 0 inequality fails)", -2.0, 1e-6, Source::ClosedForm, Comparison::Equal,
               "counterexample", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const auto r = conformal_bound_check(m, designated(e, m), {0, 0});
                 return r.nonnegative_verdict == Verdict::Fail ? r.k : std::numeric_limits<double>::quiet_NaN();
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "schwarzschild_exterior";
    e.description = "Schwarzschild exterior, static chart, m = 1";
    e.field = "T";
    e.build = [] { return from_doc(kSchwarzschild); };
    e.expectations = {
        expect("max |Ric| (50 points)", 0.0, 1e-6, Source::Published, Comparison::AtMost, "vacuum",
               [](const CatalogEntry&, const ManifoldSpec& m) { return max_ricci(m, 50); }),
        expect("f - (m/r - 1/2)", 0.0, 1e-10, Source::Published, Comparison::Equal, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 double worst = 0.0;
                 const Expr f = half_norm_expr(m, designated(e, m));
                 for (const auto& p : m.sample_points(50)) {
                   worst = std::max(worst, std::abs(f.evaluate(m.bindings(p)) - (m.param("m") / p[1] - 0.5)));
                 }
                 return worst;
               }),
        expect("interior local minima", 0.0, 0.0, Source::Published, Comparison::Equal, "infimum only at infinity",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return count_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin);
               }),
        killing_row(Source::Published),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "static_product";
    e.description = "static product R x S^3 (round base, fibre (R, -dt^2), rho = 1)";
    e.field = "T";
    e.build = [] { return from_doc(kStaticProduct); };
    e.expectations = {
        killing_row(Source::Published),
        expect("K of planes containing T", 0.0, 1e-8, Source::Published, Comparison::Equal, "Ric >= 0 on timelike vectors",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return containing_extreme(m, designated(e, m), 0.0, 20); }),
        expect("min Ric(v,v), v unit timelike", 0.0, 1e-10, Source::ClosedForm, Comparison::AtLeast, "timelike convergence",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 double worst = std::numeric_limits<double>::infinity();
                 std::mt19937_64 rng(0x7cc);
                 std::normal_distribution<double> normal;
                 for (const auto& p : m.sample_points(20)) {
                   const PointGeometry geo = geometry_at(m, p);
                   const Vec t = designated(e, m).at(m.bindings(p));
                   for (int k = 0; k < 8; ++k) {
                     Vec s(m.dim());
                     for (int i = 0; i < m.dim(); ++i) s(i) = 0.3 * normal(rng);
                     Vec v = t + s - (geo.metric.inner(s, t) / geo.metric.inner(t, t)) * t;
                     const double n2 = geo.metric.inner(v, v);
                     if (n2 >= 0) continue;
                     v /= std::sqrt(-n2);
                     worst = std::min(worst, v.dot(geo.ricci * v));
                   }
                 }
                 return worst;
               }),
        hessian_row(),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "static_product_warped";
    e.description = "dx^2 - rho(x)^2 dt^2 with rho = 1 + cos(2 pi x)/4";
    e.field = "T";
    e.build = [] { return from_doc(kStaticWarped); };
    e.expectations = {
        killing_row(),
        expect("local min x (periodic distance to 0)", 0.0, 1e-4, Source::ClosedForm, Comparison::AtMost, "rho largest",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return periodic_distance(first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMin).point[0], 0.0, 1.0);
               }),
        expect("witness K at the min", 4 * kPi * kPi / 5, 1e-6, Source::ClosedForm, Comparison::Equal,
               "-rho''/rho at x = 0", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return witness_value(m, designated(e, m));
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "circle_lift_torus";
    e.description = "torus_family x S^1 with Xbar = X + c d_theta, c^2 = 3/2 = -max g(X,X)";
    e.field = "Xbar";
    e.build = [] { return torus_lift(1.5, LiftMode::CausalLocus); };
    e.expectations = {
        killing_row(),
        hessian_row(),
        expect("max gbar(Xbar,Xbar)", 0.0, 1e-10, Source::ClosedForm, Comparison::Equal, "causal, null on x = 0",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return 2.0 * scan64(m, designated(e, m)).f_max; }),
        expect("lightlike locus distance to x = 0", 0.0, 1e-4, Source::ClosedForm, Comparison::AtMost, "",
               [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return periodic_distance(first_of(scan64(m, designated(e, m)), ExtremumKind::LocalMax).point[0], 0.0, 1.0);
               }),
        expect("null sectional curvature on the locus", 1.5 * kPi * kPi, 1e-6, Source::ClosedForm, Comparison::Equal,
               "maximum of gbar(Xbar,Xbar), not a minimum", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 const auto& x = designated(e, m);
                 return witness_construction(m, x, {0.0, 0.0, 0.0}, field_class(m, x)).value;
               }),
    };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "circle_lift_torus_nontimelike";
    e.description = "torus_family x S^1 with c^2 = 5/2 = -min g(X,X): Xbar nowhere timelike";
    e.field = "Xbar";
    e.build = [] { return torus_lift(2.5, LiftMode::General); };
    e.expectations = {
        killing_row(),
        expect("min gbar(Xbar,Xbar)", 0.0, 1e-10, Source::ClosedForm, Comparison::Equal, "lightlike minimum at x = 1/2",
               [](const CatalogEntry& e, const ManifoldSpec& m) { return 2.0 * scan64(m, designated(e, m)).f_min; }),
        expect("witness null sectional curvature at the min", -2.5 * kPi * kPi, 1e-6, Source::ClosedForm,
               Comparison::Equal, "", [](const CatalogEntry& e, const ManifoldSpec& m) {
                 return witness_value(m, designated(e, m));
               }),
    };
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw Error("unknown catalog entry '" + name + "'");
}

ManifoldSpec build_example(const std::string& name) { return catalog_entry(name).build(); }

std::vector<CheckResult> run_expectations(const CatalogEntry& entry) {
  const ManifoldSpec m = entry.build();
  std::vector<CheckResult> out;
  for (const auto& ex : entry.expectations) {
    CheckResult r;
    r.quantity = ex.quantity;
    r.expected = ex.value;
    r.tolerance = ex.tolerance;
    r.source = ex.source;
    r.comparison = ex.comparison;
    r.note = ex.note;
    try {
      r.computed = ex.compute(entry, m);
      r.verdict = meets(ex.comparison, r.computed, ex.value, ex.tolerance) ? Verdict::Pass : Verdict::Fail;
    } catch (const std::exception& err) {
      r.computed = std::numeric_limits<double>::quiet_NaN();
      r.verdict = Verdict::Fail;
      r.note = err.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace lorentz
