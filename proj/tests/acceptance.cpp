// Acceptance checks, one line per criterion.
//   acceptance                 run all
//   acceptance --criterion N   run one; exit status 0 iff it passes

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorentz/catalog.hpp"
#include "lorentz/obstruction.hpp"

using namespace lorentz;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const ExtremumRecord* first(const ExtremaScan& s, ExtremumKind kind) {
  for (const auto& r : s.records)
    if (r.kind == kind) return &r;
  return nullptr;
}

Vec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

void convention_gate(Outcome& o) {
  std::mt19937_64 rng(1);
  const ManifoldSpec s2 = build_example("round_s2");
  double worst_s2 = 0;
  for (const auto& p : s2.sample_points(50)) {
    const PointGeometry geo = geometry_at(s2, p);
    worst_s2 = std::max(worst_s2, std::abs(sectional_curvature(geo, random_vec(rng, 2), random_vec(rng, 2)) - 1.0));
  }
  const ManifoldSpec s3 = build_example("round_s3");
  double worst_s3 = 0;
  for (const auto& p : s3.sample_points(50)) {
    const PointGeometry geo = geometry_at(s3, p);
    worst_s3 = std::max(worst_s3, std::abs(sectional_curvature(geo, random_vec(rng, 3), random_vec(rng, 3)) - 1.0));
  }
  const ManifoldSpec hopf = build_example("hopf_lorentz_s3");
  const VectorField& h = hopf.field("H");
  double worst_hopf = 0;
  for (const auto& p : hopf.sample_points(50)) {
    const PointGeometry geo = geometry_at(hopf, p);
    const Vec x = h.at(hopf.bindings(p));
    worst_hopf = std::max(worst_hopf, std::abs(sectional_curvature(geo, x, random_vec(rng, 3)) + 1.0));
  }
  o.require(worst_s2 <= 1e-8, "S2 K = 1");
  o.require(worst_s3 <= 1e-8, "S3 K = 1");
  o.require(worst_hopf <= 1e-8, "Hopf K = -1");
  o.detail << "max |K - 1| on S2 " << worst_s2 << ", on S3 " << worst_s3 << "; max |K + 1| on Hopf planes through X "
           << worst_hopf;
}

void hessian_identity(Outcome& o) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"torus_family", "X"}, {"hopf_lorentz_s3", "H"}, {"minkowski4", "T"}, {"circle_lift_torus", "Xbar"}};
  for (const auto& [name, field] : cases) {
    const ManifoldSpec m = build_example(name);
    double worst = 0;
    for (const auto& p : m.sample_points(20, 2024)) worst = std::max(worst, hessian_identity_residual(m, m.field(field), p));
    o.require(worst < 1e-7, name);
    o.detail << name << " " << worst << "; ";
  }
}

void timelike_witness(Outcome& o) {
  const ManifoldSpec m = build_example("torus_family");
  const VectorField& x = m.field("X");
  ScanOptions opts;
  opts.resolution = 64;
  const ExtremaScan s = scan_extrema(m, x, opts);
  const ExtremumRecord* min = first(s, ExtremumKind::LocalMin);
  const ExtremumRecord* max = first(s, ExtremumKind::LocalMax);
  o.require(min && std::abs(min->point[0] - 0.5) <= 1e-4, "minimum at x = 0.5");
  o.require(max && std::abs(max->point[0]) <= 1e-4, "maximum at x = 0");
  if (!min || !max) return;
  const WitnessReport w = minimum_witness(m, x, *min);
  o.require(w.verdict == Verdict::Pass, "witness verdict");
  o.require(std::abs(w.value - kPi * kPi) <= 1e-4, "witness K = pi^2");
  double worst = 0;
  bool nonpositive = true;
  for (const auto& pl : sample_planes_containing(m, x, max->point, 32)) {
    const double k = pl.k.value_or(NAN);
    worst = std::max(worst, std::abs(k + kPi * kPi));
    nonpositive = nonpositive && k <= 0.0;
  }
  o.require(worst <= 1e-4 && nonpositive, "32 planes at the maximum");
  o.detail << "min x = " << min->point[0] << ", witness K = " << w.value << " (" << to_string(w.verdict)
           << "); max x = " << max->point[0] << ", max |K + pi^2| over 32 planes " << worst;
}

void lightlike_witness(Outcome& o) {
  const ManifoldSpec base = build_example("torus_family");
  LiftReport lr;
  const ManifoldSpec m = circle_lift(base, base.field("X"), std::sqrt(1.5), LiftMode::CausalLocus, &lr);
  const VectorField& xbar = m.field(lr.field_name);
  o.require(!lr.lightlike_locus.empty() && std::abs(lr.lightlike_locus[0][0]) <= 1e-4, "locus at x = 0");
  if (lr.lightlike_locus.empty()) return;
  const Point p = lr.lightlike_locus[0];

  const WitnessReport w = witness_construction(m, xbar, p, lr.killing);
  o.require(w.plane.has_value(), "quotient construction");
  if (!w.plane) return;

  // Brute-force R(v,X,v,X)/g(v,v) from the raw components.
  const Tensor4 r = riemann_at(m, p);
  const Vec x = xbar.at(m.bindings(p));
  const Vec& v = w.plane->u;
  double q = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) q += r(a, b, c, d) * v(a) * x(b) * v(c) * x(d);
  q /= metric_at(m, p).inner(v, v);
  o.require(std::abs(q - w.value) <= 1e-8, "brute-force contraction");
  o.require(w.value <= 1e-6, "K_X <= 1e-6");
  o.require(w.verdict == Verdict::Pass, "verdict");

  const ExtremaScan s = scan_extrema(m, xbar);
  std::string kind_at_locus = "?";
  for (const auto& rec : s.records)
    if (std::abs(rec.point[0]) <= 1e-4) kind_at_locus = to_string(rec.kind);
  o.detail << "locus x = " << p[0] << " is a " << kind_at_locus << " of gbar(Xbar,Xbar); K_X = " << w.value
           << " (3 pi^2/2 = " << 1.5 * kPi * kPi << "), brute force " << q << ", verdict " << to_string(w.verdict);
}

void sign_change(Outcome& o) {
  const ManifoldSpec m = build_example("torus_family");
  double errors[2] = {0, 0};
  int i = 0;
  for (int n : {64, 128}) {
    const SignScanReport r = plane_sign_scan(m, m.field("X"), linear_path({0.0, 0.0}, {0.5, 0.0}, n));
    o.require(r.zero.has_value(), "zero found");
    if (!r.zero) return;
    const double err = std::abs(r.zero->detected[0] - 0.25);
    o.require(err <= 2.0 / n, "zero within 2/N");
    errors[i++] = err;
    o.detail << "N = " << n << ": zero at x = " << r.zero->detected[0] << " (error " << err << "); ";
  }
  const double ratio = errors[0] / errors[1];
  o.require(ratio >= 2.0 / 1.5 && ratio <= 2.0 * 1.5, "error halving");
  o.detail << "error ratio " << ratio;
}

void conformal_counterexample(Outcome& o) {
  const ManifoldSpec m = build_example("conformal_counterexample");
  const VectorField& y = m.field("Y");
  ScanOptions opts;
  opts.resolution = 64;
  const ExtremaScan s = scan_extrema(m, y, opts);
  const ExtremumRecord* min = first(s, ExtremumKind::LocalMin);
  o.require(min && std::hypot(min->point[0], min->point[1]) <= 1e-4, "minimum at the origin");
  const double k0 = sectional_curvature(geometry_at(m, {0.0, 0.0}), Vec::Unit(2, 0), Vec::Unit(2, 1));
  o.require(std::abs(k0 + 2.0) <= 1e-6, "K(0,0) = -2");
  double kmax = -INFINITY;
  for (const auto& p : m.sample_points(100))
    kmax = std::max(kmax, sectional_curvature(geometry_at(m, p), Vec::Unit(2, 0), Vec::Unit(2, 1)));
  o.require(kmax < 0.0, "K < 0 at 100 samples");
  const ConformalReport c = conformal_bound_check(m, y, {0.0, 0.0});
  o.require(c.nonnegative_verdict == Verdict::Fail, "K >= 0 fails");
  o.require(c.bound_verdict == Verdict::Pass, "bound holds");
  o.require(std::abs(c.sigma) <= 1e-9, "sigma = 0");
  o.require(c.x_sigma < 0.0, "X(sigma) < 0");
  o.detail << "K(0,0) = " << k0 << ", max sampled K " << kmax << ", bound " << c.bound << " (K >= 0 "
           << to_string(c.nonnegative_verdict) << ", K >= bound " << to_string(c.bound_verdict) << "), sigma = "
           << c.sigma << ", X(sigma) = " << c.x_sigma
           << (std::abs(c.x_sigma + 4.0) > 1e-9 ? " [differs from the usually quoted -4]" : "");
}

void schwarzschild(Outcome& o) {
  const ManifoldSpec m = build_example("schwarzschild_exterior");
  const VectorField& t = m.field("T");
  const Expr f = half_norm_expr(m, t);
  const double mass = m.param("m");
  double ricci = 0, profile = 0;
  for (const auto& p : m.sample_points(50)) {
    ricci = std::max(ricci, ricci_at(m, p).ricci.cwiseAbs().maxCoeff());
    profile = std::max(profile, std::abs(f.evaluate(m.bindings(p)) - (mass / p[1] - 0.5)));
  }
  const ExtremaScan s = scan_extrema(m, t);
  const bool no_min = first(s, ExtremumKind::LocalMin) == nullptr;
  o.require(ricci < 1e-6, "Ricci flat");
  o.require(profile <= 1e-10, "f = m/r - 1/2");
  o.require(no_min, "no interior minimum");
  o.detail << "max |Ric| " << ricci << ", max |f - (m/r - 1/2)| " << profile << ", local minima "
           << (no_min ? 0 : 1);
}

void lorentz_flip(Outcome& o) {
  const ManifoldSpec s3 = build_example("round_s3");
  const ManifoldSpec hopf = build_example("hopf_lorentz_s3");
  const ManifoldSpec flipped = lorentzianize(s3, s3.field("H"));
  const ManifoldSpec back = flip_metric(flipped, flipped.field("H"), "back", Signature::Riemannian);
  double d1 = 0, d2 = 0;
  for (const auto& p : s3.sample_points(50, 8)) {
    d1 = std::max(d1, (metric_at(flipped, p).g - metric_at(hopf, p).g).cwiseAbs().maxCoeff());
    d2 = std::max(d2, (metric_at(back, p).g - metric_at(s3, p).g).cwiseAbs().maxCoeff());
  }
  o.require(d1 <= 1e-10, "flip equals the Hopf entry");
  o.require(d2 <= 1e-10, "double flip");
  o.detail << "max |flip - hopf_lorentz_s3| " << d1 << ", max |double flip - input| " << d2;
}

void tensor_identities(Outcome& o) {
  double worst = 0;
  std::string where;
  for (const auto& e : catalog()) {
    const ManifoldSpec m = e.build();
    for (const auto& p : m.sample_points(50, 99)) {
      const double r = tensor_identity_residuals(geometry_at(m, p)).max();
      if (r > worst) {
        worst = r;
        where = e.name;
      }
    }
  }
  o.require(worst <= 1e-8, "relative residual");
  o.detail << catalog().size() << " entries x 50 points, worst relative residual " << worst
           << (where.empty() ? "" : " (" + where + ")");
}

// Chart vector of S^3 (Hopf coordinates) whose image in R^4 is i times the
// image of w, with i(a,b,c,d) = (-b,a,-d,c).
Vec complex_rotate(const Point& p, const Vec& w) {
  const double eta = p[0], x1 = p[1], x2 = p[2];
  Eigen::Matrix<double, 4, 3> j;
  j << -std::sin(eta) * std::cos(x1), -std::cos(eta) * std::sin(x1), 0,
      -std::sin(eta) * std::sin(x1), std::cos(eta) * std::cos(x1), 0,
      std::cos(eta) * std::cos(x2), 0, -std::sin(eta) * std::sin(x2),
      std::cos(eta) * std::sin(x2), 0, std::sin(eta) * std::cos(x2);
  const Eigen::Vector4d e = j * w;
  const Eigen::Vector4d ie(-e(1), e(0), -e(3), e(2));
  return j.colPivHouseholderQr().solve(ie);
}

void oneill(Outcome& o) {
  const ManifoldSpec hopf = build_example("hopf_lorentz_s3");
  const ManifoldSpec round = build_example("round_s3");
  const VectorField& h = hopf.field("H");
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  double worst7 = 0, leftover = 0, base = 0;
  int orthogonal_found = 0, frames = 0;
  for (const auto& p : hopf.sample_points(20, 77)) {
    const MetricAt gr = metric_at(round, p);
    const PointGeometry geo = geometry_at(hopf, p);
    const Vec x = h.at(hopf.bindings(p));
    // Horizontal unit u: a rotation of d_eta inside the horizontal plane.
    const Vec e = Vec::Unit(3, 0) / std::sqrt(gr.inner(Vec::Unit(3, 0), Vec::Unit(3, 0)));
    const double a = angle(rng);
    const Vec u = std::cos(a) * e + std::sin(a) * complex_rotate(p, e);
    const Vec iu = complex_rotate(p, u);
    const double k = sectional_curvature(geo, u, iu);
    worst7 = std::max(worst7, std::abs(k - 7.0));
    // Holomorphic-orthogonal horizontal v: orthogonal to X, u and iu.
    Mat c(3, 3);
    c << x, u, iu;
    const Mat gram = c.transpose() * gr.g * c;
    const Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    const double smallest = es.eigenvalues()(0) / es.eigenvalues()(2);
    leftover = std::max(leftover, smallest);
    if (smallest <= 1e-10) ++orthogonal_found;  // X, u, iu dependent: a nonzero v orthogonal to all three exists
    // O'Neill: K_g(P) - 3 g(iu, v)^2 on the holomorphic plane (v = iu) is the base curvature.
    const double g_iu_v = gr.inner(iu, iu);
    base = std::max(base, std::abs(k - 3.0 * g_iu_v * g_iu_v - 4.0));
    ++frames;
  }
  o.require(worst7 <= 1e-6, "K(span{u, iu}) = 7");
  o.require(orthogonal_found > 0, "a horizontal plane orthogonal to u and iu exists");
  o.detail << frames << " horizontal frames: max |K(u, iu) - 7| " << worst7
           << "; horizontal directions orthogonal to u and iu found: " << orthogonal_found
           << " (X, u, iu already span the tangent space of S^3)"
           << "; info: K - 3 g(iu,iu)^2 = 4 within " << base;
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"curvature sign convention", convention_gate},
      {"Hessian identity", hessian_identity},
      {"timelike witness on the torus", timelike_witness},
      {"lightlike witness on the circle lift", lightlike_witness},
      {"sign change along the torus path", sign_change},
      {"conformal counterexample", conformal_counterexample},
      {"Schwarzschild exterior", schwarzschild},
      {"Lorentz flip of the round sphere", lorentz_flip},
      {"tensor identities", tensor_identities},
      {"Hopf horizontal curvature", oneill},
  };

  CLI::App app("acceptance checks");
  int only = 0;
  app.add_option("--criterion", only, "run one criterion")->check(CLI::Range(1, static_cast<int>(criteria.size())));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      criteria[i].check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "error: " << e.what();
    }
    failures += !o.pass;
    std::printf("criterion %2zu  %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].title,
                o.detail.str().c_str());
  }
  return failures ? 1 : 0;
}
