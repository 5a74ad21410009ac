#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "detail.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::OutOfScope: return "OUT_OF_SCOPE";
  }
  return "?";
}

namespace {

// Smallest over largest eigenvalue of the Riemannian Gram matrix of the
// normalized vectors; zero when three vectors span only a plane.
double span_residual(const MetricAt& metric, const std::vector<Vec>& vs) {
  const auto n = static_cast<int>(vs.size());
  Mat gram(n, n);
  std::vector<Vec> unit;
  for (const auto& v : vs) unit.push_back(v / std::sqrt(metric.norm2(v)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram(i, j) = unit[i].dot(metric.abs_metric * unit[j]);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues()(0)) / es.eigenvalues()(n - 1);
}

FieldClass default_class(const ManifoldSpec& m, const VectorField& x) {
  return classify_field(m, x, m.sample_points(32));
}

}  // namespace

WitnessReport witness_construction(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                   const FieldClass& field_class) {
  WitnessReport out;
  out.extremum.point = m.wrap(p);
  out.field_class = field_class;
  out.killing = field_class.tag == FieldClass::Tag::Killing;

  const PointGeometry geo = geometry_at(m, out.extremum.point);
  const Vec xv = x.at(m.bindings(out.extremum.point));
  const Causal c = causal_character(geo.metric, xv);
  out.extremum.x_character = c;
  out.extremum.f = 0.5 * geo.metric.inner(xv, xv);
  const bool even = m.dim() % 2 == 0;

  if (c == Causal::Timelike && !even) {
    out.note = "timelike X in odd dimension " + std::to_string(m.dim()) + ": outside the timelike case";
    return out;
  }
  if (c == Causal::Lightlike && even) {
    out.note = "lightlike X in even dimension " + std::to_string(m.dim()) + ": outside the lightlike case";
    return out;
  }
  if (c != Causal::Timelike && c != Causal::Lightlike) {
    out.note = std::string("X is ") + to_string(c) + " at the point";
    return out;
  }

  const RestrictionMode mode = c == Causal::Timelike ? RestrictionMode::Orthogonal : RestrictionMode::Quotient;
  const RestrictedOperator ro = restricted_operator(m, geo, x, mode);
  out.invariance_residual = ro.invariance_residual;
  out.operator_dim = static_cast<int>(ro.op.rows());

  Vec v;
  if (ro.op.rows() == 0) {
    throw KernelNotFound("restricted operator is zero-dimensional; no plane through X to build");
  }
  const KernelResult k = kernel_direction(ro.op, ro.metric);
  if (!k.found) throw KernelNotFound("restricted operator has no kernel direction");
  v = ro.basis * k.direction;
  out.kernel_residual = k.residual;

  out.plane = make_plane(geo.metric, v, xv);
  out.span_residual = span_residual(geo.metric, {xv, out.plane->u, out.plane->v});
  if (mode == RestrictionMode::Orthogonal) {
    out.witness_case = WitnessCase::TimelikeEven;
    out.kind = CurvatureKind::Sectional;
    out.value = sectional_curvature(geo, v, xv);
    out.inequality = ">= 0";
    out.verdict = out.value >= -out.tolerance ? Verdict::Pass : Verdict::Fail;
  } else {
    out.witness_case = WitnessCase::LightlikeOdd;
    out.kind = CurvatureKind::NullSectional;
    out.value = null_sectional_curvature(geo, xv, v);
    out.inequality = "<= 0";
    out.verdict = out.value <= out.tolerance ? Verdict::Pass : Verdict::Fail;
  }
  return out;
}

WitnessReport minimum_witness(const ManifoldSpec& m, const VectorField& x, const ExtremumRecord& at,
                               const std::optional<FieldClass>& field_class) {
  const FieldClass fc = field_class ? *field_class : default_class(m, x);
  if (at.kind != ExtremumKind::LocalMin && !at.plateau) {
    WitnessReport out;
    out.extremum = at;
    out.field_class = fc;
    out.killing = fc.tag == FieldClass::Tag::Killing;
    out.note = std::string("point is a ") + to_string(at.kind) + ", not a local minimum of g(X,X)";
    return out;
  }
  if (!fc.is_homothetic()) {
    WitnessReport out;
    out.extremum = at;
    out.field_class = fc;
    out.note = std::string("field is ") + to_string(fc.tag) + ", not homothetic";
    return out;
  }
  WitnessReport out = witness_construction(m, x, at.point, fc);
  const Causal c = out.extremum.x_character;
  out.extremum = at;
  out.extremum.x_character = c;
  if (out.witness_case == WitnessCase::TimelikeEven && !out.killing) {
    out.note = "homothetic field with lambda = " + std::to_string(fc.lambda) +
               " at a timelike minimum: expected Killing";
  }
  return out;
}

std::vector<PlaneSample> sample_planes_containing(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                                  int count) {
  if (count < 1) throw Error("plane count must be positive");
  const PointGeometry geo = geometry_at(m, p);
  const Vec xv = x.at(m.bindings(p));
  const Causal c = causal_character(geo.metric, xv);
  if (c != Causal::Timelike && c != Causal::Lightlike) {
    throw CausalCharacterError(std::string("planes through X need causal X, got ") + to_string(c));
  }
  const int n = m.dim();
  Mat basis;
  if (c == Causal::Timelike) {
    basis = complement_frame(geo.metric, xv, RestrictionMode::Orthogonal);
  } else if (n == 2) {
    // The only plane through a null X in dimension 2 is the whole (timelike) tangent plane.
    const Vec gx = geo.metric.g * xv;
    Eigen::Index istar = 0;
    gx.cwiseAbs().maxCoeff(&istar);
    basis = Vec::Unit(n, static_cast<int>(istar));
  } else {
    basis = complement_frame(geo.metric, xv, RestrictionMode::Quotient);
  }
  const auto d = static_cast<int>(basis.cols());

  std::vector<Vec> dirs;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    Vec coeff = Vec::Zero(d);
    if (d == 1) {
      coeff(0) = 1.0;
    } else if (d == 2) {
      const double th = std::numbers::pi * k / count;
      coeff << std::cos(th), std::sin(th);
    } else if (k < d) {
      coeff(k) = 1.0;
    } else {
      for (int a = 0; a < d; ++a) coeff(a) = normal(rng);
      coeff.normalize();
    }
    dirs.push_back(basis * coeff);
  }

  std::vector<PlaneSample> out;
  for (const Vec& w : dirs) {
    PlaneSample s;
    s.w = w;
    s.qk = geo.riemann_contract(w, xv, w, xv);
    const TangentPlane plane = make_plane(geo.metric, w, xv);
    if (plane_type(geo.metric, plane) != PlaneType::Degenerate) {
      s.k = s.qk / plane.discriminant;
      s.value = *s.k;
    } else {
      s.value = -s.qk / geo.metric.inner(w, w);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

PathSample path_sample(const ManifoldSpec& m, const VectorField& x, const Point& p, int planes) {
  PathSample s;
  s.point = p;
  const Bindings b = m.bindings(p);
  const Vec xv = x.at(b);
  const MetricAt metric = metric_at(m, p);
  s.f = 0.5 * metric.inner(xv, xv);
  s.x_character = causal_character(metric, xv);
  if (s.x_character == Causal::Zero) throw CausalCharacterError("X vanishes on the path");
  s.planes = sample_planes_containing(m, x, p, planes);
  s.tracked = -std::numeric_limits<double>::infinity();
  for (const auto& pl : s.planes) s.tracked = std::max(s.tracked, pl.value);
  return s;
}

SignScanReport finish_sign_scan(std::vector<PathSample> samples, double tol) {
  SignScanReport out;
  out.tolerance = tol;
  out.samples = std::move(samples);
  if (out.samples.empty()) return out;
  out.min_value = out.max_value = out.samples[0].tracked;
  out.all_zero = true;
  auto sgn = [tol](double v) { return std::abs(v) < tol ? 0 : (v > 0 ? 1 : -1); };
  int first_sign = 0;
  for (const auto& s : out.samples) {
    out.min_value = std::min(out.min_value, s.tracked);
    out.max_value = std::max(out.max_value, s.tracked);
    const int sg = sgn(s.tracked);
    out.all_zero = out.all_zero && sg == 0;
    if (sg != 0) {
      if (first_sign != 0 && sg != first_sign) out.sign_change = true;
      if (first_sign == 0) first_sign = sg;
    }
  }
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const double t = out.samples[i].tracked;
    ZeroLocation z;
    z.index = i;
    z.detected = out.samples[i].point;
    if (sgn(t) == 0) {
      z.exact = true;
      z.interpolated = z.detected;
      out.zero = z;
      break;
    }
    if (i == 0) continue;
    const double t0 = out.samples[i - 1].tracked;
    if (sgn(t0) != sgn(t)) {
      const double a = t0 / (t0 - t);
      const Point& p0 = out.samples[i - 1].point;
      z.interpolated.resize(p0.size());
      for (std::size_t k = 0; k < p0.size(); ++k) z.interpolated[k] = p0[k] + a * (z.detected[k] - p0[k]);
      out.zero = z;
      break;
    }
  }
  return out;
}

}  // namespace detail

SignScanReport plane_sign_scan(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& path,
                               int planes_per_point, double tol) {
  auto samples = parallel_map<PathSample>(
      path.size(), [&](std::size_t i) { return detail::path_sample(m, x, path[i], planes_per_point); });
  return detail::finish_sign_scan(std::move(samples), tol);
}

std::vector<Point> linear_path(const Point& a, const Point& b, int count) {
  if (count < 2) throw Error("a path needs at least 2 points");
  if (a.size() != b.size()) throw Error("path endpoints have different dimensions");
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    Point p(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) p[k] = a[k] + t * (b[k] - a[k]);
    out.push_back(std::move(p));
  }
  return out;
}

ConformalReport conformal_bound_check(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                      double sigma_tol) {
  ConformalReport out;
  out.point = m.wrap(p);
  out.sigma_tolerance = sigma_tol;
  out.field_class = default_class(m, x);
  if (out.field_class.tag == FieldClass::Tag::None) {
    throw Error("field '" + x.name() + "' is not conformal (residual " +
                std::to_string(out.field_class.conformal_residual) + ")");
  }
  const ConformalFactorAt cf = conformal_factor_at(m, x, out.point);
  out.sigma = cf.sigma;
  out.x_sigma = cf.along_x;
  if (std::abs(out.sigma) > sigma_tol) {
    throw NotCritical("sigma = " + std::to_string(out.sigma) +
                      " at the point; it vanishes at critical points of g(X,X)");
  }
  const PointGeometry geo = geometry_at(m, out.point);
  const Vec xv = x.at(m.bindings(out.point));
  out.g_xx = geo.metric.inner(xv, xv);
  const Causal c = causal_character(geo.metric, xv);
  if (c != Causal::Timelike) {
    throw CausalCharacterError(std::string("conformal bound needs timelike X, got ") + to_string(c));
  }
  const RestrictedOperator ro = restricted_operator(m, geo, x, RestrictionMode::Orthogonal);
  const KernelResult k = kernel_direction(ro.op, ro.metric);
  if (!k.found) throw KernelNotFound("restricted operator has no kernel direction");
  out.kernel = ro.basis * k.direction;
  out.kernel_residual = k.residual;
  out.k = sectional_curvature(geo, out.kernel, xv);
  out.bound = 0.5 * out.x_sigma / (-out.g_xx);
  out.x_sigma_nonnegative = out.x_sigma >= 0.0;
  out.bound_verdict = out.k >= out.bound - out.tolerance ? Verdict::Pass : Verdict::Fail;
  out.nonnegative_verdict = out.k >= -out.tolerance ? Verdict::Pass : Verdict::Fail;
  return out;
}

}  // namespace lorentz
