#include "lorentz/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lorentz {

// ---------------------------------------------------------------- VectorField

VectorField::VectorField(std::string name, std::vector<Expr> components,
                         const std::vector<std::string>& coordinates)
    : name_(std::move(name)), components_(std::move(components)) {
  const int n = dim();
  if (static_cast<int>(coordinates.size()) != n) {
    throw SpecError("field '" + name_ + "' has " + std::to_string(n) + " components, chart has " +
                    std::to_string(coordinates.size()));
  }
  jacobian_.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      jacobian_.push_back(differentiate(components_[static_cast<std::size_t>(i)],
                                        coordinates[static_cast<std::size_t>(j)]));
    }
  }
}

Vec VectorField::at(const Bindings& b) const {
  Vec v(dim());
  for (int i = 0; i < dim(); ++i) v(i) = component(i).evaluate(b);
  return v;
}

Mat VectorField::jacobian_at(const Bindings& b) const {
  Mat J(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) J(i, j) = derivative(i, j).evaluate(b);
  }
  return J;
}

// ---------------------------------------------------------------- ManifoldSpec

ManifoldSpec::ManifoldSpec(ManifoldDefinition def, const LoadOptions& options)
    : definition_(def),
      name_(def.name),
      signature_(def.signature),
      axes_(def.axes),
      params_(def.params) {
  const int n = static_cast<int>(axes_.size());
  if (n < 2) throw SpecError("manifold dimension must be at least 2");
  for (const auto& a : axes_) {
    if (!(a.lo < a.hi)) throw SpecError("empty range for coordinate '" + a.name + "'");
    if (a.periodic && !(std::isfinite(a.lo) && std::isfinite(a.hi))) {
      throw SpecError("periodic coordinate '" + a.name + "' needs a finite period");
    }
    if (!std::isfinite(a.sample_lo()) || !std::isfinite(a.sample_hi()) ||
        !(a.sample_lo() < a.sample_hi())) {
      throw SpecError("coordinate '" + a.name + "' needs a finite sampling window");
    }
    if (a.sample_lo() < a.lo || a.sample_hi() > a.hi) {
      throw SpecError("sampling window of '" + a.name + "' leaves the chart");
    }
    coordinates_.push_back(a.name);
  }
  {
    auto sorted = coordinates_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw SpecError("duplicate coordinate name");
    }
  }

  if (static_cast<int>(def.metric.size()) != n) throw SpecError("metric must be dim x dim");
  metric_.assign(static_cast<std::size_t>(n * n), Expr(0.0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(def.metric[static_cast<std::size_t>(i)].size()) != n) {
      throw SpecError("metric must be dim x dim");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& a = def.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const auto& b = def.metric[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      Expr e(0.0);
      if (a && b && i != j && a->str() != b->str()) {
        e = 0.5 * (*a + *b);
      } else if (a) {
        e = *a;
      } else if (b) {
        e = *b;
      }
      metric_[idx2(i, j)] = e;
      metric_[idx2(j, i)] = e;
    }
  }

  const auto declared = declared_names();
  auto check_names = [&](const Expr& e, const std::string& where) {
    for (const auto& name : e.free_names()) {
      if (!declared.count(name)) throw SpecError(where + ": undeclared name '" + name + "'");
    }
  };
  for (const auto& e : metric_) check_names(e, "metric");

  dmetric_.reserve(static_cast<std::size_t>(n) * n2());
  for (int k = 0; k < n; ++k) {
    for (int ij = 0; ij < n * n; ++ij) {
      dmetric_.push_back(differentiate(metric_[static_cast<std::size_t>(ij)], coordinates_[static_cast<std::size_t>(k)]));
    }
  }
  ddmetric_.assign(static_cast<std::size_t>(n * n) * n2(), Expr(0.0));
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          Expr e = differentiate(metric_derivative(k, i, j), coordinates_[static_cast<std::size_t>(l)]);
          for (auto [a, b] : {std::pair{k, l}, std::pair{l, k}}) {
            for (auto [c, d] : {std::pair{i, j}, std::pair{j, i}}) {
              ddmetric_[(static_cast<std::size_t>(a) * n + b) * n2() + idx2(c, d)] = e;
            }
          }
        }
      }
    }
  }

  for (auto& [fname, comps] : def.fields) {
    for (const auto& c : comps) check_names(c, "field " + fname);
    fields_.emplace_back(fname, comps, coordinates_);
  }
  for (const auto& s : def.scalars) {
    check_names(s.value, "scalar " + s.name);
    scalars_.push_back(s);
  }

  if (options.check_signature && options.signature_samples > 0) {
    validate_signature(sample_points(options.signature_samples, options.seed));
  }
}

double ManifoldSpec::param(const std::string& name) const {
  for (const auto& [k, v] : params_) {
    if (k == name) return v;
  }
  throw Error("unknown parameter '" + name + "'");
}

std::set<std::string> ManifoldSpec::declared_names() const {
  std::set<std::string> out(coordinates_.begin(), coordinates_.end());
  for (const auto& p : params_) out.insert(p.first);
  return out;
}

const VectorField& ManifoldSpec::field(const std::string& name) const {
  for (const auto& f : fields_) {
    if (f.name() == name) return f;
  }
  throw Error("manifold '" + name_ + "' has no field '" + name + "'");
}

bool ManifoldSpec::has_field(const std::string& name) const {
  return std::any_of(fields_.begin(), fields_.end(), [&](const auto& f) { return f.name() == name; });
}

const ScalarField& ManifoldSpec::scalar(const std::string& name) const {
  for (const auto& s : scalars_) {
    if (s.name == name) return s;
  }
  throw Error("manifold '" + name_ + "' has no scalar '" + name + "'");
}

Point ManifoldSpec::wrap(const Point& p) const {
  if (static_cast<int>(p.size()) != dim()) {
    throw DomainError("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                      std::to_string(dim()));
  }
  Point out = p;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& a = axes_[i];
    if (!a.periodic) continue;
    double t = std::fmod(out[i] - a.lo, a.period());
    if (t < 0.0) t += a.period();
    if (t >= a.period()) t = 0.0;
    out[i] = a.lo + t;
  }
  return out;
}

void ManifoldSpec::require_interior(const Point& p) const {
  if (static_cast<int>(p.size()) != dim()) {
    throw DomainError("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                      std::to_string(dim()));
  }
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& a = axes_[i];
    if (!std::isfinite(p[i])) throw DomainError("non-finite coordinate '" + a.name + "'");
    if (a.periodic) continue;
    if (p[i] < a.lo + kBoundaryCollar || p[i] > a.hi - kBoundaryCollar) {
      std::ostringstream os;
      os << "coordinate " << a.name << " = " << p[i] << " is outside or too close to the chart boundary ["
         << a.lo << ", " << a.hi << "]";
      throw DomainError(os.str());
    }
  }
}

Bindings ManifoldSpec::bindings(const Point& p) const {
  const Point w = wrap(p);
  require_interior(w);
  Bindings b;
  for (std::size_t i = 0; i < coordinates_.size(); ++i) b.set(coordinates_[i], w[i]);
  for (const auto& [k, v] : params_) b.set(k, v);
  return b;
}

std::vector<Point> ManifoldSpec::sample_points(int count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Point p(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      const auto& a = axes_[i];
      double lo = a.sample_lo(), hi = a.sample_hi();
      if (!a.periodic) {
        lo = std::max(lo, a.lo + 10 * kBoundaryCollar);
        hi = std::min(hi, a.hi - 10 * kBoundaryCollar);
      }
      std::uniform_real_distribution<double> dist(lo, hi);
      p[i] = dist(rng);
    }
    out.push_back(wrap(p));
  }
  return out;
}

void ManifoldSpec::validate_signature(const std::vector<Point>& points) const {
  if (signature_ == Signature::Indefinite) {
    for (const auto& p : points) metric_at(*this, p);
    return;
  }
  for (const auto& p : points) {
    MetricAt m;
    try {
      m = metric_at(*this, p);
    } catch (const DegenerateMetric& e) {
      throw SignatureError(e.what());
    }
    const int neg = m.negative_count();
    const int want = signature_ == Signature::Lorentzian ? 1 : 0;
    if (neg != want) {
      std::ostringstream os;
      os << "signature violation at (";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << "): eigenvalues";
      for (int k = 0; k < m.eigenvalues.size(); ++k) os << ' ' << m.eigenvalues(k);
      os << "; expected " << (want ? "one negative eigenvalue" : "all positive");
      throw SignatureError(os.str());
    }
  }
}

Expr ManifoldSpec::inner_expr(const std::vector<Expr>& x, const std::vector<Expr>& y) const {
  Expr sum(0.0);
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      sum = sum + metric(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    }
  }
  return sum;
}

// ---------------------------------------------------------------- pointwise metric

int MetricAt::negative_count() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

MetricAt metric_at(const ManifoldSpec& m, const Point& p) {
  const Bindings b = m.bindings(p);
  const int n = m.dim();
  MetricAt out;
  out.point = m.wrap(p);
  out.g.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = m.metric(i, j).evaluate(b);
      out.g(i, j) = v;
      out.g(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(out.g);
  out.eigenvalues = eig.eigenvalues();
  const double scale = out.eigenvalues.cwiseAbs().maxCoeff();
  const double smallest = out.eigenvalues.cwiseAbs().minCoeff();
  if (!(scale > 0.0) || smallest <= 1e-12 * scale) {
    std::ostringstream os;
    os << "degenerate metric at (";
    for (std::size_t i = 0; i < out.point.size(); ++i) os << (i ? ", " : "") << out.point[i];
    os << ")";
    throw DegenerateMetric(os.str());
  }
  const Mat& V = eig.eigenvectors();
  out.abs_metric = V * out.eigenvalues.cwiseAbs().asDiagonal() * V.transpose();
  out.inverse = V * out.eigenvalues.cwiseInverse().asDiagonal() * V.transpose();
  for (int k = 0; k < n; ++k) out.signs.push_back(out.eigenvalues(k) < 0.0 ? -1 : 1);
  return out;
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::Timelike: return "timelike";
    case Causal::Lightlike: return "lightlike";
    case Causal::Spacelike: return "spacelike";
    case Causal::Zero: return "zero";
  }
  return "?";
}

const char* to_string(PlaneType t) {
  switch (t) {
    case PlaneType::Timelike: return "timelike";
    case PlaneType::Spacelike: return "spacelike";
    case PlaneType::Degenerate: return "degenerate";
  }
  return "?";
}

Causal causal_character(const MetricAt& metric, const Vec& v, double eps) {
  const double n2 = metric.norm2(v);
  if (v.norm() == 0.0 || n2 == 0.0) return Causal::Zero;
  const double q = metric.inner(v, v);
  if (std::abs(q) <= eps * n2) return Causal::Lightlike;
  return q < 0.0 ? Causal::Timelike : Causal::Spacelike;
}

Causal causal_character(const ManifoldSpec& m, const TangentVector& v, double eps) {
  return causal_character(metric_at(m, v.base), v.components, eps);
}

TangentPlane make_plane(const MetricAt& metric, const Vec& u, const Vec& v) {
  const double uu = metric.norm2(u), vv = metric.norm2(v);
  const double uv = u.dot(metric.abs_metric * v);
  if (!(uu > 0.0) || !(vv > 0.0) || uu * vv - uv * uv <= 1e-12 * uu * vv) {
    throw DependentVectors("spanning vectors are linearly dependent");
  }
  TangentPlane plane;
  plane.base = metric.point;
  plane.u = u;
  plane.v = v;
  const double guu = metric.inner(u, u), gvv = metric.inner(v, v), guv = metric.inner(u, v);
  plane.discriminant = guu * gvv - guv * guv;
  return plane;
}

TangentPlane make_plane(const ManifoldSpec& m, const Point& base, const Vec& u, const Vec& v) {
  return make_plane(metric_at(m, base), u, v);
}

PlaneType plane_type(const MetricAt& metric, const TangentPlane& plane, double eps) {
  const double scale = metric.norm2(plane.u) * metric.norm2(plane.v);
  if (plane.discriminant < -eps * scale) return PlaneType::Timelike;
  if (plane.discriminant > eps * scale) return PlaneType::Spacelike;
  return PlaneType::Degenerate;
}

PlaneType plane_type(const ManifoldSpec& m, const TangentPlane& plane, double eps) {
  const MetricAt metric = metric_at(m, plane.base);
  // Recompute in case the caller built the plane by hand.
  const TangentPlane fresh = make_plane(metric, plane.u, plane.v);
  return plane_type(metric, fresh, eps);
}

}  // namespace lorentz
