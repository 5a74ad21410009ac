#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "lorentz/errors.hpp"
#include "lorentz/obstruction.hpp"

namespace lorentz {

namespace {

// Copy of the definition with the symmetrized metric written out in full.
ManifoldDefinition expanded(const ManifoldSpec& m) {
  ManifoldDefinition def = m.definition();
  const auto n = static_cast<std::size_t>(m.dim());
  def.metric.assign(n, std::vector<std::optional<Expr>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) def.metric[i][j] = m.metric(static_cast<int>(i), static_cast<int>(j));
  }
  return def;
}

std::string unique_name(const std::set<std::string>& taken, const std::string& base) {
  if (!taken.count(base)) return base;
  for (int i = 2;; ++i) {
    const std::string s = base + std::to_string(i);
    if (!taken.count(s)) return s;
  }
}

}  // namespace

ManifoldSpec flip_metric(const ManifoldSpec& m, const VectorField& x, const std::string& name,
                         Signature signature) {
  const int n = m.dim();
  if (x.dim() != n) throw Error("field dimension does not match the manifold");
  std::vector<Expr> omega(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Expr w(0.0);
    for (int j = 0; j < n; ++j) w = w + m.metric(i, j) * x.component(j);
    omega[static_cast<std::size_t>(i)] = w;
  }
  const Expr norm = m.inner_expr(x.components(), x.components());
  ManifoldDefinition def = expanded(m);
  def.name = name;
  def.signature = signature;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      def.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          m.metric(i, j) - 2.0 * omega[static_cast<std::size_t>(i)] * omega[static_cast<std::size_t>(j)] / norm;
    }
  }
  return ManifoldSpec(std::move(def));
}

ManifoldSpec lorentzianize(const ManifoldSpec& riemannian, const VectorField& x, LorentzianizeReport* report,
                           int samples) {
  const ManifoldSpec& m = riemannian;
  if (m.signature() != Signature::Riemannian) throw SignatureError("input metric must be Riemannian");
  const auto points = m.sample_points(std::max(samples, 8));
  for (const auto& p : points) {
    const MetricAt metric = metric_at(m, p);
    if (metric.eigenvalues(0) <= 0.0) throw SignatureError("input metric is not positive definite at a sample");
    const Vec xv = x.at(m.bindings(p));
    if (causal_character(metric, xv) == Causal::Zero) throw DomainError("X vanishes at a sample point");
  }
  const FieldClass base = classify_field(m, x, points);
  if (base.tag != FieldClass::Tag::Killing) {
    throw Error("X is not Killing for the input metric (residual " + std::to_string(base.killing_residual) + ")");
  }

  ManifoldSpec out = flip_metric(m, x, m.name() + "_lorentzian", Signature::Lorentzian);

  LorentzianizeReport r;
  const int n = m.dim();
  for (const auto& p : points) {
    const MetricAt gr = metric_at(m, p);
    const MetricAt gl = metric_at(out, p);
    const Vec xv = x.at(m.bindings(p));
    const double nr = gr.inner(xv, xv);
    const double scale = std::max(1.0, gr.g.cwiseAbs().maxCoeff());
    r.norm_residual = std::max(r.norm_residual, std::abs(gl.inner(xv, xv) + nr) / (scale * std::max(1.0, nr)));
    // g_R-orthogonal projection onto X^perp.
    const Mat proj = Mat::Identity(n, n) - xv * (gr.g * xv).transpose() / nr;
    const Mat diff = proj.transpose() * (gl.g - gr.g) * proj;
    r.orthogonal_residual = std::max(r.orthogonal_residual, diff.cwiseAbs().maxCoeff() / scale);
  }
  r.killing = classify_field(out, x, points);
  if (r.norm_residual > 1e-9 || r.orthogonal_residual > 1e-9 || r.killing.tag != FieldClass::Tag::Killing) {
    throw Error("flipped metric failed its checks (norm " + std::to_string(r.norm_residual) + ", orthogonal " +
                std::to_string(r.orthogonal_residual) + ", killing " + std::to_string(r.killing.killing_residual) +
                ")");
  }
  if (report) *report = r;
  return out;
}

ManifoldSpec circle_lift(const ManifoldSpec& m, const VectorField& x, double c, LiftMode mode, LiftReport* report,
                         int resolution) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error("lift constant c must be positive");
  const FieldClass base = classify_field(m, x, m.sample_points(32));
  if (base.tag != FieldClass::Tag::Killing) {
    throw Error("circle lift needs a Killing field (residual " + std::to_string(base.killing_residual) + ")");
  }
  ScanOptions opts;
  opts.resolution = resolution;
  const ExtremaScan scan = scan_extrema(m, x, opts);
  LiftReport r;
  r.c = c;
  r.max_gxx = 2.0 * scan.f_max;
  r.min_gxx = 2.0 * scan.f_min;
  const double c2 = c * c;
  const double tol = 1e-8 * std::max(1.0, std::abs(r.max_gxx));
  if (mode == LiftMode::CausalLocus) {
    if (c2 < -r.max_gxx - tol) {
      throw Error("c^2 = " + std::to_string(c2) + " is below -max g(X,X) = " + std::to_string(-r.max_gxx) +
                  ": the lifted field is not causal everywhere");
    }
    if (c2 > -r.max_gxx + tol) {
      throw Error("c^2 = " + std::to_string(c2) + " exceeds -max g(X,X) = " + std::to_string(-r.max_gxx) +
                  ": the lifted field is timelike everywhere");
    }
  }

  ManifoldDefinition def = expanded(m);
  std::set<std::string> taken = m.declared_names();
  for (const auto& f : m.fields()) taken.insert(f.name());
  const std::string theta = unique_name(taken, "theta");
  taken.insert(theta);
  const std::string cname = unique_name(taken, "c");
  taken.insert(cname);
  r.field_name = unique_name(taken, x.name() + "bar");

  def.name = m.name() + "_lift";
  Axis axis;
  axis.name = theta;
  axis.lo = 0.0;
  axis.hi = 2.0 * std::numbers::pi;
  axis.periodic = true;
  def.axes.push_back(axis);
  def.params.emplace_back(cname, c);
  for (auto& row : def.metric) row.emplace_back(Expr(0.0));
  def.metric.emplace_back(def.axes.size(), std::optional<Expr>(Expr(0.0)));
  def.metric.back().back() = Expr(1.0);
  for (auto& [name, comps] : def.fields) comps.emplace_back(0.0);
  std::vector<Expr> bar = x.components();
  bar.push_back(Expr::symbol(cname));
  def.fields.emplace_back(r.field_name, bar);

  ManifoldSpec out(std::move(def));
  const VectorField& xbar = out.field(r.field_name);
  r.killing = classify_field(out, xbar, out.sample_points(32));
  if (r.killing.tag != FieldClass::Tag::Killing) throw Error("lifted field failed the Killing check");

  for (const auto& rec : scan.records) {
    if (std::abs(2.0 * rec.f + c2) <= tol) {
      Point p = rec.point;
      p.push_back(0.0);
      r.lightlike_locus.push_back(std::move(p));
    }
  }
  if (report) *report = r;
  return out;
}

}  // namespace lorentz
