#include "lorentz/symmetry.hpp"

#include <cmath>

#include "detail.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

Expr half_norm_expr(const ManifoldSpec& m, const VectorField& x) {
  return 0.5 * m.inner_expr(x.components(), x.components());
}

Mat lie_derivative_metric_at(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  const Bindings b = m.bindings(p);
  const int n = m.dim();
  const Vec xv = x.at(b);
  const Mat J = x.jacobian_at(b);  // J(k, i) = d_i X^k
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = m.metric(i, j).evaluate(b);
  }
  Mat L = g * J + J.transpose() * g;  // g_ik d_j X^k + g_kj d_i X^k
  for (int k = 0; k < n; ++k) {
    if (xv(k) == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double d = xv(k) * m.metric_derivative(k, i, j).evaluate(b);
        L(i, j) += d;
        if (i != j) L(j, i) += d;
      }
    }
  }
  return 0.5 * (L + L.transpose());
}

std::vector<Expr> lie_derivative_metric_expr(const ManifoldSpec& m, const VectorField& x) {
  const int n = m.dim();
  std::vector<Expr> out(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Expr e(0.0);
      for (int k = 0; k < n; ++k) {
        e = e + x.component(k) * m.metric_derivative(k, i, j) + m.metric(k, j) * x.derivative(k, i) +
            m.metric(i, k) * x.derivative(k, j);
      }
      out[static_cast<std::size_t>(i * n + j)] = e;
      out[static_cast<std::size_t>(j * n + i)] = e;
    }
  }
  return out;
}

const char* to_string(FieldClass::Tag tag) {
  switch (tag) {
    case FieldClass::Tag::Killing: return "killing";
    case FieldClass::Tag::Homothetic: return "homothetic";
    case FieldClass::Tag::Conformal: return "conformal";
    case FieldClass::Tag::None: return "none";
  }
  return "?";
}

namespace detail {

LieSample lie_sample(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  LieSample s;
  const MetricAt metric = metric_at(m, p);
  s.g = metric.g;
  s.lie = lie_derivative_metric_at(m, x, p);
  s.scale = std::max(s.g.cwiseAbs().maxCoeff(), 1e-300);
  s.sigma = (metric.inverse * s.lie).trace() / m.dim();
  return s;
}

FieldClass reduce_classification(const std::vector<LieSample>& samples, double tol) {
  FieldClass out;
  out.tolerance = tol;
  out.sample_count = samples.size();
  double num = 0.0, den = 0.0;
  for (const auto& s : samples) {
    const double w = 1.0 / (s.scale * s.scale);
    num += w * (s.lie.cwiseProduct(s.g)).sum();
    den += w * s.g.squaredNorm();
    out.sigma.push_back(s.sigma);
    out.killing_residual = std::max(out.killing_residual, s.lie.cwiseAbs().maxCoeff() / s.scale);
    out.conformal_residual =
        std::max(out.conformal_residual, (s.lie - s.sigma * s.g).cwiseAbs().maxCoeff() / s.scale);
  }
  out.lambda = den > 0.0 ? num / den : 0.0;
  for (const auto& s : samples) {
    out.homothetic_residual =
        std::max(out.homothetic_residual, (s.lie - out.lambda * s.g).cwiseAbs().maxCoeff() / s.scale);
  }
  if (out.killing_residual <= tol) {
    out.tag = FieldClass::Tag::Killing;
    out.lambda = 0.0;
    out.residual = out.killing_residual;
  } else if (out.homothetic_residual <= tol) {
    out.tag = FieldClass::Tag::Homothetic;
    out.residual = out.homothetic_residual;
  } else if (out.conformal_residual <= tol) {
    out.tag = FieldClass::Tag::Conformal;
    out.residual = out.conformal_residual;
  } else {
    out.tag = FieldClass::Tag::None;
    out.residual = out.conformal_residual;
  }
  return out;
}

}  // namespace detail

FieldClass classify_field(const ManifoldSpec& m, const VectorField& x,
                          const std::vector<Point>& samples, double tol) {
  if (samples.size() < 8) throw Error("classify_field needs at least 8 sample points");
  const auto per_point = parallel_map<detail::LieSample>(
      samples.size(), [&](std::size_t i) { return detail::lie_sample(m, x, samples[i]); });
  return detail::reduce_classification(per_point, tol);
}

double skew_adjoint_residual(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  const PointGeometry geo = geometry_at(m, p);
  const Mat a = shape_operator_at(m, geo, x);
  const Mat& g = geo.metric.g;
  const Mat s = a.transpose() * g + g * a;
  const double norm = std::max(1.0, a.cwiseAbs().maxCoeff() * g.cwiseAbs().maxCoeff());
  return s.cwiseAbs().maxCoeff() / norm;
}

Mat complement_frame(const MetricAt& metric, const Vec& x, RestrictionMode mode) {
  const int n = static_cast<int>(x.size());
  const Mat& g = metric.g;
  const Vec gx = g * x;
  Mat candidates;
  if (mode == RestrictionMode::Orthogonal) {
    const double xx = x.dot(gx);
    candidates.resize(n, n);
    for (int i = 0; i < n; ++i) candidates.col(i) = Vec::Unit(n, i) - (gx(i) / xx) * x;
    return indefinite_gram_schmidt(candidates, g, metric.abs_metric, n - 1).basis;
  }
  // Quotient: project along a transversal chart direction z with g(z, X) != 0.
  Eigen::Index istar = 0;
  gx.cwiseAbs().maxCoeff(&istar);
  candidates.resize(n, n - 1);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    if (i == istar) continue;
    candidates.col(c++) = Vec::Unit(n, i) - (gx(i) / gx(istar)) * Vec::Unit(n, static_cast<int>(istar));
  }
  if (n - 2 == 0) return Mat(n, 0);
  return indefinite_gram_schmidt(candidates, g, metric.abs_metric, n - 2).basis;
}

Mat operator_in_basis(const MetricAt& metric, const Mat& a, const Mat& basis) {
  if (basis.cols() == 0) return Mat(0, 0);
  const Mat gram = basis.transpose() * metric.g * basis;
  return gram.ldlt().solve(basis.transpose() * metric.g * a * basis);
}

RestrictedOperator restricted_operator(const ManifoldSpec& m, const PointGeometry& geo,
                                       const VectorField& x, RestrictionMode mode) {
  const Bindings b = m.bindings(geo.point());
  RestrictedOperator out;
  out.mode = mode;
  out.x = x.at(b);
  const Causal c = causal_character(geo.metric, out.x);
  if (mode == RestrictionMode::Orthogonal && c != Causal::Timelike) {
    throw CausalCharacterError(std::string("orthogonal restriction needs timelike X, got ") + to_string(c));
  }
  if (mode == RestrictionMode::Quotient && c != Causal::Lightlike) {
    throw CausalCharacterError(std::string("quotient restriction needs lightlike X, got ") + to_string(c));
  }
  const Mat a = shape_operator_at(m, geo, x);
  out.basis = complement_frame(geo.metric, out.x, mode);
  out.metric = out.basis.transpose() * geo.metric.g * out.basis;
  out.op = operator_in_basis(geo.metric, a, out.basis);

  // g(A e, X) = -df(e): compared against |A| (floored at 1, since A itself
  // is roundoff-sized on flat or near-parallel fields) times |e| |X|.
  const double xnorm = std::sqrt(geo.metric.norm2(out.x));
  const double anorm = std::max(a.norm(), 1.0);
  double worst = 0.0;
  for (int k = 0; k < out.basis.cols(); ++k) {
    const Vec e = out.basis.col(k);
    const double scale = anorm * std::sqrt(geo.metric.norm2(e)) * xnorm;
    worst = std::max(worst, std::abs(geo.metric.inner(a * e, out.x)) / scale);
  }
  out.invariance_residual = worst;

  if (mode == RestrictionMode::Quotient) {
    const Vec ax = a * out.x;
    const Vec gx = geo.metric.g * out.x;
    Eigen::Index istar = 0;
    gx.cwiseAbs().maxCoeff(&istar);
    // z = e_istar is transversal: g(z, X) != 0
    out.eigen_lambda = -(geo.metric.g.row(istar).dot(ax)) / gx(istar);
    const double scale = anorm * xnorm;
    out.eigen_residual = std::sqrt(geo.metric.norm2(ax + out.eigen_lambda * out.x)) / scale;
  }
  if (out.invariance_residual > 1e-6) {
    throw SubspaceNotInvariant("A_X does not preserve X-orthogonal subspace (residual " +
                               std::to_string(out.invariance_residual) +
                               "); X is not homothetic or the point is not critical for g(X,X)");
  }
  return out;
}

RestrictedOperator restricted_operator(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                       RestrictionMode mode) {
  return restricted_operator(m, geometry_at(m, p), x, mode);
}

double hessian_identity_residual(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  const PointGeometry geo = geometry_at(m, p);
  const Bindings b = m.bindings(p);
  const int n = m.dim();
  const Vec xv = x.at(b);
  const Mat lhs = hessian_scalar_at(m, geo, half_norm_expr(m, x));
  const Mat a = shape_operator_at(m, geo, x);
  const Mat a_term = a.transpose() * geo.metric.g * a;
  Mat r_term(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r_term(i, j) = -geo.riemann_contract(Vec::Unit(n, j), xv, Vec::Unit(n, i), xv);
    }
  }
  const double scale = std::max({lhs.cwiseAbs().maxCoeff(), r_term.cwiseAbs().maxCoeff(),
                                 a_term.cwiseAbs().maxCoeff()});
  const double diff = (lhs - r_term - a_term).cwiseAbs().maxCoeff();
  if (scale == 0.0) return diff;
  return diff / scale;
}

ConformalFactorAt conformal_factor_at(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  const int n = m.dim();
  const Bindings b = m.bindings(p);
  const MetricAt metric = metric_at(m, p);
  const auto lie = lie_derivative_metric_expr(m, x);
  Mat L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) L(i, j) = lie[static_cast<std::size_t>(i * n + j)].evaluate(b);
  }
  ConformalFactorAt out;
  out.sigma = (metric.inverse * L).trace() / n;
  out.grad.resize(n);
  for (int k = 0; k < n; ++k) {
    Mat dL(n, n), dg(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        dL(i, j) = differentiate(lie[static_cast<std::size_t>(i * n + j)], m.coordinates()[static_cast<std::size_t>(k)])
                       .evaluate(b);
        dg(i, j) = m.metric_derivative(k, i, j).evaluate(b);
      }
    }
    const Mat dginv = -metric.inverse * dg * metric.inverse;
    out.grad(k) = ((dginv * L).trace() + (metric.inverse * dL).trace()) / n;
  }
  out.along_x = x.at(b).dot(out.grad);
  return out;
}

}  // namespace lorentz
