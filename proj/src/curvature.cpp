#include "lorentz/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace lorentz {

PointGeometry geometry_at(const ManifoldSpec& m, const Point& p) {
  PointGeometry geo;
  geo.metric = metric_at(m, p);
  const Bindings b = m.bindings(p);
  const int n = m.dim();
  const Mat& ginv = geo.metric.inverse;
  const Mat& g = geo.metric.g;

  geo.dmetric = Tensor3(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double v = m.metric_derivative(k, i, j).evaluate(b);
        geo.dmetric(k, i, j) = v;
        geo.dmetric(k, j, i) = v;
      }
    }
  }
  Tensor4 ddg(n);  // (k,l,i,j) = d_k d_l g_ij
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          const double v = m.metric_second_derivative(k, l, i, j).evaluate(b);
          ddg(k, l, i, j) = v;
          ddg(l, k, i, j) = v;
          ddg(k, l, j, i) = v;
          ddg(l, k, j, i) = v;
        }
      }
    }
  }
  const Tensor3& dg = geo.dmetric;

  // Christoffel symbols of the first kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  Tensor3 first(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        first(i, j, l) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
      }
    }
  }
  geo.christoffel = Tensor3(n);
  Tensor3& gamma = geo.christoffel;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * first(i, j, l);
        gamma(k, i, j) = s;
        gamma(k, j, i) = s;
      }
    }
  }

  // d_m Gamma^k_ij = -g^{ka} d_m g_ab Gamma^b_ij + g^{kl} d_m [ij, l]
  Tensor4 dgamma(n);  // (m,k,i,j)
  for (int mm = 0; mm < n; ++mm) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Vec dfirst(n);
        for (int l = 0; l < n; ++l) {
          dfirst(l) = 0.5 * (ddg(mm, i, j, l) + ddg(mm, j, i, l) - ddg(mm, l, i, j));
        }
        Vec tmp(n);  // d_m g_ab Gamma^b_ij, indexed by a
        for (int a = 0; a < n; ++a) {
          double s = 0.0;
          for (int bb = 0; bb < n; ++bb) s += dg(mm, a, bb) * gamma(bb, i, j);
          tmp(a) = s;
        }
        const Vec val = ginv * (dfirst - tmp);
        for (int k = 0; k < n; ++k) {
          dgamma(mm, k, i, j) = val(k);
          dgamma(mm, k, j, i) = val(k);
        }
      }
    }
  }

  // R^l_kij with R(d_i, d_j) d_k = R^l_kij d_l
  Tensor4 up(n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double s = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int mm = 0; mm < n; ++mm) {
            s += gamma(l, i, mm) * gamma(mm, j, k) - gamma(l, j, mm) * gamma(mm, i, k);
          }
          up(l, k, i, j) = s;
        }
      }
    }
  }
  geo.riemann = Tensor4(n);
  for (int a = 0; a < n; ++a) {
    for (int bb = 0; bb < n; ++bb) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int e = 0; e < n; ++e) s += g(a, e) * up(e, bb, c, d);
          geo.riemann(a, bb, c, d) = s;
        }
      }
    }
  }
  geo.ricci = Mat::Zero(n, n);
  for (int bb = 0; bb < n; ++bb) {
    for (int d = 0; d < n; ++d) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += up(a, bb, a, d);
      geo.ricci(bb, d) = s;
    }
  }
  geo.scalar = (ginv.cwiseProduct(geo.ricci)).sum();
  return geo;
}

double PointGeometry::riemann_contract(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const {
  const int n = dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        if (c(k) == 0.0) continue;
        double t = 0.0;
        for (int l = 0; l < n; ++l) t += riemann(i, j, k, l) * d(l);
        s += a(i) * b(j) * c(k) * t;
      }
    }
  }
  return s;
}

Vec PointGeometry::curvature_operator(const Vec& u, const Vec& v, const Vec& w) const {
  // g(R(u,v)w, e_a) = R(e_a, w, u, v)
  const int n = dim();
  Vec lowered(n);
  for (int a = 0; a < n; ++a) lowered(a) = riemann_contract(Vec::Unit(n, a), w, u, v);
  return metric.inverse * lowered;
}

double TensorIdentityResiduals::max() const {
  return std::max({antisymmetry, pair_symmetry, first_bianchi, metric_compatibility});
}

TensorIdentityResiduals tensor_identity_residuals(const PointGeometry& geo) {
  const int n = geo.dim();
  const Tensor4& r = geo.riemann;
  const double gmax = geo.metric.g.cwiseAbs().maxCoeff();
  const double rs = std::max(r.max_abs(), 1e-12 * std::max(1.0, gmax));
  TensorIdentityResiduals out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const double v = r(a, b, c, d);
          out.antisymmetry = std::max({out.antisymmetry, std::abs(v + r(b, a, c, d)), std::abs(v + r(a, b, d, c))});
          out.pair_symmetry = std::max(out.pair_symmetry, std::abs(v - r(c, d, a, b)));
          out.first_bianchi = std::max(out.first_bianchi, std::abs(v + r(a, c, d, b) + r(a, d, b, c)));
        }
      }
    }
  }
  out.antisymmetry /= rs;
  out.pair_symmetry /= rs;
  out.first_bianchi /= rs;

  double dmax = 0.0, worst = 0.0;
  const Mat& g = geo.metric.g;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = geo.dmetric(k, i, j);
        dmax = std::max(dmax, std::abs(v));
        for (int l = 0; l < n; ++l) v -= geo.christoffel(l, k, i) * g(l, j) + geo.christoffel(l, k, j) * g(i, l);
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  out.metric_compatibility = worst / std::max(dmax, 1e-12 * std::max(1.0, gmax));
  return out;
}

Tensor3 christoffel_at(const ManifoldSpec& m, const Point& p) { return geometry_at(m, p).christoffel; }

Tensor4 riemann_at(const ManifoldSpec& m, const Point& p) { return geometry_at(m, p).riemann; }

RicciAt ricci_at(const ManifoldSpec& m, const Point& p) {
  auto geo = geometry_at(m, p);
  return {geo.ricci, geo.scalar};
}

double sectional_curvature(const PointGeometry& geo, const Vec& u, const Vec& v) {
  const TangentPlane plane = make_plane(geo.metric, u, v);
  if (plane_type(geo.metric, plane) == PlaneType::Degenerate) {
    throw DegeneratePlane("sectional curvature of a degenerate plane; use the null sectional curvature");
  }
  return geo.riemann_contract(u, v, u, v) / plane.discriminant;
}

double sectional_curvature(const ManifoldSpec& m, const TangentPlane& plane) {
  return sectional_curvature(geometry_at(m, plane.base), plane.u, plane.v);
}

double null_sectional_curvature(const PointGeometry& geo, const Vec& x, const Vec& v) {
  if (causal_character(geo.metric, x) != Causal::Lightlike) {
    throw CausalCharacterError("null sectional curvature needs a lightlike X");
  }
  const Causal cv = causal_character(geo.metric, v);
  if (cv == Causal::Lightlike || cv == Causal::Zero) {
    throw CausalCharacterError("null sectional curvature needs a non-lightlike v");
  }
  const TangentPlane plane = make_plane(geo.metric, v, x);
  if (plane_type(geo.metric, plane) != PlaneType::Degenerate) {
    throw DegeneratePlane("span{v, X} is not degenerate; v must be orthogonal to X");
  }
  return geo.riemann_contract(v, x, v, x) / geo.metric.inner(v, v);
}

double null_sectional_curvature(const ManifoldSpec& m, const Point& p, const Vec& x, const Vec& v) {
  return null_sectional_curvature(geometry_at(m, p), x, v);
}

Mat hessian_scalar_at(const ManifoldSpec& m, const PointGeometry& geo, const Expr& phi) {
  const Bindings b = m.bindings(geo.point());
  const int n = m.dim();
  const auto& coords = m.coordinates();
  std::vector<Expr> grad;
  Vec dphi(n);
  for (int k = 0; k < n; ++k) {
    grad.push_back(differentiate(phi, coords[static_cast<std::size_t>(k)]));
    dphi(k) = grad.back().evaluate(b);
  }
  Mat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double v = differentiate(grad[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]).evaluate(b);
      for (int k = 0; k < n; ++k) v -= geo.christoffel(k, i, j) * dphi(k);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

Mat hessian_scalar_at(const ManifoldSpec& m, const Expr& phi, const Point& p) {
  return hessian_scalar_at(m, geometry_at(m, p), phi);
}

Mat shape_operator_at(const ManifoldSpec& m, const PointGeometry& geo, const VectorField& x) {
  const Bindings b = m.bindings(geo.point());
  const int n = m.dim();
  const Vec xv = x.at(b);
  Mat a = -x.jacobian_at(b);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += geo.christoffel(i, j, k) * xv(k);
      a(i, j) -= s;
    }
  }
  return a;
}

Mat shape_operator_at(const ManifoldSpec& m, const VectorField& x, const Point& p) {
  return shape_operator_at(m, geometry_at(m, p), x);
}

}  // namespace lorentz
