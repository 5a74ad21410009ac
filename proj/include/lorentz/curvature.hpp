#pragma once

// Levi-Civita connection and curvature at a point.
//
// Convention: R(U,V)W = nabla_U nabla_V W - nabla_V nabla_U W - nabla_[U,V] W,
// lowered as R_abcd = g(R(d_c, d_d) d_b, d_a), so that
//   K(span{u,v}) = R(u,v,u,v) / (g(u,u) g(v,v) - g(u,v)^2)
// is +1 on the unit round sphere.

#include "lorentz/manifold.hpp"
#include "lorentz/tensor.hpp"

namespace lorentz {

struct PointGeometry {
  MetricAt metric;
  Tensor3 dmetric;      // (k,i,j) = d_k g_ij
  Tensor3 christoffel;  // (k,i,j) = Gamma^k_ij
  Tensor4 riemann;      // R_abcd as above
  Mat ricci;            // Ric_bd = R^a_bad
  double scalar = 0.0;

  int dim() const { return static_cast<int>(metric.g.rows()); }
  const Point& point() const { return metric.point; }

  // R(a,b,c,d) contracted with four vectors.
  double riemann_contract(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const;
  // Components of the vector R(u,v)w.
  Vec curvature_operator(const Vec& u, const Vec& v, const Vec& w) const;
};

PointGeometry geometry_at(const ManifoldSpec& m, const Point& p);

Tensor3 christoffel_at(const ManifoldSpec& m, const Point& p);
Tensor4 riemann_at(const ManifoldSpec& m, const Point& p);

struct RicciAt {
  Mat ricci;
  double scalar = 0.0;
};
RicciAt ricci_at(const ManifoldSpec& m, const Point& p);

// Throws DegeneratePlane when |Q| <= kCausalEps * |u|^2 |v|^2.
double sectional_curvature(const PointGeometry& geo, const Vec& u, const Vec& v);
double sectional_curvature(const ManifoldSpec& m, const TangentPlane& plane);

// g(R(v,X)X, v) / g(v,v) for a lightlike X and a non-lightlike v spanning a
// degenerate plane with X.
double null_sectional_curvature(const PointGeometry& geo, const Vec& x, const Vec& v);
double null_sectional_curvature(const ManifoldSpec& m, const Point& p, const Vec& x, const Vec& v);

// Algebraic identities of R and the connection at one point, each as a max
// entrywise violation relative to the size of the tensor involved.
struct TensorIdentityResiduals {
  double antisymmetry = 0.0;   // R_abcd + R_bacd and R_abcd + R_abdc
  double pair_symmetry = 0.0;  // R_abcd - R_cdab
  double first_bianchi = 0.0;  // R_abcd + R_acdb + R_adbc
  double metric_compatibility = 0.0;  // nabla_k g_ij
  double max() const;
};
TensorIdentityResiduals tensor_identity_residuals(const PointGeometry& geo);

// (Hess phi)_ij = d_i d_j phi - Gamma^k_ij d_k phi
Mat hessian_scalar_at(const ManifoldSpec& m, const Expr& phi, const Point& p);
Mat hessian_scalar_at(const ManifoldSpec& m, const PointGeometry& geo, const Expr& phi);

// (A_X)^i_j = -(d_j X^i + Gamma^i_jk X^k), the matrix of v -> -nabla_v X.
Mat shape_operator_at(const ManifoldSpec& m, const VectorField& x, const Point& p);
Mat shape_operator_at(const ManifoldSpec& m, const PointGeometry& geo, const VectorField& x);

}  // namespace lorentz
