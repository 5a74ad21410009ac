#pragma once

// Lie derivative of the metric, Killing / homothetic / conformal
// classification, the operator A_X = -nabla X restricted to X-orthogonal
// subspaces, and the Hessian identity for f = g(X,X)/2.

#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/linalg.hpp"
#include "lorentz/manifold.hpp"

namespace lorentz {

inline constexpr double kClassifyTol = 1e-8;

// f = g(X,X)/2 as an expression.
Expr half_norm_expr(const ManifoldSpec& m, const VectorField& x);

// (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k
Mat lie_derivative_metric_at(const ManifoldSpec& m, const VectorField& x, const Point& p);

// Symbolic L_X g, entry (i,j) at index i*dim+j.
std::vector<Expr> lie_derivative_metric_expr(const ManifoldSpec& m, const VectorField& x);

struct FieldClass {
  enum class Tag { Killing, Homothetic, Conformal, None };
  Tag tag = Tag::None;
  double lambda = 0.0;             // least-squares homothety constant
  std::vector<double> sigma;       // trace(g^-1 L_X g)/m per sample
  double residual = 0.0;           // residual of the reported tag
  double killing_residual = 0.0;
  double homothetic_residual = 0.0;
  double conformal_residual = 0.0;
  std::size_t sample_count = 0;
  double tolerance = kClassifyTol;

  bool is_homothetic() const { return tag == Tag::Killing || tag == Tag::Homothetic; }
};
const char* to_string(FieldClass::Tag tag);

// Needs at least 8 samples (throws Error otherwise). Residuals are max
// entrywise deviations normalized by max |g_ij| at each sample.
FieldClass classify_field(const ManifoldSpec& m, const VectorField& x,
                          const std::vector<Point>& samples, double tol = kClassifyTol);

// max |g(A u, v) + g(u, A v)| over chart basis pairs / max(1, |A| |g|).
double skew_adjoint_residual(const ManifoldSpec& m, const VectorField& x, const Point& p);

enum class RestrictionMode { Orthogonal, Quotient };

// Frame of X^perp: g-orthonormal (Orthogonal, dim m-1, X timelike), or
// representatives of X^perp / span{X} (Quotient, dim m-2, X lightlike).
Mat complement_frame(const MetricAt& metric, const Vec& x, RestrictionMode mode);

struct RestrictedOperator {
  RestrictionMode mode = RestrictionMode::Orthogonal;
  Vec x;                 // X_p
  Mat basis;             // m x k
  Mat op;                // k x k, A_X in the basis
  Mat metric;            // induced inner product in the basis
  double invariance_residual = 0.0;
  double eigen_lambda = 0.0;    // Quotient: A_X(X_p) = -lambda X_p
  double eigen_residual = 0.0;
};

// Throws CausalCharacterError when X_p does not match the mode and
// SubspaceNotInvariant when A_X does not preserve X^perp.
RestrictedOperator restricted_operator(const ManifoldSpec& m, const PointGeometry& geo,
                                       const VectorField& x, RestrictionMode mode);
RestrictedOperator restricted_operator(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                       RestrictionMode mode);

// Coefficients of A in the basis: (B^T g B)^-1 B^T g A B.
Mat operator_in_basis(const MetricAt& metric, const Mat& a, const Mat& basis);

// max |Hess f - (-g(R(e_i,X)X,e_j) + g(A e_i, A e_j))| normalized by the
// largest entry among the three terms.
double hessian_identity_residual(const ManifoldSpec& m, const VectorField& x, const Point& p);

struct ConformalFactorAt {
  double sigma = 0.0;
  Vec grad;            // d_k sigma
  double along_x = 0.0;  // X(sigma)
};
ConformalFactorAt conformal_factor_at(const ManifoldSpec& m, const VectorField& x, const Point& p);

}  // namespace lorentz
