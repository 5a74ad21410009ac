#pragma once

// Single-chart semi-Riemannian manifolds: coordinates, metric components as
// expressions, named fields, and pointwise metric queries.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/expr.hpp"
#include "lorentz/tensor.hpp"

namespace lorentz {

inline constexpr double kCausalEps = 1e-9;
// Points closer than this to a non-periodic chart boundary are refused.
inline constexpr double kBoundaryCollar = 1e-6;

enum class Signature { Lorentzian, Riemannian, Indefinite };

struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  // Finite window used for sampling; defaults to [lo, hi].
  std::optional<std::pair<double, double>> sample;

  double period() const { return hi - lo; }
  double sample_lo() const { return sample ? sample->first : lo; }
  double sample_hi() const { return sample ? sample->second : hi; }
};

// Contravariant field X = X^i d_i with its exact Jacobian d_j X^i.
class VectorField {
 public:
  VectorField() = default;
  VectorField(std::string name, std::vector<Expr> components,
              const std::vector<std::string>& coordinates);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& component(int i) const { return components_[static_cast<std::size_t>(i)]; }
  // d_j X^i
  const Expr& derivative(int i, int j) const {
    return jacobian_[static_cast<std::size_t>(i * dim() + j)];
  }

  Vec at(const Bindings& b) const;
  // Matrix J with J(i, j) = d_j X^i.
  Mat jacobian_at(const Bindings& b) const;

 private:
  std::string name_;
  std::vector<Expr> components_;
  std::vector<Expr> jacobian_;
};

struct ScalarField {
  std::string name;
  Expr value;
};

struct ManifoldDefinition {
  std::string name;
  std::vector<Axis> axes;
  Signature signature = Signature::Lorentzian;
  std::vector<std::pair<std::string, double>> params;
  // dim x dim; unset entries are zero, (i,j)/(j,i) are symmetrized.
  std::vector<std::vector<std::optional<Expr>>> metric;
  std::vector<std::pair<std::string, std::vector<Expr>>> fields;
  std::vector<ScalarField> scalars;
};

struct LoadOptions {
  bool check_signature = true;
  int signature_samples = 100;
  std::uint64_t seed = 0x5eedULL;
};

class ManifoldSpec {
 public:
  explicit ManifoldSpec(ManifoldDefinition def, const LoadOptions& options = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(axes_.size()); }
  Signature signature() const { return signature_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  double param(const std::string& name) const;
  // Coordinates plus parameters: the names expressions may use.
  std::set<std::string> declared_names() const;

  const Expr& metric(int i, int j) const { return metric_[idx2(i, j)]; }
  // d_k g_ij
  const Expr& metric_derivative(int k, int i, int j) const {
    return dmetric_[static_cast<std::size_t>(k) * n2() + idx2(i, j)];
  }
  // d_k d_l g_ij
  const Expr& metric_second_derivative(int k, int l, int i, int j) const {
    return ddmetric_[(static_cast<std::size_t>(k) * dim() + l) * n2() + idx2(i, j)];
  }

  const std::vector<VectorField>& fields() const { return fields_; }
  const VectorField& field(const std::string& name) const;
  bool has_field(const std::string& name) const;
  const std::vector<ScalarField>& scalars() const { return scalars_; }
  const ScalarField& scalar(const std::string& name) const;

  // Wraps periodic coordinates into [lo, hi).
  Point wrap(const Point& p) const;
  // Throws DomainError if p is outside the chart or within kBoundaryCollar of
  // a non-periodic boundary.
  void require_interior(const Point& p) const;
  // Wrapped, boundary-checked bindings of coordinates and parameters.
  Bindings bindings(const Point& p) const;

  // Deterministic uniform samples inside the sampling windows.
  std::vector<Point> sample_points(int count, std::uint64_t seed = 0x5eedULL) const;

  // Signature check at the given points; throws SignatureError.
  void validate_signature(const std::vector<Point>& points) const;

  // Symbolic g(X, Y) for expression-valued component lists.
  Expr inner_expr(const std::vector<Expr>& x, const std::vector<Expr>& y) const;

  const ManifoldDefinition& definition() const { return definition_; }

 private:
  std::size_t n2() const { return static_cast<std::size_t>(dim() * dim()); }
  std::size_t idx2(int i, int j) const { return static_cast<std::size_t>(i * dim() + j); }

  ManifoldDefinition definition_;
  std::string name_;
  Signature signature_;
  std::vector<Axis> axes_;
  std::vector<std::string> coordinates_;
  std::vector<std::pair<std::string, double>> params_;
  std::vector<Expr> metric_;
  std::vector<Expr> dmetric_;
  std::vector<Expr> ddmetric_;
  std::vector<VectorField> fields_;
  std::vector<ScalarField> scalars_;
};

// Metric data at a point.
struct MetricAt {
  Point point;
  Mat g;
  Mat inverse;
  Vec eigenvalues;  // ascending
  // sum |lambda_k| e_k e_k^T: the Riemannianized metric used for scale-free tolerances.
  Mat abs_metric;
  std::vector<int> signs;

  double inner(const Vec& u, const Vec& v) const { return u.dot(g * v); }
  double norm2(const Vec& v) const { return v.dot(abs_metric * v); }
  int negative_count() const;
};

// Throws DegenerateMetric when the smallest |eigenvalue| is below 1e-12 of the largest.
MetricAt metric_at(const ManifoldSpec& m, const Point& p);

enum class Causal { Timelike, Lightlike, Spacelike, Zero };
const char* to_string(Causal c);

struct TangentVector {
  Point base;
  Vec components;
};

struct TangentPlane {
  Point base;
  Vec u;
  Vec v;
  double discriminant = 0.0;  // g(u,u) g(v,v) - g(u,v)^2
};

enum class PlaneType { Timelike, Spacelike, Degenerate };
const char* to_string(PlaneType t);

Causal causal_character(const MetricAt& metric, const Vec& v, double eps = kCausalEps);
Causal causal_character(const ManifoldSpec& m, const TangentVector& v, double eps = kCausalEps);

// Throws DependentVectors when u and v do not span a plane.
TangentPlane make_plane(const MetricAt& metric, const Vec& u, const Vec& v);
TangentPlane make_plane(const ManifoldSpec& m, const Point& base, const Vec& u, const Vec& v);

PlaneType plane_type(const MetricAt& metric, const TangentPlane& plane, double eps = kCausalEps);
PlaneType plane_type(const ManifoldSpec& m, const TangentPlane& plane, double eps = kCausalEps);

}  // namespace lorentz
