#pragma once

// Curvature obstructions for homothetic fields: extrema of f = g(X,X)/2,
// witness planes at minima, sign scans of planes containing X along paths,
// the conformal lower bound, and the metric constructions that produce
// examples (Lorentz flip along a Killing field, circle lift).

#include <optional>
#include <string>
#include <vector>

#include "lorentz/curvature.hpp"
#include "lorentz/symmetry.hpp"

namespace lorentz {

inline constexpr double kVerdictTol = 1e-6;

enum class ExtremumKind { LocalMin, LocalMax, Saddle };
const char* to_string(ExtremumKind k);

struct ExtremumRecord {
  Point point;
  double f = 0.0;
  ExtremumKind kind = ExtremumKind::Saddle;
  Causal x_character = Causal::Zero;
  Vec hessian_eigenvalues;      // of the (covariant) Hessian of f, ascending
  std::vector<int> hessian_signs;  // -1 / 0 / +1 at the classification tolerance
  bool plateau = false;
};

struct ScanOptions {
  int resolution = 32;       // grid nodes per (non-collapsed) axis, >= 8
  int refine_steps = 200;    // coordinate-descent sweeps
  double plateau_tie = 1e-10;
  double hessian_tol = 1e-8;  // relative to the largest |eigenvalue|, absolute floor 1e-10
  int plateau_representatives = 4;
};

struct ExtremaScan {
  std::vector<ExtremumRecord> records;  // sorted: kind, then coordinates
  bool plateau = false;
  std::vector<int> grid_shape;
  double f_min = 0.0;  // over grid and refined points
  double f_max = 0.0;
};

ExtremaScan scan_extrema(const ManifoldSpec& m, const VectorField& x, const ScanOptions& options = {});

enum class Verdict { Pass, Fail, OutOfScope };
const char* to_string(Verdict v);

enum class WitnessCase { TimelikeEven, LightlikeOdd };
enum class CurvatureKind { Sectional, NullSectional };

struct WitnessReport {
  ExtremumRecord extremum;
  std::optional<WitnessCase> witness_case;
  Verdict verdict = Verdict::OutOfScope;
  std::string note;
  std::optional<TangentPlane> plane;  // u = kernel direction, v = X_p
  CurvatureKind kind = CurvatureKind::Sectional;
  double value = 0.0;
  std::string inequality;  // ">= 0" or "<= 0"
  double tolerance = kVerdictTol;
  FieldClass field_class;
  bool killing = false;    // case A conclusion lambda = 0
  int operator_dim = 0;
  double kernel_residual = 0.0;
  double invariance_residual = 0.0;
  double span_residual = 0.0;  // smallest normalized singular value of Gram{X, u, v}
};

// Builds the witness plane at p for X timelike & dim even (restricted
// operator on X^perp) or X lightlike & dim odd (quotient operator), without
// checking that p is a local minimum. Parity mismatch or a non-causal X gives
// an OutOfScope report.
WitnessReport witness_construction(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                   const FieldClass& field_class);

// Full check: requires a LocalMin (or plateau) record and a homothetic X.
WitnessReport minimum_witness(const ManifoldSpec& m, const VectorField& x, const ExtremumRecord& at,
                               const std::optional<FieldClass>& field_class = std::nullopt);

// Planes span{w, X} through X_p, w running over a frame of X^perp (timelike X)
// or X^perp/X (lightlike X).
struct PlaneSample {
  Vec w;
  double qk = 0.0;          // g(R(w,X)X,w): finite for every causal X
  std::optional<double> k;  // sectional curvature when the plane is non-degenerate
  double value = 0.0;       // K, or -K_X on a degenerate plane (same sign as the nearby K)
};

struct PathSample {
  Point point;
  double f = 0.0;
  Causal x_character = Causal::Zero;
  std::vector<PlaneSample> planes;
  double tracked = 0.0;  // max of PlaneSample::value
};

std::vector<PlaneSample> sample_planes_containing(const ManifoldSpec& m, const VectorField& x,
                                                  const Point& p, int count);

struct ZeroLocation {
  std::size_t index = 0;  // first sample whose tracked value is zero or has flipped sign
  Point detected;
  Point interpolated;     // linear interpolation on the bracketing segment
  bool exact = false;     // |tracked| < tol at a sample
};

struct SignScanReport {
  std::vector<PathSample> samples;
  std::optional<ZeroLocation> zero;
  bool sign_change = false;
  bool all_zero = false;
  double min_value = 0.0;
  double max_value = 0.0;
  double tolerance = 1e-9;
};

SignScanReport plane_sign_scan(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& path,
                               int planes_per_point = 32, double tol = 1e-9);

// count evenly spaced points from a to b inclusive.
std::vector<Point> linear_path(const Point& a, const Point& b, int count);

struct ConformalReport {
  Point point;
  FieldClass field_class;
  double sigma = 0.0;
  double x_sigma = 0.0;  // X_p(sigma)
  double g_xx = 0.0;
  double k = 0.0;        // K(span{v, X})
  double bound = 0.0;    // X(sigma) / (2 (-g(X,X)))
  Verdict bound_verdict = Verdict::Fail;        // K >= bound
  Verdict nonnegative_verdict = Verdict::Fail;  // K >= 0
  bool x_sigma_nonnegative = false;
  Vec kernel;
  double kernel_residual = 0.0;
  double tolerance = kVerdictTol;
  double sigma_tolerance = 1e-9;
};

// Throws NotCritical when |sigma(p)| exceeds sigma_tol and
// CausalCharacterError when X_p is not timelike.
ConformalReport conformal_bound_check(const ManifoldSpec& m, const VectorField& x, const Point& p,
                                      double sigma_tol = 1e-9);

// g - (2 / g(X,X)) w (x) w with w the g-dual of X. An involution whenever
// g(X,X) != 0 on the chart.
ManifoldSpec flip_metric(const ManifoldSpec& m, const VectorField& x, const std::string& name,
                         Signature signature);

struct LorentzianizeReport {
  double norm_residual = 0.0;        // max |g(X,X) + g_R(X,X)|
  double orthogonal_residual = 0.0;  // max |g - g_R| on X^perp
  FieldClass killing;                // X for the new metric
};

// Requires a positive-definite metric and a nowhere-zero Killing X at the
// sampled points; postconditions are verified on the same samples.
ManifoldSpec lorentzianize(const ManifoldSpec& riemannian, const VectorField& x,
                           LorentzianizeReport* report = nullptr, int samples = 32);

enum class LiftMode { CausalLocus, General };

struct LiftReport {
  double c = 0.0;
  double max_gxx = 0.0;  // of the base field
  double min_gxx = 0.0;
  std::vector<Point> lightlike_locus;  // points of M x S^1 (theta = 0)
  FieldClass killing;
  std::string field_name;
};

// (M x S^1, g + dtheta^2) with Xbar = X + c d_theta. CausalLocus requires
// -c^2 to be the maximum of g(X,X) (X̄ causal, lightlike exactly on the max
// locus); General accepts any c > 0.
ManifoldSpec circle_lift(const ManifoldSpec& m, const VectorField& x, double c, LiftMode mode,
                         LiftReport* report = nullptr, int resolution = 64);

}  // namespace lorentz
