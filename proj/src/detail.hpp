#pragma once

// Per-point pieces shared by the OpenMP kernels and their serial references.

#include <vector>

#include "lorentz/obstruction.hpp"
#include "lorentz/symmetry.hpp"

namespace lorentz::detail {

struct LieSample {
  Mat g;
  Mat lie;
  double scale = 1.0;
  double sigma = 0.0;
};

LieSample lie_sample(const ManifoldSpec& m, const VectorField& x, const Point& p);
FieldClass reduce_classification(const std::vector<LieSample>& samples, double tol);

// Regular grid over the sampling windows; axes on which f does not depend
// collapse to one node.
struct Grid {
  std::vector<int> shape;
  std::vector<std::vector<double>> nodes;  // per axis
  std::vector<bool> periodic;

  std::size_t size() const;
  std::vector<int> unflatten(std::size_t index) const;
  std::size_t flatten(const std::vector<int>& idx) const;
  Point point(std::size_t index) const;
};

struct HalfNorm {
  Expr f;
  std::vector<Expr> grad;
  std::vector<Expr> hess;  // i*dim+j
};

HalfNorm half_norm(const ManifoldSpec& m, const VectorField& x);
Grid make_grid(const ManifoldSpec& m, const HalfNorm& hn, int resolution);

enum class Candidate : int { None = 0, Min = 1, Max = 2 };
// Compares node i with its axis neighbours (wrapping on periodic axes).
// Boundary nodes of non-periodic axes are never candidates.
Candidate classify_node(const Grid& grid, const std::vector<double>& values, std::size_t i);

bool is_plateau(const std::vector<double>& values);

// Refines, classifies and deduplicates candidates; identical for both kernels.
ExtremaScan finish_scan(const ManifoldSpec& m, const VectorField& x, const HalfNorm& hn, const Grid& grid,
                        const std::vector<double>& values, const std::vector<Candidate>& candidates,
                        const ScanOptions& options);

PathSample path_sample(const ManifoldSpec& m, const VectorField& x, const Point& p, int planes);
SignScanReport finish_sign_scan(std::vector<PathSample> samples, double tol);

}  // namespace lorentz::detail
