#pragma once

#include <vector>

#include "lorentz/tensor.hpp"

namespace lorentz {

struct OrthonormalFrame {
  Mat basis;               // columns e_a with g(e_a, e_b) = signs[a] delta_ab
  std::vector<int> signs;  // +1 / -1
};

// Orthonormalizes the span of the candidate columns with respect to the
// (possibly indefinite) metric g. The span is first made Riemannian-orthonormal
// with `riemannian`, then Gram-Schmidt runs in g with pivoting on the largest
// relative |g(w,w)|. Stops after `want` vectors. Throws DegeneratePlane when a
// needed direction has |g(e,e)| < tol |e|^2.
OrthonormalFrame indefinite_gram_schmidt(const Mat& candidates, const Mat& g, const Mat& riemannian,
                                         int want, double tol = 1e-9);

struct KernelResult {
  bool found = false;
  Vec direction;             // unit in the supplied metric, coordinates in the operator's basis
  double residual = 0.0;     // |op v| in the metric
  double op_norm = 0.0;      // spectral norm in orthonormal coordinates
  double smallest_singular = 0.0;
  double skew_residual = 0.0;
};

// Near-kernel direction of an operator skew-adjoint with respect to a
// positive-definite metric, from the smallest singular direction. Odd
// dimension without a kernel throws KernelNotFound; even dimension reports
// found = false.
KernelResult kernel_direction(const Mat& op, const Mat& metric);
KernelResult kernel_direction(const Mat& op);

}  // namespace lorentz
