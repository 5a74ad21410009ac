#pragma once

// Single-threaded versions of the parallel kernels. Same per-point work and
// the same reductions, run in index order; used to check the OpenMP paths
// and as the benchmark baseline.

#include <vector>

#include "lorentz/obstruction.hpp"
#include "lorentz/symmetry.hpp"

namespace lorentz::serial {

FieldClass classify_field(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& samples,
                          double tol = kClassifyTol);

ExtremaScan scan_extrema(const ManifoldSpec& m, const VectorField& x, const ScanOptions& options = {});

SignScanReport plane_sign_scan(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& path,
                               int planes_per_point = 32, double tol = 1e-9);

}  // namespace lorentz::serial
