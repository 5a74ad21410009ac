#include "lorentz/serial.hpp"

#include "detail.hpp"
#include "lorentz/errors.hpp"

namespace lorentz::serial {

FieldClass classify_field(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& samples,
                          double tol) {
  if (samples.size() < 8) throw Error("classify_field needs at least 8 sample points");
  std::vector<detail::LieSample> per_point;
  per_point.reserve(samples.size());
  for (const auto& p : samples) per_point.push_back(detail::lie_sample(m, x, p));
  return detail::reduce_classification(per_point, tol);
}

ExtremaScan scan_extrema(const ManifoldSpec& m, const VectorField& x, const ScanOptions& options) {
  const detail::HalfNorm hn = detail::half_norm(m, x);
  const detail::Grid grid = detail::make_grid(m, hn, options.resolution);
  const std::size_t n = grid.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = hn.f.evaluate(m.bindings(grid.point(i)));
  std::vector<detail::Candidate> candidates(n);
  for (std::size_t i = 0; i < n; ++i) candidates[i] = detail::classify_node(grid, values, i);
  return detail::finish_scan(m, x, hn, grid, values, candidates, options);
}

SignScanReport plane_sign_scan(const ManifoldSpec& m, const VectorField& x, const std::vector<Point>& path,
                               int planes_per_point, double tol) {
  std::vector<PathSample> samples;
  samples.reserve(path.size());
  for (const auto& p : path) samples.push_back(detail::path_sample(m, x, p, planes_per_point));
  return detail::finish_sign_scan(std::move(samples), tol);
}

}  // namespace lorentz::serial
