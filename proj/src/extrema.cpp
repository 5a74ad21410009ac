#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "detail.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/parallel.hpp"

namespace lorentz {

const char* to_string(ExtremumKind k) {
  switch (k) {
    case ExtremumKind::LocalMin: return "local_min";
    case ExtremumKind::LocalMax: return "local_max";
    case ExtremumKind::Saddle: return "saddle";
  }
  return "?";
}

namespace detail {

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

std::vector<int> Grid::unflatten(std::size_t index) const {
  std::vector<int> idx(shape.size());
  for (std::size_t k = shape.size(); k-- > 0;) {
    idx[k] = static_cast<int>(index % static_cast<std::size_t>(shape[k]));
    index /= static_cast<std::size_t>(shape[k]);
  }
  return idx;
}

std::size_t Grid::flatten(const std::vector<int>& idx) const {
  std::size_t out = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) out = out * static_cast<std::size_t>(shape[k]) + idx[k];
  return out;
}

Point Grid::point(std::size_t index) const {
  const auto idx = unflatten(index);
  Point p(shape.size());
  for (std::size_t k = 0; k < shape.size(); ++k) p[k] = nodes[k][static_cast<std::size_t>(idx[k])];
  return p;
}

HalfNorm half_norm(const ManifoldSpec& m, const VectorField& x) {
  HalfNorm hn;
  const int n = m.dim();
  hn.f = half_norm_expr(m, x);
  for (int k = 0; k < n; ++k) hn.grad.push_back(differentiate(hn.f, m.coordinates()[static_cast<std::size_t>(k)]));
  hn.hess.resize(static_cast<std::size_t>(n * n));
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      Expr h = differentiate(hn.grad[static_cast<std::size_t>(k)], m.coordinates()[static_cast<std::size_t>(l)]);
      hn.hess[static_cast<std::size_t>(k * n + l)] = h;
      hn.hess[static_cast<std::size_t>(l * n + k)] = h;
    }
  }
  return hn;
}

namespace {

std::pair<double, double> window(const Axis& a) {
  double lo = a.sample_lo(), hi = a.sample_hi();
  if (!a.periodic) {
    lo = std::max(lo, a.lo + 10 * kBoundaryCollar);
    hi = std::min(hi, a.hi - 10 * kBoundaryCollar);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("axis '" + a.name + "' needs a finite sample window for scanning");
  }
  if (!(hi > lo)) throw DomainError("empty domain on axis '" + a.name + "'");
  return {lo, hi};
}

}  // namespace

Grid make_grid(const ManifoldSpec& m, const HalfNorm& hn, int resolution) {
  if (resolution < 8) throw Error("grid resolution must be at least 8 per axis");
  Grid grid;
  for (int k = 0; k < m.dim(); ++k) {
    const Axis& a = m.axes()[static_cast<std::size_t>(k)];
    const auto [lo, hi] = window(a);
    std::vector<double> nodes;
    if (hn.grad[static_cast<std::size_t>(k)].is_zero()) {
      nodes.push_back(a.periodic ? a.lo : 0.5 * (lo + hi));
    } else if (a.periodic) {
      for (int i = 0; i < resolution; ++i) nodes.push_back(a.lo + a.period() * i / resolution);
    } else {
      for (int i = 0; i < resolution; ++i) nodes.push_back(lo + (hi - lo) * i / (resolution - 1));
    }
    grid.shape.push_back(static_cast<int>(nodes.size()));
    grid.nodes.push_back(std::move(nodes));
    grid.periodic.push_back(a.periodic);
  }
  return grid;
}

Candidate classify_node(const Grid& grid, const std::vector<double>& values, std::size_t i) {
  auto idx = grid.unflatten(i);
  const double v = values[i];
  bool le_all = true, ge_all = true, lt_any = false, gt_any = false, free_axis = false;
  for (std::size_t k = 0; k < grid.shape.size(); ++k) {
    const int n = grid.shape[k];
    if (n == 1) continue;
    free_axis = true;
    const int c = idx[k];
    if (!grid.periodic[k] && (c == 0 || c == n - 1)) return Candidate::None;
    for (int d : {-1, 1}) {
      idx[k] = (c + d + n) % n;
      const double w = values[grid.flatten(idx)];
      le_all = le_all && v <= w;
      ge_all = ge_all && v >= w;
      lt_any = lt_any || v < w;
      gt_any = gt_any || v > w;
    }
    idx[k] = c;
  }
  if (!free_axis) return Candidate::None;
  if (le_all && lt_any) return Candidate::Min;
  if (ge_all && gt_any) return Candidate::Max;
  return Candidate::None;
}

bool is_plateau(const std::vector<double>& values) {
  if (values.empty()) return false;
  std::vector<double> s = values;
  std::sort(s.begin(), s.end());
  std::size_t best = 0;
  for (std::size_t lo = 0, hi = 0; hi < s.size(); ++hi) {
    while (s[hi] - s[lo] > 1e-10) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  return static_cast<double>(best) >= 0.9 * static_cast<double>(s.size());
}

namespace {

double eval_at(const ManifoldSpec& m, const Expr& e, const Point& p) { return e.evaluate(m.bindings(p)); }

double axis_spacing(const Grid& grid, std::size_t k) {
  const auto& n = grid.nodes[k];
  return n.size() > 1 ? std::abs(n[1] - n[0]) : 0.0;
}

// Coordinate descent on sign*f along the free axes. Returns false when the
// point ends up pressed against a window edge.
bool refine(const ManifoldSpec& m, const HalfNorm& hn, const Grid& grid, Point& p, double sign, int steps) {
  const int n = m.dim();
  std::vector<std::pair<double, double>> bounds(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Axis& a = m.axes()[static_cast<std::size_t>(k)];
    if (!a.periodic) bounds[static_cast<std::size_t>(k)] = window(a);
  }
  double phi = sign * eval_at(m, hn.f, p);
  for (int step = 0; step < steps; ++step) {
    bool moved = false;
    for (int k = 0; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (grid.shape[ku] == 1) continue;
      const double h = axis_spacing(grid, ku);
      const double d1 = sign * eval_at(m, hn.grad[ku], p);
      const double d2 = sign * eval_at(m, hn.hess[ku * static_cast<std::size_t>(n) + ku], p);
      if (d1 == 0.0) continue;
      double delta = d2 > 0.0 ? -d1 / d2 : -d1 * h;
      delta = std::clamp(delta, -h, h);
      for (int t = 0; t < 60 && std::abs(delta) > 1e-16 * (1.0 + std::abs(p[ku])); ++t, delta *= 0.5) {
        Point q = p;
        q[ku] += delta;
        if (m.axes()[ku].periodic) {
          q = m.wrap(q);
        } else {
          q[ku] = std::clamp(q[ku], bounds[ku].first, bounds[ku].second);
        }
        if (q[ku] == p[ku]) break;
        const double psi = sign * eval_at(m, hn.f, q);
        if (psi <= phi) {
          moved = moved || psi < phi || std::abs(q[ku] - p[ku]) > 1e-14 * (1.0 + std::abs(p[ku]));
          p = q;
          phi = psi;
          break;
        }
      }
    }
    if (!moved) break;
  }
  for (int k = 0; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (m.axes()[ku].periodic || grid.shape[ku] == 1) continue;
    const double edge = 3 * kBoundaryCollar + 1e-12 * (1.0 + std::abs(p[ku]));
    if (p[ku] - bounds[ku].first < edge || bounds[ku].second - p[ku] < edge) return false;
  }
  return true;
}

double chart_distance(const ManifoldSpec& m, const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = std::abs(a[k] - b[k]);
    const Axis& ax = m.axes()[k];
    if (ax.periodic) d = std::min(d, ax.period() - d);
    s += d * d;
  }
  return std::sqrt(s);
}

ExtremumRecord make_record(const ManifoldSpec& m, const VectorField& x, const HalfNorm& hn, const Point& p,
                           ExtremumKind kind, const ScanOptions& options) {
  const int n = m.dim();
  const Bindings b = m.bindings(p);
  ExtremumRecord r;
  r.point = p;
  r.f = hn.f.evaluate(b);
  Mat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = hn.hess[static_cast<std::size_t>(i * n + j)].evaluate(b);
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  r.hessian_eigenvalues = es.eigenvalues();
  const double scale = r.hessian_eigenvalues.cwiseAbs().maxCoeff();
  const double tol = std::max(options.hessian_tol * scale, 1e-10);
  bool neg = false, pos = false;
  for (int i = 0; i < n; ++i) {
    const double e = r.hessian_eigenvalues(i);
    const int s = e > tol ? 1 : (e < -tol ? -1 : 0);
    r.hessian_signs.push_back(s);
    neg = neg || s < 0;
    pos = pos || s > 0;
  }
  if (kind == ExtremumKind::LocalMin && neg) kind = ExtremumKind::Saddle;
  if (kind == ExtremumKind::LocalMax && pos) kind = ExtremumKind::Saddle;
  r.kind = kind;
  r.x_character = causal_character(metric_at(m, p), x.at(b));
  return r;
}

bool record_less(const ExtremumRecord& a, const ExtremumRecord& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.point < b.point;
}

}  // namespace

ExtremaScan finish_scan(const ManifoldSpec& m, const VectorField& x, const HalfNorm& hn, const Grid& grid,
                        const std::vector<double>& values, const std::vector<Candidate>& candidates,
                        const ScanOptions& options) {
  ExtremaScan out;
  out.grid_shape = grid.shape;
  out.f_min = *std::min_element(values.begin(), values.end());
  out.f_max = *std::max_element(values.begin(), values.end());
  out.plateau = is_plateau(values);

  if (out.plateau) {
    // Every point is both a minimum and a maximum; keep a few interior
    // representatives from the tied set.
    std::vector<std::size_t> interior;
    const double ref = values[0];
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto idx = grid.unflatten(i);
      bool edge = false;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        edge = edge || (!grid.periodic[k] && grid.shape[k] > 1 && (idx[k] == 0 || idx[k] == grid.shape[k] - 1));
      }
      if (!edge && std::abs(values[i] - ref) <= 1e-10) interior.push_back(i);
    }
    const std::size_t want = std::min<std::size_t>(interior.size(), static_cast<std::size_t>(std::max(1, options.plateau_representatives)));
    for (std::size_t r = 0; r < want; ++r) {
      const std::size_t i = interior[r * interior.size() / want];
      ExtremumRecord rec = make_record(m, x, hn, grid.point(i), ExtremumKind::LocalMin, options);
      rec.kind = ExtremumKind::LocalMin;
      rec.plateau = true;
      out.records.push_back(std::move(rec));
    }
    return out;
  }

  std::vector<std::pair<Point, ExtremumKind>> refined;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == Candidate::None) continue;
    Point p = grid.point(i);
    const bool is_min = candidates[i] == Candidate::Min;
    if (!refine(m, hn, grid, p, is_min ? 1.0 : -1.0, options.refine_steps)) continue;
    refined.emplace_back(std::move(p), is_min ? ExtremumKind::LocalMin : ExtremumKind::LocalMax);
  }

  double threshold = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.shape.size(); ++k) {
    if (grid.shape[k] > 1) threshold = std::min(threshold, 0.5 * axis_spacing(grid, k));
  }
  if (!std::isfinite(threshold)) threshold = 1e-6;

  std::vector<ExtremumRecord> kept;
  for (const auto& [p, kind] : refined) {
    ExtremumRecord rec = make_record(m, x, hn, p, kind, options);
    out.f_min = std::min(out.f_min, rec.f);
    out.f_max = std::max(out.f_max, rec.f);
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const ExtremumRecord& k) {
      return k.kind == rec.kind && chart_distance(m, k.point, rec.point) < threshold;
    });
    if (!dup) kept.push_back(std::move(rec));
  }
  std::sort(kept.begin(), kept.end(), record_less);
  out.records = std::move(kept);
  return out;
}

}  // namespace detail

ExtremaScan scan_extrema(const ManifoldSpec& m, const VectorField& x, const ScanOptions& options) {
  const detail::HalfNorm hn = detail::half_norm(m, x);
  const detail::Grid grid = detail::make_grid(m, hn, options.resolution);
  const std::size_t n = grid.size();
  const auto values = parallel_map<double>(n, [&](std::size_t i) { return hn.f.evaluate(m.bindings(grid.point(i))); });
  const auto candidates =
      parallel_map<detail::Candidate>(n, [&](std::size_t i) { return detail::classify_node(grid, values, i); });
  return detail::finish_scan(m, x, hn, grid, values, candidates, options);
}

}  // namespace lorentz
