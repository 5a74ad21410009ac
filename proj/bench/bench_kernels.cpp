// Serial vs OpenMP timings of the data-parallel kernels on catalog examples.
//   bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "lorentz/catalog.hpp"
#include "lorentz/parallel.hpp"
#include "lorentz/serial.hpp"

using namespace lorentz;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void line(const std::string& name, double serial, double parallel) {
  std::printf("%-42s serial %9.4f s   parallel %9.4f s   speedup %5.2f\n", name.c_str(), serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", worker_count(), repeats);

  for (const char* name : {"torus_family", "hopf_lorentz_s3", "schwarzschild_exterior"}) {
    const ManifoldSpec m = build_example(name);
    const VectorField& x = m.field(catalog_entry(name).field);
    const auto pts = m.sample_points(2000);
    line(std::string("classify_field ") + name, best_of(repeats, [&] { serial::classify_field(m, x, pts); }),
         best_of(repeats, [&] { classify_field(m, x, pts); }));
  }

  {
    const ManifoldSpec m = build_example("torus3_null_variant");
    const VectorField& x = m.field(catalog_entry("torus3_null_variant").field);
    ScanOptions opts;
    opts.resolution = 4096;
    line("scan_extrema torus3_null_variant", best_of(repeats, [&] { serial::scan_extrema(m, x, opts); }),
         best_of(repeats, [&] { scan_extrema(m, x, opts); }));
  }
  {
    const ManifoldSpec m = build_example("conformal_counterexample");
    const VectorField& x = m.field("Y");
    ScanOptions opts;
    opts.resolution = 256;
    line("scan_extrema conformal_counterexample", best_of(repeats, [&] { serial::scan_extrema(m, x, opts); }),
         best_of(repeats, [&] { scan_extrema(m, x, opts); }));
  }
  {
    const ManifoldSpec m = build_example("torus_family");
    const VectorField& x = m.field("X");
    const auto path = linear_path({0.5, 0.0}, {0.0, 0.0}, 1024);
    line("plane_sign_scan torus_family", best_of(repeats, [&] { serial::plane_sign_scan(m, x, path, 32); }),
         best_of(repeats, [&] { plane_sign_scan(m, x, path, 32); }));
  }
  {
    const ManifoldSpec m = build_example("static_product_warped");
    const VectorField& x = m.field(catalog_entry("static_product_warped").field);
    const auto path = linear_path(m.sample_points(2, 7)[0], m.sample_points(2, 7)[1], 256);
    line("plane_sign_scan static_product_warped", best_of(repeats, [&] { serial::plane_sign_scan(m, x, path, 32); }),
         best_of(repeats, [&] { plane_sign_scan(m, x, path, 32); }));
  }
  return 0;
}
