#pragma once

// Sectioned key-value documents describing a ManifoldSpec.
//
//   [manifold]
//   name = torus_family
//   dim = 2
//   coords = x, y
//   range.x = 0, 1
//   range.y = 0, 1
//   sample.x = 0.1, 0.9        (optional sampling window)
//   periodic = x, y
//   signature = lorentzian     (lorentzian | riemannian | indefinite)
//
//   [params]
//   m = 1
//
//   [metric]
//   g.x.y = "1"                (indices are coordinate names or 0-based integers)
//   g.y.y = "2*(-1 + cos(2*pi*x)/4)"
//
//   [field.X]
//   y = "1"                    (unspecified components are zero)
//
//   [scalar.f]
//   value = "x^2"
//
// '#' starts a comment. Ranges accept inf / -inf.

#include <string>
#include <string_view>

#include "lorentz/manifold.hpp"

namespace lorentz {

ManifoldSpec load_spec(std::string_view document, const LoadOptions& options = {});
ManifoldSpec load_spec_file(const std::string& path, const LoadOptions& options = {});
std::string export_spec(const ManifoldSpec& spec);

}  // namespace lorentz
