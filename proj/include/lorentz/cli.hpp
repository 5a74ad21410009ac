#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lorentz/manifold.hpp"

namespace lorentz::cli {

// Runs one command line (without the program name). Text goes to out,
// diagnostics to err; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A spec argument is a DSL file path or a catalog entry name.
ManifoldSpec resolve_spec(const std::string& arg);

// "1, pi/2" -> {1, 1.5707...}. Components may be constant expressions.
Point parse_point(std::string_view text);
// "u;v;..." -> vectors
std::vector<Point> parse_point_list(std::string_view text);

}  // namespace lorentz::cli
