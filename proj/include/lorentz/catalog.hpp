#pragma once

// Built-in example manifolds with their designated fields, scan paths and
// expected values.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lorentz/obstruction.hpp"

namespace lorentz {

// Where an expected value comes from: stated in the literature, derived in
// closed form, or forced by an identity (flatness, dimension count).
enum class Source { Published, ClosedForm, Identity };
const char* to_string(Source s);

enum class Comparison { Equal, AtMost, AtLeast };
const char* to_string(Comparison c);

struct CatalogEntry;

struct Expectation {
  std::string quantity;
  double value = 0.0;
  double tolerance = 0.0;
  Source source = Source::ClosedForm;
  Comparison comparison = Comparison::Equal;
  std::string note;
  std::function<double(const CatalogEntry&, const ManifoldSpec&)> compute;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string field;                    // designated vector field
  std::vector<std::vector<Point>> paths;  // designated sign-scan paths
  std::optional<Point> conformal_point;
  std::vector<Expectation> expectations;
  std::function<ManifoldSpec()> build;
};

const std::vector<CatalogEntry>& catalog();
// Throws Error for an unknown name.
const CatalogEntry& catalog_entry(const std::string& name);
ManifoldSpec build_example(const std::string& name);

struct CheckResult {
  std::string quantity;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Source source = Source::ClosedForm;
  Comparison comparison = Comparison::Equal;
  Verdict verdict = Verdict::Fail;
  std::string note;
};

std::vector<CheckResult> run_expectations(const CatalogEntry& entry);
bool meets(Comparison c, double computed, double expected, double tol);

}  // namespace lorentz
