#include <doctest.h>

#include <set>

#include "lorentz/catalog.hpp"
#include "lorentz/dsl.hpp"

using namespace lorentz;

TEST_CASE("catalog names are unique and resolvable") {
  std::set<std::string> names;
  for (const auto& e : catalog()) {
    CHECK(names.insert(e.name).second);
    CHECK(&catalog_entry(e.name) == &e);
    const ManifoldSpec m = build_example(e.name);
    CHECK(m.has_field(e.field));
    CHECK_FALSE(e.expectations.empty());
  }
  for (const char* required : {"minkowski2", "minkowski4", "round_s2", "round_s3", "hopf_lorentz_s3", "torus_family",
                               "torus3_null_variant", "conformal_counterexample", "schwarzschild_exterior",
                               "static_product", "circle_lift_torus"}) {
    CHECK(names.count(required) == 1);
  }
  CHECK_THROWS_AS(catalog_entry("no_such_entry"), Error);
}

TEST_CASE("every expected value is met") {
  for (const auto& e : catalog()) {
    for (const auto& r : run_expectations(e)) {
      INFO(e.name, ": ", r.quantity, " computed ", r.computed, " expected ", r.expected, " tol ", r.tolerance, " ",
           r.note);
      CHECK(r.verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("comparison helper") {
  CHECK(meets(Comparison::Equal, 1.0 + 1e-7, 1.0, 1e-6));
  CHECK_FALSE(meets(Comparison::Equal, 1.1, 1.0, 1e-6));
  CHECK(meets(Comparison::AtMost, -5.0, 0.0, 0.0));
  CHECK_FALSE(meets(Comparison::AtMost, 1e-3, 0.0, 1e-6));
  CHECK(meets(Comparison::AtLeast, -1e-7, 0.0, 1e-6));
  CHECK_FALSE(meets(Comparison::AtLeast, -1.0, 0.0, 1e-6));
}

TEST_CASE("the Hopf entry equals the flipped round sphere") {
  const ManifoldSpec hopf = build_example("hopf_lorentz_s3");
  const ManifoldSpec s3 = build_example("round_s3");
  const ManifoldSpec flipped = lorentzianize(s3, s3.field("H"));
  for (const auto& p : s3.sample_points(25, 1234)) {
    CHECK((metric_at(flipped, p).g - metric_at(hopf, p).g).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("exported entries reload to the same document") {
  for (const auto& e : catalog()) {
    const std::string doc = export_spec(e.build());
    CHECK(export_spec(load_spec(doc)) == doc);
  }
}
