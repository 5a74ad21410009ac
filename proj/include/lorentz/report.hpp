#pragma once

// Result rows collected by one command, rendered as text or as a JSON
// document with stable keys:
//
//   { "command": "...", "spec_hash": "fnv1a64:...", "version": "...",
//     "results": [ { "op", "inputs", "values", "verdict", "tolerance" } ] }

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lorentz/manifold.hpp"
#include "lorentz/obstruction.hpp"

namespace lorentz {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::json;

// Info rows carry data only and never affect the exit status.
enum class RowStatus { Pass, Fail, OutOfScope, Info };
const char* to_string(RowStatus s);
RowStatus row_status(Verdict v);
std::optional<RowStatus> parse_row_status(std::string_view text);

struct ResultRow {
  std::string op;
  Json inputs = Json::object();
  Json values = Json::object();
  RowStatus status = RowStatus::Info;
  double tolerance = 0.0;
};

struct Report {
  std::string command;
  std::string spec_hash;  // empty when the command has no spec
  std::string version = kVersion;
  std::vector<ResultRow> results;

  ResultRow& add(std::string op, RowStatus status, double tolerance);
  Json to_json() const;
  // Throws Error when a required key is missing or mistyped.
  static Report from_json(const Json& j);
  void write_text(std::ostream& out) const;
  // 1 if any row failed, else 2 if any row is out of scope, else 0.
  int exit_code() const;
};

std::uint64_t fnv1a64(std::string_view bytes);
// Hash of the exported DSL document, so equivalent specs share a fingerprint.
std::string spec_fingerprint(const ManifoldSpec& m);

Json to_json(const Point& p);
Json to_json(const Vec& v);
Json to_json(const Mat& a);

}  // namespace lorentz
