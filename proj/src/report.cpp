#include "lorentz/report.hpp"

#include <cstdio>
#include <map>

#include "lorentz/dsl.hpp"
#include "lorentz/errors.hpp"

namespace lorentz {

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Pass: return "PASS";
    case RowStatus::Fail: return "FAIL";
    case RowStatus::OutOfScope: return "OUT_OF_SCOPE";
    case RowStatus::Info: return "INFO";
  }
  return "?";
}

RowStatus row_status(Verdict v) {
  switch (v) {
    case Verdict::Pass: return RowStatus::Pass;
    case Verdict::Fail: return RowStatus::Fail;
    case Verdict::OutOfScope: return RowStatus::OutOfScope;
  }
  return RowStatus::Fail;
}

std::optional<RowStatus> parse_row_status(std::string_view text) {
  for (RowStatus s : {RowStatus::Pass, RowStatus::Fail, RowStatus::OutOfScope, RowStatus::Info}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

ResultRow& Report::add(std::string op, RowStatus status, double tolerance) {
  ResultRow row;
  row.op = std::move(op);
  row.status = status;
  row.tolerance = tolerance;
  results.push_back(std::move(row));
  return results.back();
}

Json Report::to_json() const {
  Json rows = Json::array();
  for (const auto& r : results) {
    rows.push_back({{"op", r.op},
                    {"inputs", r.inputs},
                    {"values", r.values},
                    {"verdict", to_string(r.status)},
                    {"tolerance", r.tolerance}});
  }
  return {{"command", command}, {"spec_hash", spec_hash}, {"version", version}, {"results", rows}};
}

Report Report::from_json(const Json& j) {
  try {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.spec_hash = j.at("spec_hash").get<std::string>();
    r.version = j.at("version").get<std::string>();
    for (const auto& row : j.at("results")) {
      ResultRow out;
      out.op = row.at("op").get<std::string>();
      out.inputs = row.at("inputs");
      out.values = row.at("values");
      const auto status = parse_row_status(row.at("verdict").get<std::string>());
      if (!status) throw Error("unknown verdict '" + row.at("verdict").get<std::string>() + "'");
      out.status = *status;
      out.tolerance = row.at("tolerance").get<double>();
      r.results.push_back(std::move(out));
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

namespace {

std::string brief(const Json& v) {
  if (v.is_number_float()) {
    char buf[32];
    const double x = v.get<double>();
    std::snprintf(buf, sizeof buf, "%.10g", x == 0.0 ? 0.0 : x);
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + brief(v[i]);
    return s + "]";
  }
  return v.dump();
}

}  // namespace

void Report::write_text(std::ostream& out) const {
  out << "lorentz " << version << ": " << command << "\n";
  if (!spec_hash.empty()) out << "spec " << spec_hash << "\n";
  std::map<RowStatus, int> counts;
  for (const auto& r : results) {
    ++counts[r.status];
    out << "  " << to_string(r.status) << "  " << r.op;
    for (const auto& [k, v] : r.inputs.items()) out << "  " << k << "=" << brief(v);
    out << "  (tol " << brief(Json(r.tolerance)) << ")\n";
    for (const auto& [k, v] : r.values.items()) out << "      " << k << " = " << brief(v) << "\n";
  }
  out << "summary: " << counts[RowStatus::Pass] << " pass, " << counts[RowStatus::Fail] << " fail, "
      << counts[RowStatus::OutOfScope] << " out of scope, " << counts[RowStatus::Info] << " info\n";
}

int Report::exit_code() const {
  bool scope = false;
  for (const auto& r : results) {
    if (r.status == RowStatus::Fail) return 1;
    scope = scope || r.status == RowStatus::OutOfScope;
  }
  return scope ? 2 : 0;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string spec_fingerprint(const ManifoldSpec& m) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(export_spec(m))));
  return buf;
}

Json to_json(const Point& p) { return Json(p); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vec(m.row(i).transpose())));
  return a;
}

}  // namespace lorentz
