#include "lorentz/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "lorentz/catalog.hpp"
#include "lorentz/dsl.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/obstruction.hpp"
#include "lorentz/report.hpp"

namespace lorentz::cli {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.emplace_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

bool is_catalog_name(const std::string& name) {
  const auto& c = catalog();
  return std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.name == name; });
}

const VectorField& pick_field(const ManifoldSpec& m, const std::string& spec_arg, const std::string& name) {
  if (!name.empty()) return m.field(name);
  if (is_catalog_name(spec_arg) && !std::filesystem::exists(spec_arg)) return m.field(catalog_entry(spec_arg).field);
  if (m.fields().size() == 1) return m.fields().front();
  throw Error("spec declares " + std::to_string(m.fields().size()) + " fields; choose one with --field");
}

Json class_values(const FieldClass& c) {
  return {{"tag", to_string(c.tag)},
          {"lambda", c.lambda},
          {"killing_residual", c.killing_residual},
          {"homothetic_residual", c.homothetic_residual},
          {"conformal_residual", c.conformal_residual},
          {"samples", c.sample_count}};
}

Json record_values(const ExtremumRecord& r) {
  return {{"point", to_json(r.point)},
          {"f", r.f},
          {"kind", to_string(r.kind)},
          {"x_character", to_string(r.x_character)},
          {"hessian_eigenvalues", to_json(r.hessian_eigenvalues)},
          {"plateau", r.plateau}};
}

Json witness_values(const WitnessReport& w) {
  Json v = record_values(w.extremum);
  v["field_class"] = to_string(w.field_class.tag);
  if (w.witness_case) {
    v["case"] = *w.witness_case == WitnessCase::TimelikeEven ? "timelike, even dimension" : "lightlike, odd dimension";
  }
  if (w.plane) {
    v["curvature"] = w.kind == CurvatureKind::Sectional ? "K" : "K_X";
    v["value"] = w.value;
    v["inequality"] = w.inequality;
    v["plane_u"] = to_json(w.plane->u);
    v["plane_v"] = to_json(w.plane->v);
    v["operator_dim"] = w.operator_dim;
    v["kernel_residual"] = w.kernel_residual;
    v["invariance_residual"] = w.invariance_residual;
    v["span_residual"] = w.span_residual;
    v["killing"] = w.killing;
  }
  if (!w.note.empty()) v["note"] = w.note;
  return v;
}

Json conformal_values(const ConformalReport& c) {
  return {{"point", to_json(c.point)},
          {"field_class", to_string(c.field_class.tag)},
          {"sigma", c.sigma},
          {"x_sigma", c.x_sigma},
          {"x_sigma_nonnegative", c.x_sigma_nonnegative},
          {"g_xx", c.g_xx},
          {"K", c.k},
          {"bound", c.bound},
          {"K >= bound", to_string(c.bound_verdict)},
          {"K >= 0", to_string(c.nonnegative_verdict)},
          {"kernel", to_json(c.kernel)},
          {"kernel_residual", c.kernel_residual},
          {"sigma_tolerance", c.sigma_tolerance}};
}

void write_output(const ManifoldSpec& m, const std::string& path, std::ostream& out) {
  const std::string doc = export_spec(m);
  if (path == "-") {
    out << doc;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << doc;
}

void add_conformal_row(Report& report, const ManifoldSpec& m, const VectorField& x, const Point& p) {
  const ConformalReport c = conformal_bound_check(m, x, p);
  auto& row = report.add("conformal", row_status(c.bound_verdict), c.tolerance);
  row.inputs = {{"field", x.name()}, {"point", to_json(p)}};
  row.values = conformal_values(c);
}

std::vector<std::string> reversed(std::vector<std::string> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

ManifoldSpec resolve_spec(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_spec_file(arg);
  if (is_catalog_name(arg)) return build_example(arg);
  throw Error("'" + arg + "' is neither a spec file nor a catalog entry");
}

Point parse_point(std::string_view text) {
  Point p;
  for (const auto& part : split(text, ',')) {
    if (part.find_first_not_of(" \t") == std::string::npos) throw Error("empty component in '" + std::string(text) + "'");
    p.push_back(parse_expression(part, {}).evaluate(Bindings{}));
  }
  return p;
}

std::vector<Point> parse_point_list(std::string_view text) {
  std::vector<Point> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_point(part));
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Curvature obstructions for Killing and homothetic fields on Lorentzian charts", "lorentz");
  app.require_subcommand(1);
  app.fallthrough();
  std::string json_path;
  app.add_option("--json", json_path, "write the machine report to a file ('-' for stdout)");

  std::string spec_arg, field_name, at_text, plane_text, path_text, mode_text = "causal", out_path, entry_name;
  int grid = 64, samples = 64, planes = 32;
  double c_value = 0.0, tol = 1e-9;

  auto with_spec = [&](CLI::App* sub) {
    sub->add_option("spec", spec_arg, "DSL file or catalog entry name")->required();
  };
  auto with_field = [&](CLI::App* sub) { sub->add_option("--field", field_name, "vector field name"); };

  auto* validate = app.add_subcommand("validate", "load a spec and check its signature");
  with_spec(validate);
  auto* curvature = app.add_subcommand("curvature", "curvature at a point");
  with_spec(curvature);
  curvature->add_option("--at", at_text, "point, e.g. 0.5,0")->required();
  curvature->add_option("--plane", plane_text, "spanning vectors u;v");
  auto* classify = app.add_subcommand("classify", "Killing / homothetic / conformal classification");
  with_spec(classify);
  with_field(classify);
  classify->add_option("--samples", samples, "sample points")->check(CLI::Range(8, 100000));
  auto* extrema = app.add_subcommand("extrema", "critical points of g(X,X)/2");
  with_spec(extrema);
  with_field(extrema);
  extrema->add_option("--grid", grid, "grid nodes per axis")->check(CLI::Range(8, 4096));
  auto* witness = app.add_subcommand("witness", "witness plane at every local minimum");
  with_spec(witness);
  with_field(witness);
  witness->add_option("--grid", grid, "grid nodes per axis")->check(CLI::Range(8, 4096));
  auto* signscan = app.add_subcommand("signscan", "curvature of planes containing X along a path");
  with_spec(signscan);
  with_field(signscan);
  signscan->add_option("--path", path_text, "a;b (sampled with --samples) or p1;p2;...;pk")->required();
  signscan->add_option("--samples", samples, "points on a two-point path")->check(CLI::Range(2, 1000000));
  signscan->add_option("--planes", planes, "planes per point")->check(CLI::Range(1, 100000));
  signscan->add_option("--tol", tol, "zero tolerance");
  auto* conformal = app.add_subcommand("conformal", "lower curvature bound for a conformal field");
  with_spec(conformal);
  with_field(conformal);
  conformal->add_option("--at", at_text, "critical point (default: first timelike local minimum)");
  auto* lift = app.add_subcommand("lift", "circle lift M x S^1 with Xbar = X + c d_theta");
  with_spec(lift);
  with_field(lift);
  lift->add_option("--c", c_value, "lift constant")->required();
  lift->add_option("--mode", mode_text, "causal or general")->check(CLI::IsMember({"causal", "general"}));
  lift->add_option("--out", out_path, "write the lifted spec ('-' for stdout)");
  auto* lorentz = app.add_subcommand("lorentzianize", "flip a Riemannian metric along a Killing field");
  with_spec(lorentz);
  with_field(lorentz);
  lorentz->add_option("--out", out_path, "write the Lorentzian spec ('-' for stdout)");
  auto* cat = app.add_subcommand("catalog", "built-in examples");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list entries");
  auto* cat_run = cat->add_subcommand("run", "check expected values (all entries when no name is given)");
  cat_run->add_option("name", entry_name, "entry name");
  auto* cat_export = cat->add_subcommand("export", "print an entry as a DSL document");
  cat_export->add_option("name", entry_name, "entry name")->required();
  for (auto* sub : {validate, curvature, classify, extrema, witness, signscan, conformal, lift, lorentz, cat, cat_list,
                    cat_run, cat_export}) {
    sub->fallthrough();
  }

  if (!args.empty() && args[0].rfind('-', 0) != 0 && !app.get_subcommand_no_throw(args[0])) {
    err << "error: unknown subcommand '" << args[0] << "'\n";
    return 1;
  }
  try {
    app.parse(reversed(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Report report;
  report.command = "lorentz";
  for (const auto& a : args) report.command += " " + a;
  bool text = true;

  try {
    std::optional<ManifoldSpec> spec;
    if (!spec_arg.empty()) {
      spec = resolve_spec(spec_arg);
      report.spec_hash = spec_fingerprint(*spec);
    }
    const auto field = [&]() -> const VectorField& { return pick_field(*spec, spec_arg, field_name); };

    if (*validate) {
      const ManifoldSpec& m = *spec;
      Json fields = Json::array();
      for (const auto& f : m.fields()) fields.push_back(f.name());
      const char* sig = m.signature() == Signature::Lorentzian   ? "lorentzian"
                        : m.signature() == Signature::Riemannian ? "riemannian"
                                                                 : "indefinite";
      auto& row = report.add("validate", RowStatus::Pass, kCausalEps);
      row.inputs = {{"spec", spec_arg}};
      row.values = {{"name", m.name()}, {"dim", m.dim()}, {"coordinates", m.coordinates()},
                    {"signature", sig}, {"fields", fields}, {"signature_samples", LoadOptions{}.signature_samples}};
    } else if (*curvature) {
      const ManifoldSpec& m = *spec;
      const Point p = parse_point(at_text);
      if (static_cast<int>(p.size()) != m.dim()) throw Error("point has " + std::to_string(p.size()) + " components");
      const PointGeometry geo = geometry_at(m, p);
      auto& row = report.add("curvature", RowStatus::Info, kCausalEps);
      row.inputs = {{"point", to_json(p)}};
      if (plane_text.empty()) {
        row.values = {{"metric", to_json(geo.metric.g)}, {"ricci", to_json(geo.ricci)}, {"scalar", geo.scalar}};
      } else {
        const auto vs = parse_point_list(plane_text);
        if (vs.size() != 2) throw Error("--plane needs exactly two vectors u;v");
        Vec u = Eigen::Map<const Vec>(vs[0].data(), static_cast<Eigen::Index>(vs[0].size()));
        Vec v = Eigen::Map<const Vec>(vs[1].data(), static_cast<Eigen::Index>(vs[1].size()));
        if (u.size() != m.dim() || v.size() != m.dim()) throw Error("plane vectors must have dim components");
        const TangentPlane plane = make_plane(geo.metric, u, v);
        const PlaneType type = plane_type(geo.metric, plane);
        row.inputs["plane"] = {to_json(u), to_json(v)};
        row.values = {{"plane_type", to_string(type)}, {"discriminant", plane.discriminant},
                      {"R(u,v,u,v)", geo.riemann_contract(u, v, u, v)}};
        row.values["K"] = type == PlaneType::Degenerate ? Json(nullptr) : Json(sectional_curvature(geo, u, v));
      }
    } else if (*classify) {
      const VectorField& x = field();
      const FieldClass c = classify_field(*spec, x, spec->sample_points(samples));
      auto& row = report.add("classify", RowStatus::Info, c.tolerance);
      row.inputs = {{"field", x.name()}, {"samples", samples}};
      row.values = class_values(c);
    } else if (*extrema || *witness) {
      const VectorField& x = field();
      ScanOptions opts;
      opts.resolution = grid;
      const ExtremaScan scan = scan_extrema(*spec, x, opts);
      auto& head = report.add("extrema", RowStatus::Info, opts.hessian_tol);
      head.inputs = {{"field", x.name()}, {"grid", grid}};
      head.values = {{"grid_shape", scan.grid_shape}, {"f_min", scan.f_min}, {"f_max", scan.f_max},
                     {"plateau", scan.plateau}, {"count", scan.records.size()}};
      if (*extrema) {
        for (const auto& r : scan.records) {
          report.add("extremum", RowStatus::Info, opts.hessian_tol).values = record_values(r);
        }
      } else {
        const FieldClass c = classify_field(*spec, x, spec->sample_points(32));
        for (const auto& r : scan.records) {
          const WitnessReport w = minimum_witness(*spec, x, r, c);
          auto& row = report.add("witness", row_status(w.verdict), w.tolerance);
          row.inputs = {{"field", x.name()}};
          row.values = witness_values(w);
        }
      }
    } else if (*signscan) {
      const VectorField& x = field();
      auto pts = parse_point_list(path_text);
      if (pts.size() < 2) throw Error("--path needs at least two points");
      if (pts.size() == 2) pts = linear_path(pts[0], pts[1], samples);
      const SignScanReport s = plane_sign_scan(*spec, x, pts, planes, tol);
      auto& row = report.add("signscan", RowStatus::Info, s.tolerance);
      row.inputs = {{"field", x.name()}, {"path", path_text}, {"points", pts.size()}, {"planes", planes}};
      row.values = {{"sign_change", s.sign_change}, {"all_zero", s.all_zero},
                    {"min_value", s.min_value},     {"max_value", s.max_value}};
      if (s.zero) {
        row.values["zero_index"] = s.zero->index;
        row.values["zero_detected"] = to_json(s.zero->detected);
        row.values["zero_interpolated"] = to_json(s.zero->interpolated);
        row.values["zero_exact"] = s.zero->exact;
      }
      Json trace = Json::array();
      for (const auto& ps : s.samples) trace.push_back({to_json(ps.point), ps.tracked});
      row.values["tracked"] = trace;
    } else if (*conformal) {
      const VectorField& x = field();
      std::optional<Point> p;
      if (!at_text.empty()) {
        p = parse_point(at_text);
      } else if (is_catalog_name(spec_arg) && catalog_entry(spec_arg).conformal_point) {
        p = catalog_entry(spec_arg).conformal_point;
      } else {
        for (const auto& r : scan_extrema(*spec, x).records) {
          if (r.kind == ExtremumKind::LocalMin && r.x_character == Causal::Timelike) {
            p = r.point;
            break;
          }
        }
        if (!p) throw Error("no local minimum with X timelike found; pass --at");
      }
      add_conformal_row(report, *spec, x, *p);
    } else if (*lift) {
      const VectorField& x = field();
      LiftReport lr;
      const ManifoldSpec lifted =
          circle_lift(*spec, x, c_value, mode_text == "causal" ? LiftMode::CausalLocus : LiftMode::General, &lr);
      auto& row = report.add("lift", RowStatus::Pass, lr.killing.tolerance);
      row.inputs = {{"field", x.name()}, {"c", c_value}, {"mode", mode_text}};
      Json locus = Json::array();
      for (const auto& q : lr.lightlike_locus) locus.push_back(to_json(q));
      row.values = {{"name", lifted.name()}, {"lifted_field", lr.field_name}, {"max_gxx", lr.max_gxx},
                    {"min_gxx", lr.min_gxx}, {"lightlike_locus", locus},
                    {"killing_residual", lr.killing.killing_residual}};
      if (!out_path.empty()) {
        write_output(lifted, out_path, out);
        text = out_path != "-";
      }
    } else if (*lorentz) {
      const VectorField& x = field();
      LorentzianizeReport lr;
      const ManifoldSpec flipped = lorentzianize(*spec, x, &lr);
      auto& row = report.add("lorentzianize", RowStatus::Pass, 1e-9);
      row.inputs = {{"field", x.name()}};
      row.values = {{"name", flipped.name()},
                    {"norm_residual", lr.norm_residual},
                    {"orthogonal_residual", lr.orthogonal_residual},
                    {"killing_residual", lr.killing.killing_residual}};
      if (!out_path.empty()) {
        write_output(flipped, out_path, out);
        text = out_path != "-";
      }
    } else if (*cat_list) {
      for (const auto& e : catalog()) {
        auto& row = report.add("entry", RowStatus::Info, 0.0);
        row.inputs = {{"name", e.name}};
        row.values = {{"description", e.description}, {"field", e.field}, {"expectations", e.expectations.size()}};
      }
    } else if (*cat_export) {
      const ManifoldSpec m = build_example(catalog_entry(entry_name).name);
      report.spec_hash = spec_fingerprint(m);
      out << export_spec(m);
      text = false;
    } else if (*cat_run) {
      std::vector<const CatalogEntry*> entries;
      if (entry_name.empty()) {
        for (const auto& e : catalog()) entries.push_back(&e);
      } else {
        entries.push_back(&catalog_entry(entry_name));
        report.spec_hash = spec_fingerprint(entries.front()->build());
      }
      for (const CatalogEntry* e : entries) {
        for (const auto& r : run_expectations(*e)) {
          auto& row = report.add("expect", row_status(r.verdict), r.tolerance);
          row.inputs = {{"entry", e->name}, {"quantity", r.quantity}};
          row.values = {{"computed", r.computed}, {"expected", r.expected},
                        {"comparison", to_string(r.comparison)}, {"source", to_string(r.source)}};
          if (!r.note.empty()) row.values["note"] = r.note;
        }
        if (e->conformal_point) {
          const ManifoldSpec m = e->build();
          add_conformal_row(report, m, m.field(e->field), *e->conformal_point);
          report.results.back().inputs["entry"] = e->name;
        }
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (!json_path.empty()) {
    const std::string doc = report.to_json().dump(2) + "\n";
    if (json_path == "-") {
      out << doc;
      text = false;
    } else {
      std::ofstream f(json_path);
      if (!f) {
        err << "error: cannot write '" << json_path << "'\n";
        return 1;
      }
      f << doc;
    }
  }
  if (text) report.write_text(out);
  return report.exit_code();
}

}  // namespace lorentz::cli
