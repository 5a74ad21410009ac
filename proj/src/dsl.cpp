#include "lorentz/dsl.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace lorentz {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double parse_real(const std::string& text, std::size_t line) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw SpecError("expected a decimal number, got '" + text + "'", line);
  }
  return v;
}

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

struct Section {
  std::string name;
  std::size_t line;
  std::vector<Entry> entries;
};

std::string unquote(const std::string& v, std::size_t line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  throw SpecError("expression values must be double-quoted", line);
}

std::vector<Section> tokenize(std::string_view doc) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= doc.size()) {
    std::size_t end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    ++line_no;
    std::string line(doc.substr(start, end - start));
    start = end + 1;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) {
      if (end == doc.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecError("unterminated section header", line_no);
      sections.push_back({trim(std::string_view(line).substr(1, line.size() - 2)), line_no, {}});
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw SpecError("expected key = value", line_no);
      if (sections.empty()) throw SpecError("entry outside of any section", line_no);
      sections.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
    }
    if (end == doc.size()) break;
  }
  return sections;
}

}  // namespace

ManifoldSpec load_spec(std::string_view document, const LoadOptions& options) {
  const auto sections = tokenize(document);
  ManifoldDefinition def;

  const Section* manifold = nullptr;
  for (const auto& s : sections) {
    if (s.name == "manifold") {
      if (manifold) throw SpecError("duplicate [manifold] section", s.line);
      manifold = &s;
    }
  }
  if (!manifold) throw SpecError("missing [manifold] section");

  int dim = -1;
  std::vector<std::string> coords;
  std::map<std::string, std::pair<double, double>> ranges, samples;
  std::vector<std::string> periodic;
  std::map<std::string, std::size_t> range_lines;
  for (const auto& e : manifold->entries) {
    if (e.key == "name") {
      def.name = e.value;
    } else if (e.key == "dim") {
      dim = static_cast<int>(parse_real(e.value, e.line));
      if (dim < 2 || std::to_string(dim) != e.value) throw SpecError("dim must be an integer >= 2", e.line);
    } else if (e.key == "coords") {
      coords = split(e.value, ',');
    } else if (e.key == "periodic") {
      if (!e.value.empty()) periodic = split(e.value, ',');
    } else if (e.key == "signature") {
      if (e.value == "lorentzian") {
        def.signature = Signature::Lorentzian;
      } else if (e.value == "riemannian") {
        def.signature = Signature::Riemannian;
      } else if (e.value == "indefinite") {
        def.signature = Signature::Indefinite;
      } else {
        throw SpecError("unknown signature '" + e.value + "'", e.line);
      }
    } else if (e.key.rfind("range.", 0) == 0 || e.key.rfind("sample.", 0) == 0) {
      const bool is_range = e.key[0] == 'r';
      const std::string coord = e.key.substr(is_range ? 6 : 7);
      const auto parts = split(e.value, ',');
      if (parts.size() != 2) throw SpecError("expected 'lo, hi'", e.line);
      auto& target = is_range ? ranges : samples;
      target[coord] = {parse_real(parts[0], e.line), parse_real(parts[1], e.line)};
      range_lines[coord] = e.line;
    } else {
      throw SpecError("unknown key '" + e.key + "' in [manifold]", e.line);
    }
  }
  if (coords.empty()) throw SpecError("missing coords", manifold->line);
  if (dim == -1) dim = static_cast<int>(coords.size());
  if (static_cast<int>(coords.size()) != dim) {
    throw SpecError("dim does not match the number of coordinates", manifold->line);
  }
  for (const auto& [name, r] : ranges) {
    if (std::find(coords.begin(), coords.end(), name) == coords.end()) {
      throw SpecError("range for unknown coordinate '" + name + "'", range_lines[name]);
    }
  }
  for (const auto& p : periodic) {
    if (std::find(coords.begin(), coords.end(), p) == coords.end()) {
      throw SpecError("periodic list names unknown coordinate '" + p + "'", manifold->line);
    }
  }
  for (const auto& c : coords) {
    Axis a;
    a.name = c;
    auto r = ranges.find(c);
    if (r == ranges.end()) throw SpecError("missing range." + c, manifold->line);
    a.lo = r->second.first;
    a.hi = r->second.second;
    a.periodic = std::find(periodic.begin(), periodic.end(), c) != periodic.end();
    if (auto s = samples.find(c); s != samples.end()) a.sample = s->second;
    def.axes.push_back(a);
  }

  for (const auto& s : sections) {
    if (s.name == "params") {
      for (const auto& e : s.entries) def.params.emplace_back(e.key, parse_real(e.value, e.line));
    }
  }

  std::set<std::string> declared(coords.begin(), coords.end());
  for (const auto& p : def.params) {
    if (declared.count(p.first)) throw SpecError("parameter '" + p.first + "' shadows a name");
    declared.insert(p.first);
  }
  auto expr = [&](const Entry& e) {
    try {
      return parse_expression(unquote(e.value, e.line), declared);
    } catch (const ParseError& err) {
      throw SpecError(std::string("in '") + e.key + "': " + err.what(), e.line);
    } catch (const UndeclaredName& err) {
      throw SpecError(std::string("in '") + e.key + "': " + err.what(), e.line);
    }
  };
  auto coord_index = [&](const std::string& token, std::size_t line) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == token) return static_cast<int>(i);
    }
    char* end = nullptr;
    const long v = std::strtol(token.c_str(), &end, 10);
    if (!token.empty() && end == token.c_str() + token.size() && v >= 0 && v < dim) {
      return static_cast<int>(v);
    }
    throw SpecError("unknown index '" + token + "'", line);
  };

  def.metric.assign(static_cast<std::size_t>(dim), std::vector<std::optional<Expr>>(static_cast<std::size_t>(dim)));
  bool saw_metric = false;
  for (const auto& s : sections) {
    if (s.name == "manifold" || s.name == "params") continue;
    if (s.name == "metric") {
      saw_metric = true;
      for (const auto& e : s.entries) {
        const auto parts = split(e.key, '.');
        if (parts.size() != 3 || parts[0] != "g") throw SpecError("metric keys look like g.i.j", e.line);
        const int i = coord_index(parts[1], e.line), j = coord_index(parts[2], e.line);
        auto& slot = def.metric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (slot) throw SpecError("duplicate metric entry " + e.key, e.line);
        slot = expr(e);
      }
    } else if (s.name.rfind("field.", 0) == 0) {
      std::vector<Expr> comps(static_cast<std::size_t>(dim), Expr(0.0));
      for (const auto& e : s.entries) comps[static_cast<std::size_t>(coord_index(e.key, e.line))] = expr(e);
      def.fields.emplace_back(s.name.substr(6), std::move(comps));
    } else if (s.name.rfind("scalar.", 0) == 0) {
      if (s.entries.size() != 1 || s.entries[0].key != "value") {
        throw SpecError("scalar sections hold a single 'value' entry", s.line);
      }
      def.scalars.push_back({s.name.substr(7), expr(s.entries[0])});
    } else {
      throw SpecError("unknown section [" + s.name + "]", s.line);
    }
  }
  if (!saw_metric) throw SpecError("missing [metric] section");
  return ManifoldSpec(std::move(def), options);
}

ManifoldSpec load_spec_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_spec(buf.str(), options);
}

namespace {

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string export_spec(const ManifoldSpec& spec) {
  std::ostringstream os;
  const auto& coords = spec.coordinates();
  os << "[manifold]\n";
  if (!spec.name().empty()) os << "name = " << spec.name() << "\n";
  os << "dim = " << spec.dim() << "\n";
  os << "coords = ";
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? ", " : "") << coords[i];
  os << "\n";
  std::vector<std::string> periodic;
  for (const auto& a : spec.axes()) {
    os << "range." << a.name << " = " << format_real(a.lo) << ", " << format_real(a.hi) << "\n";
    if (a.sample) {
      os << "sample." << a.name << " = " << format_real(a.sample->first) << ", "
         << format_real(a.sample->second) << "\n";
    }
    if (a.periodic) periodic.push_back(a.name);
  }
  if (!periodic.empty()) {
    os << "periodic = ";
    for (std::size_t i = 0; i < periodic.size(); ++i) os << (i ? ", " : "") << periodic[i];
    os << "\n";
  }
  os << "signature = "
     << (spec.signature() == Signature::Lorentzian   ? "lorentzian"
         : spec.signature() == Signature::Riemannian ? "riemannian"
                                                     : "indefinite")
     << "\n";
  if (!spec.params().empty()) {
    os << "\n[params]\n";
    for (const auto& [k, v] : spec.params()) os << k << " = " << format_real(v) << "\n";
  }
  os << "\n[metric]\n";
  for (int i = 0; i < spec.dim(); ++i) {
    for (int j = i; j < spec.dim(); ++j) {
      if (spec.metric(i, j).is_zero()) continue;
      os << "g." << coords[static_cast<std::size_t>(i)] << "." << coords[static_cast<std::size_t>(j)]
         << " = \"" << spec.metric(i, j).str() << "\"\n";
    }
  }
  for (const auto& f : spec.fields()) {
    os << "\n[field." << f.name() << "]\n";
    for (int i = 0; i < f.dim(); ++i) {
      if (f.component(i).is_zero()) continue;
      os << coords[static_cast<std::size_t>(i)] << " = \"" << f.component(i).str() << "\"\n";
    }
  }
  for (const auto& s : spec.scalars()) {
    os << "\n[scalar." << s.name << "]\nvalue = \"" << s.value.str() << "\"\n";
  }
  return os.str();
}

}  // namespace lorentz
