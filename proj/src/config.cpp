#include "avm/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "avm/problems.hpp"

namespace avm {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto end = pos == std::string_view::npos ? s.size() : pos;
    out.push_back(trim(s.substr(start, end - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(out))
    throw ConfigError(key, "malformed number '" + v + "'");
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError(key, "malformed integer '" + v + "'");
  return out;
}

int to_positive_int(const std::string& key, const std::string& v) {
  const long n = to_long(key, v);
  if (n < 1 || n > 100000) throw ConfigError(key, "expected a positive cell count, got '" + v + "'");
  return static_cast<int>(n);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

CutRequest to_cut(const std::string& key, const std::string& v) {
  const auto colon = v.find(':');
  CutRequest c;
  std::string where = v;
  if (colon != std::string::npos) {
    where = trim(std::string_view(v).substr(0, colon));
    c.variable = trim(std::string_view(v).substr(colon + 1));
    if (c.variable.empty()) throw ConfigError(key, "empty cut variable in '" + v + "'");
  }
  if (where == "diagonal") {
    c.kind = CutRequest::Kind::diagonal;
  } else if (where.size() > 2 && (where[0] == 'x' || where[0] == 'y') && where[1] == '=') {
    c.kind = where[0] == 'x' ? CutRequest::Kind::x_line : CutRequest::Kind::y_line;
    c.coordinate = to_double(key, where.substr(2));
  } else {
    throw ConfigError(key, "malformed cut '" + v + "' (expected diagonal, x=<value> or y=<value>)");
  }
  return c;
}

const std::string* find(const KeyValues& kv, const std::string& key) {
  const std::string* out = nullptr;
  for (const auto& [k, v] : kv)
    if (k == key) out = &v;
  return out;
}

}  // namespace

std::string CutRequest::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::diagonal: os << "diagonal"; break;
    case Kind::x_line: os << "x" << coordinate; break;
    case Kind::y_line: os << "y" << coordinate; break;
  }
  os << "-" << variable;
  return os.str();
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "problem", "solver",  "mode", "mesh",   "cfl",    "t_final",   "divclean",
      "assembly", "output", "snapshots", "cuts", "meshes", "max_steps", "quiet"};
  return keys;
}

KeyValues parse_config_text(std::string_view text, const std::string& source) {
  KeyValues out;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError("", where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw ConfigError("", where + ": missing key");
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(key, where + ": unknown key");
    out.emplace_back(key, value);
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str(), path);
}

RunConfig resolve_config(const KeyValues& file, const KeyValues& flags) {
  const auto& keys = config_keys();
  for (const auto* kv : {&file, &flags})
    for (const auto& [k, v] : *kv)
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError(k, "unknown key");

  KeyValues merged = file;
  if (const char* env = std::getenv("AVM2D_OUTPUT_DIR"); env && *env) merged.emplace_back("output", env);
  merged.insert(merged.end(), flags.begin(), flags.end());

  std::vector<std::string> missing;
  for (const char* req : {"problem", "solver"})
    if (!find(merged, req)) missing.push_back(std::string("--") + req);
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError("", "missing required flags: " + list);
  }

  RunConfig c;
  c.problem = *find(merged, "problem");
  const auto& spec = problems::find_problem(c.problem);
  c.solver = *find(merged, "solver");
  try {
    c.solver = BasisFunction::parse(c.solver).name();
  } catch (const Error& e) {
    throw ConfigError("solver", e.what());
  }

  if (const auto* v = find(merged, "mode")) {
    if (*v == "1d") c.mode = SolverMode::one_d;
    else if (*v == "2d") c.mode = SolverMode::two_d;
    else throw ConfigError("mode", "expected 1d or 2d, got '" + *v + "'");
  }
  if (const auto* v = find(merged, "mesh")) {
    const auto x = v->find('x');
    if (x == std::string::npos) {
      c.nx = c.ny = to_positive_int("mesh", *v);
    } else {
      c.nx = to_positive_int("mesh", v->substr(0, x));
      c.ny = to_positive_int("mesh", v->substr(x + 1));
    }
  }
  if (const auto* v = find(merged, "cfl")) c.cfl = to_double("cfl", *v);
  validate_cfl(c.mode, c.cfl);
  if (const auto* v = find(merged, "t_final")) {
    c.t_final = to_double("t_final", *v);
    if (*c.t_final < 0) throw ConfigError("t_final", "final time must be nonnegative");
  }
  if (const auto* v = find(merged, "divclean")) {
    if (*v == "powell") c.divclean = DivClean::powell;
    else if (*v == "none") c.divclean = DivClean::none;
    else throw ConfigError("divclean", "expected powell or none, got '" + *v + "'");
    if (c.divclean == DivClean::powell && !spec.magnetic)
      throw ConfigError("divclean", "Powell cleaning needs a magnetic problem");
  }
  if (const auto* v = find(merged, "assembly")) {
    if (*v == "simpson") c.assembly = Assembly::simpson;
    else if (*v == "speed-weighted") c.assembly = Assembly::speed_weighted;
    else throw ConfigError("assembly", "expected simpson or speed-weighted, got '" + *v + "'");
  }
  if (const auto* v = find(merged, "output")) {
    if (v->empty()) throw ConfigError("output", "empty output directory");
    c.output_dir = *v;
  }
  if (const auto* v = find(merged, "snapshots"))
    for (const auto& s : split(*v, ',')) {
      const double t = to_double("snapshots", s);
      if (t < 0) throw ConfigError("snapshots", "snapshot times must be nonnegative");
      c.snapshot_times.push_back(t);
    }
  if (const auto* v = find(merged, "cuts"))
    for (const auto& s : split(*v, ',')) c.cuts.push_back(to_cut("cuts", s));
  if (const auto* v = find(merged, "meshes")) {
    if (!spec.has_exact) throw ConfigError("meshes", "mesh sweeps need a problem with an exact solution");
    for (const auto& s : split(*v, ',')) c.meshes.push_back(to_positive_int("meshes", s));
  }
  if (const auto* v = find(merged, "max_steps")) {
    c.max_steps = to_long("max_steps", *v);
    if (c.max_steps < 1) throw ConfigError("max_steps", "must be positive");
  }
  if (const auto* v = find(merged, "quiet")) c.quiet = to_bool("quiet", *v);
  return c;
}

namespace {

const char* describe(const std::string& key) {
  if (key == "problem") return "accuracy | orszag-tang | rotor | riemann2d | explosion-b0 | explosion-b5 | explosion-b50";
  if (key == "solver") return "hll | int-N | pade-M-K[-dN]";
  if (key == "mode") return "1d | 2d (default 2d)";
  if (key == "mesh") return "NxM or N (default: problem mesh)";
  if (key == "cfl") return "CFL number, (0, 1] in 2d and (0, 0.5] in 1d (default 0.5)";
  if (key == "t_final") return "final time (default: problem time)";
  if (key == "divclean") return "powell | none (default: powell for MHD)";
  if (key == "assembly") return "simpson | speed-weighted (default simpson)";
  if (key == "output") return "output directory (default ., env AVM2D_OUTPUT_DIR)";
  if (key == "snapshots") return "comma-separated snapshot times";
  if (key == "cuts") return "comma-separated cuts: diagonal:VAR, x=X:VAR, y=Y:VAR";
  if (key == "meshes") return "comma-separated mesh sizes for an error table";
  if (key == "max_steps") return "step limit";
  if (key == "quiet") return "true | false";
  return "";
}

struct FlagParser {
  CLI::App app{"Finite-volume solver for 2D Euler and ideal MHD with AVM fluxes", "avm2d"};
  std::string config_path;
  std::vector<std::string> slots = std::vector<std::string>(config_keys().size());

  FlagParser() {
    app.add_option("--config", config_path, "flat key = value configuration file");
    for (std::size_t i = 0; i < config_keys().size(); ++i)
      app.add_option("--" + config_keys()[i], slots[i], describe(config_keys()[i]));
  }
};

}  // namespace

std::string config_usage() { return FlagParser().app.help(); }

RunConfig parse_config(const std::vector<std::string>& args) {
  FlagParser p;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    p.app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError("", e.what());
  }
  KeyValues flags;
  for (std::size_t i = 0; i < config_keys().size(); ++i)
    if (p.app.get_option("--" + config_keys()[i])->count() > 0) flags.emplace_back(config_keys()[i], p.slots[i]);
  const KeyValues file = p.config_path.empty() ? KeyValues{} : read_config_file(p.config_path);
  return resolve_config(file, flags);
}

std::string to_string(SolverMode mode) { return mode == SolverMode::two_d ? "2d" : "1d"; }

std::string to_string(Assembly assembly) {
  return assembly == Assembly::simpson ? "simpson" : "speed-weighted";
}

}  // namespace avm
