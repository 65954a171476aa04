#include "avm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

namespace avm {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

bool is_magnetic_name(std::string_view n) {
  return n == "rho_vz" || n == "Bx" || n == "By" || n == "Bz" || n == "vz" || n == "pmag";
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw IoError("snapshot", "malformed number '" + std::string(s) + "' in snapshot");
  return v;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

}  // namespace

template <typename System>
double derived_value(const System& sys, const typename System::State& u, std::string_view name) {
  if (is_magnetic_name(name) && !System::kMagnetic)
    throw ConfigError("cuts", "variable '" + std::string(name) + "' needs a magnetic problem");
  const double rho = static_cast<double>(u(0));
  if (name == "rho") return rho;
  if (name == "rho_vx") return u(1);
  if (name == "rho_vy") return u(2);
  if (name == "vx") return u(1) / rho;
  if (name == "vy") return u(2) / rho;
  if (name == "E") return u(System::kVars - 1);
  if (name == "P") return sys.pressure(u);
  if constexpr (System::kMagnetic) {
    if (name == "rho_vz") return u(3);
    if (name == "vz") return u(3) / rho;
    if (name == "Bx") return u(4);
    if (name == "By") return u(5);
    if (name == "Bz") return u(6);
    if (name == "pmag") return System::magnetic_pressure(u);
    if (name == "mach") {
      const double v = std::sqrt(u(1) * u(1) + u(2) * u(2) + u(3) * u(3)) / rho;
      return v / sys.sound_speed(u);
    }
  } else {
    if (name == "mach") return std::hypot(u(1), u(2)) / rho / sys.sound_speed(u);
  }
  throw ConfigError("cuts", "unknown variable '" + std::string(name) + "'");
}

template <typename System>
std::vector<std::string> snapshot_columns() {
  if constexpr (System::kMagnetic)
    return {"i", "j", "x", "y", "rho", "rho_vx", "rho_vy", "rho_vz", "Bx", "By", "Bz", "E", "P", "pmag", "mach"};
  else
    return {"i", "j", "x", "y", "rho", "rho_vx", "rho_vy", "E", "P"};
}

template <typename System>
std::string format_snapshot(const System& sys, const Field<System>& f, double time) {
  std::string out;
  out.reserve(static_cast<std::size_t>(f.nx()) * f.ny() * (System::kMagnetic ? 300 : 180));
  out += "# nx=" + std::to_string(f.nx()) + " ny=" + std::to_string(f.ny()) + " dx=" + num(f.dx()) +
         " dy=" + num(f.dy()) + " gamma=" + num(sys.gamma()) + " time=" + num(time) + "\n#";
  for (const auto& c : snapshot_columns<System>()) out += " " + c;
  out += "\n";
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const auto& u = f(i, j);
      out += std::to_string(i) + " " + std::to_string(j) + " " + num(f.x(i)) + " " + num(f.y(j));
      for (int k = 0; k < System::kVars; ++k) out += " " + num(u(k));
      out += " " + num(sys.pressure(u));
      if constexpr (System::kMagnetic)
        out += " " + num(System::magnetic_pressure(u)) + " " + num(derived_value(sys, u, "mach"));
      out += "\n";
    }
  return out;
}

template <typename System>
void write_snapshot(const System& sys, const Field<System>& f, double time, const std::string& path) {
  write_text_file(path, format_snapshot(sys, f, time));
}

int Snapshot::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw InvalidParameter("snapshot has no column '" + std::string(name) + "'");
}

Snapshot parse_snapshot(std::string_view text) {
  Snapshot s;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      for (auto t : tokens(line.substr(1))) {
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw IoError("snapshot", "malformed snapshot header");
        const auto key = t.substr(0, eq);
        const double v = parse_number(t.substr(eq + 1));
        if (key == "nx") s.nx = static_cast<int>(v);
        else if (key == "ny") s.ny = static_cast<int>(v);
        else if (key == "dx") s.dx = v;
        else if (key == "dy") s.dy = v;
        else if (key == "gamma") s.gamma = v;
        else if (key == "time") s.time = v;
      }
      continue;
    }
    if (line_no == 2) {
      for (auto t : tokens(line.substr(1))) s.columns.emplace_back(t);
      continue;
    }
    std::vector<double> row;
    for (auto t : tokens(line)) row.push_back(parse_number(t));
    if (row.size() != s.columns.size())
      throw IoError("snapshot", "row " + std::to_string(line_no) + " has the wrong column count");
    s.rows.push_back(std::move(row));
  }
  if (s.rows.size() != static_cast<std::size_t>(s.nx) * s.ny)
    throw IoError("snapshot", "row count does not match nx * ny");
  return s;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open snapshot");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_snapshot(os.str());
}

template <typename System>
void load_snapshot(const Snapshot& s, Field<System>& f) {
  if (s.nx != f.nx() || s.ny != f.ny()) throw InvalidParameter("snapshot size does not match the field");
  const int ci = s.column("i");
  const int cj = s.column("j");
  const int c0 = s.column("rho");
  for (const auto& row : s.rows) {
    auto& u = f(static_cast<int>(row[ci]), static_cast<int>(row[cj]));
    for (int k = 0; k < System::kVars; ++k) u(k) = row[c0 + k];
  }
  f.fill_ghosts();
}

template <typename System>
std::vector<problems::CutPoint> field_cut(const System& sys, const Field<System>& f,
                                          const std::string& kind, double coordinate,
                                          const std::string& variable) {
  auto value = [&](const typename System::State& u) { return derived_value(sys, u, variable); };
  if (kind == "diagonal") return problems::diagonal_cut(f, value);
  std::vector<problems::CutPoint> out;
  if (kind == "x") {
    const int i = std::clamp(static_cast<int>(std::floor((coordinate - f.geometry().x0) / f.dx())), 0, f.nx() - 1);
    for (int j = 0; j < f.ny(); ++j) out.push_back({f.y(j) - f.y(0), f.x(i), f.y(j), value(f(i, j))});
  } else if (kind == "y") {
    const int j = std::clamp(static_cast<int>(std::floor((coordinate - f.geometry().y0) / f.dy())), 0, f.ny() - 1);
    for (int i = 0; i < f.nx(); ++i) out.push_back({f.x(i) - f.x(0), f.x(i), f.y(j), value(f(i, j))});
  } else {
    throw InvalidParameter("unknown cut kind '" + kind + "'");
  }
  return out;
}

void write_cut(const std::vector<problems::CutPoint>& points, const std::string& variable, double time,
               const std::string& path) {
  std::string out = "# time=" + num(time) + "\n# s x y " + variable + "\n";
  for (const auto& p : points) out += num(p.s) + " " + num(p.x) + " " + num(p.y) + " " + num(p.value) + "\n";
  write_text_file(path, out);
}

std::string format_error_table(const std::vector<ErrorRow>& rows) {
  std::map<std::string, std::map<int, double>> by_scheme;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    auto& meshes = by_scheme[r.scheme];
    if (meshes.empty()) order.push_back(r.scheme);
    if (!meshes.emplace(r.mesh, r.error).second)
      throw InvalidParameter("duplicate error-table entry for " + r.scheme + " on mesh " + std::to_string(r.mesh));
  }
  std::string out = "# scheme mesh L1_error rate\n";
  for (const auto& scheme : order) {
    const auto& meshes = by_scheme[scheme];
    for (const auto& [mesh, err] : meshes) {
      std::string rate = "-";
      if (mesh % 2 == 0) {
        const auto coarse = meshes.find(mesh / 2);
        if (coarse != meshes.end() && coarse->second > 0 && err > 0) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", std::log2(coarse->second / err));
          rate = buf;
        }
      }
      out += scheme + " " + std::to_string(mesh) + "x" + std::to_string(mesh) + " " + sci(err) + " " + rate + "\n";
    }
  }
  return out;
}

void write_error_table(const std::vector<ErrorRow>& rows, const std::string& path) {
  write_text_file(path, format_error_table(rows));
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw IoError(path, "cannot open diagnostics file");
  out_ << "# step time dt max_speed min_rho min_P div_l1 fallbacks\n";
}

void DiagnosticsWriter::write(const StepDiagnostics& d) {
  out_ << d.step << " " << num(d.time) << " " << num(d.dt) << " " << num(d.max_speed) << " "
       << num(d.min_density) << " " << num(d.min_pressure) << " " << num(d.divergence_l1) << " "
       << d.fallbacks << "\n";
  if (!out_) throw IoError(path_, "write failed");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << text;
  if (!out) throw IoError(path, "write failed");
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError(path, "cannot create directory: " + ec.message());
}

#define AVM_IO_INSTANTIATE(SYS)                                                                      \
  template double derived_value<SYS>(const SYS&, const SYS::State&, std::string_view);              \
  template std::vector<std::string> snapshot_columns<SYS>();                                         \
  template std::string format_snapshot<SYS>(const SYS&, const Field<SYS>&, double);                  \
  template void write_snapshot<SYS>(const SYS&, const Field<SYS>&, double, const std::string&);      \
  template void load_snapshot<SYS>(const Snapshot&, Field<SYS>&);                                    \
  template std::vector<problems::CutPoint> field_cut<SYS>(const SYS&, const Field<SYS>&,             \
                                                          const std::string&, double, const std::string&);

AVM_IO_INSTANTIATE(Euler<double>)
AVM_IO_INSTANTIATE(Mhd<double>)

}  // namespace avm
