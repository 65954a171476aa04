#include "avm/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>

#include <json.hpp>

#include "avm/io.hpp"
#include "avm/problems.hpp"

namespace avm {

namespace {

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string cut_kind(const CutRequest& c) {
  switch (c.kind) {
    case CutRequest::Kind::diagonal: return "diagonal";
    case CutRequest::Kind::x_line: return "x";
    case CutRequest::Kind::y_line: return "y";
  }
  return "diagonal";
}

template <typename System>
RunReport run_one(const System& sys, const problems::ProblemSpec& spec, const RunConfig& c, int nx, int ny,
                  std::ostream& log) {
  namespace fs = std::filesystem;
  RunReport rep;
  rep.label = run_label(c, nx, ny);
  rep.nx = nx;
  rep.ny = ny;

  // Validate cut variables before spending time on the run.
  {
    const typename System::State probe = problems::make_field<System>(spec, 1, 1)(0, 0);
    for (const auto& cut : c.cuts) derived_value(sys, probe, cut.variable);
  }

  SchemeOptions opt;
  opt.basis = c.basis();
  opt.mode = c.mode;
  opt.assembly = c.assembly;
  opt.cfl = c.cfl;
  opt.powell = System::kMagnetic && c.divclean.value_or(DivClean::powell) == DivClean::powell;
  Solver<System> solver(sys, opt);

  auto field = problems::make_field<System>(spec, nx, ny);
  const double t_final = c.t_final.value_or(spec.t_final);
  const fs::path dir(c.output_dir);
  auto path = [&](const std::string& suffix) {
    const std::string p = (dir / (rep.label + suffix)).string();
    rep.files.push_back(fs::path(p).filename().string());
    return p;
  };

  auto write_cuts = [&](const Field<System>& f, double t, const std::string& tag) {
    for (const auto& cut : c.cuts) {
      const auto pts = field_cut(sys, f, cut_kind(cut), cut.coordinate, cut.variable);
      write_cut(pts, cut.variable, t, path("-cut-" + cut.name() + tag + ".dat"));
    }
  };

  DiagnosticsWriter diag(path("-diagnostics.tsv"));
  typename Solver<System>::RunOptions ro;
  ro.t_final = t_final;
  ro.snapshot_times = c.snapshot_times;
  ro.max_steps = c.max_steps;
  ro.on_snapshot = [&](const Field<System>& f, double t) {
    write_snapshot(sys, f, t, path("-t" + time_tag(t) + ".dat"));
    write_cuts(f, t, "-t" + time_tag(t));
  };
  ro.on_step = [&](const StepDiagnostics& d) { diag.write(d); };

  const auto sum = solver.run(field, ro);
  write_snapshot(sys, field, sum.time, path("-final.dat"));
  write_cuts(field, sum.time, "");

  rep.steps = sum.steps;
  rep.time = sum.time;
  rep.fallbacks = sum.fallbacks;
  rep.min_density = sum.min_density;
  rep.min_pressure = sum.min_pressure;
  if constexpr (!System::kMagnetic) {
    if (spec.has_exact)
      rep.l1_error = problems::l1_error(field, [&](double x, double y) {
        return problems::exact_accuracy(x, y, sum.time);
      });
  }

  nlohmann::ordered_json meta;
  meta["label"] = rep.label;
  meta["problem"] = spec.name;
  meta["solver"] = c.solver;
  meta["mode"] = to_string(c.mode);
  meta["assembly"] = to_string(c.assembly);
  meta["mesh"] = {nx, ny};
  meta["cfl"] = c.cfl;
  meta["gamma"] = sys.gamma();
  meta["divclean"] = opt.powell ? "powell" : "none";
  meta["t_final"] = t_final;
  meta["snapshots"] = c.snapshot_times;
  meta["steps"] = rep.steps;
  meta["fallbacks"] = rep.fallbacks;
  meta["min_density"] = rep.min_density;
  meta["min_pressure"] = rep.min_pressure;
  if (rep.l1_error) meta["l1_error"] = *rep.l1_error;
  meta["files"] = rep.files;
  meta["created"] = utc_timestamp();
  write_text_file((dir / (rep.label + ".json")).string(), meta.dump(2) + "\n");
  rep.files.push_back(rep.label + ".json");

  if (!c.quiet) {
    log << rep.label << ": " << rep.steps << " steps to t=" << rep.time << ", min rho " << rep.min_density
        << ", min P " << rep.min_pressure << ", fallbacks " << rep.fallbacks;
    if (rep.l1_error) log << ", L1 " << *rep.l1_error;
    log << "\n";
  }
  return rep;
}

}  // namespace

std::string run_label(const RunConfig& c, int nx, int ny) {
  return c.problem + "-" + c.solver + "-" + to_string(c.mode) + "-" + std::to_string(nx) + "x" +
         std::to_string(ny);
}

std::vector<RunReport> run_from_config(const RunConfig& c, std::ostream& log) {
  const auto& spec = problems::find_problem(c.problem);
  ensure_directory(c.output_dir);

  std::vector<std::pair<int, int>> meshes;
  if (c.meshes.empty())
    meshes.emplace_back(c.nx > 0 ? c.nx : spec.domain.nx, c.ny > 0 ? c.ny : spec.domain.ny);
  for (int n : c.meshes) meshes.emplace_back(n, n);

  std::vector<RunReport> reports;
  for (const auto& [nx, ny] : meshes) {
    if (spec.magnetic)
      reports.push_back(run_one(Mhd<double>(spec.gamma), spec, c, nx, ny, log));
    else
      reports.push_back(run_one(Euler<double>(spec.gamma), spec, c, nx, ny, log));
  }

  if (!c.meshes.empty()) {
    std::vector<ErrorRow> rows;
    const std::string scheme = c.solver + "-" + to_string(c.mode);
    for (const auto& r : reports) rows.push_back({scheme, r.nx, r.l1_error.value_or(0.0)});
    const std::string name = c.problem + "-" + scheme + "-errors.tsv";
    write_error_table(rows, (std::filesystem::path(c.output_dir) / name).string());
    reports.back().files.push_back(name);
  }
  return reports;
}

}  // namespace avm
