#include "fmhd/harness/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fmhd/errors.hpp"
#include "fmhd/harness/initial_data.hpp"
#include "fmhd/harness/io.hpp"

namespace fmhd {

namespace {

std::string g_label(const SystemConfig& c) { return c.g ? c.g->name() : "none"; }

void log_line(const RunOptions& o, const std::string& text) {
  if (o.log) *o.log << text << '\n';
}

RunOutcome execute(const RunSpec& spec, const Model<double>& model, SimState<double> initial, const RunOptions& options) {
  RunOutcome out;
  auto& sum = out.summary;
  sum.variant = variant_name(spec.system.variant);
  sum.alpha = spec.system.alpha;
  sum.beta = spec.system.beta;
  sum.gamma = spec.system.gamma;
  sum.g = g_label(spec.system);
  sum.covered = spec.system.covered_regime();
  sum.exponents = spec.sobolev_exponents;
  sum.peak_omega_sobolev.assign(spec.sobolev_exponents.size(), 0.0);
  sum.peak_b_sobolev.assign(spec.sobolev_exponents.size(), 0.0);

  std::optional<TimeseriesWriter> writer;
  if (options.write_outputs) {
    std::filesystem::create_directories(spec.output_dir);
    std::ofstream(spec.output_dir / "config.txt") << dump_config(spec);
    writer.emplace(spec.output_dir / "timeseries.csv", spec.sobolev_exponents);
  }

  long sequence = 0;
  const DiagnosticSink<double> sink = [&](const SimState<double>& s, const StepData& d) {
    auto rec = make_record(s, model, d, spec.sobolev_exponents, sequence++);
    if (writer) writer->write(rec);
    sum.peak_omega_linf = std::max(sum.peak_omega_linf, rec.linf.omega);
    for (std::size_t i = 0; i < rec.sobolev.size(); ++i) {
      sum.peak_omega_sobolev[i] = std::max(sum.peak_omega_sobolev[i], rec.sobolev[i].omega);
      sum.peak_b_sobolev[i] = std::max(sum.peak_b_sobolev[i], rec.sobolev[i].b);
    }
    const auto& r = rec.residuals;
    sum.max_cancellation_residual = std::max({sum.max_cancellation_residual, r.lorentz, r.transport, r.helmholtz});
    if (!out.records.empty()) {
      const double e0 = std::max(out.records.front().energy_total, 1e-300);
      sum.max_energy_rise = std::max(sum.max_energy_rise, (rec.energy_total - out.records.back().energy_total) / e0);
    }
    out.records.push_back(std::move(rec));
  };

  auto report = run(initial, model, spec.stepper, sink, spec.diagnostics_every);
  sum.blowup = report.blowup;
  sum.blowup_time = report.blowup ? report.blowup_time : 0.0;
  sum.blowup_reason = report.blowup_reason;
  sum.completed = !report.blowup;
  sum.final_time = report.final_state.t;
  sum.steps = report.steps;
  sum.wall_seconds = report.wall_seconds;
  sum.energy_balance = energy_balance_drift(std::span<const DiagnosticsRecord>(out.records));
  out.final_state = std::move(report.final_state);

  if (options.write_outputs) {
    if (spec.write_checkpoint && !sum.blowup)
      write_checkpoint(spec.output_dir / "final.ckpt", out.final_state, spec.system);
    write_summary(sum, spec.output_dir / "summary.txt");
  }
  std::ostringstream msg;
  msg << sum.variant << ": t = " << sum.final_time << " after " << sum.steps << " steps, "
      << (sum.blowup ? "BLOW-UP (" + sum.blowup_reason + ")" : std::string("completed")) << ", peak |omega|_inf = "
      << sum.peak_omega_linf << ", wall " << std::fixed << std::setprecision(2) << sum.wall_seconds << " s";
  log_line(options, msg.str());
  return out;
}

}  // namespace

RunOutcome run_simulation(const RunSpec& spec, const RunOptions& options) {
  const auto grid = make_grid(spec.grid_n);
  const Model<double> model(grid, spec.system);
  log_line(options, "covered_regime = " + std::string(spec.system.covered_regime() ? "true" : "false") + " (" +
                        spec.system.regime_condition() + ")");
  return execute(spec, model, make_initial_data(spec, model), options);
}

RunOutcome resume_simulation(const std::filesystem::path& checkpoint, double t_end,
                             const std::optional<std::filesystem::path>& config,
                             const std::optional<std::filesystem::path>& output_dir, const RunOptions& options) {
  const auto ck = read_checkpoint(checkpoint);
  RunSpec spec;
  std::optional<SystemConfig> fallback;
  if (config) {
    spec = load_config(*config);
    fallback = spec.system;
  }
  spec.system = system_from_header(ck.header, fallback);
  if (!config) spec.sobolev_exponents = default_sobolev_exponents(spec.system);
  spec.grid_n = ck.header.n;
  spec.initial.kind = InitialKind::from_checkpoint;
  spec.initial.path = checkpoint;
  spec.stepper.t_end = t_end;
  spec.output_dir = output_dir ? *output_dir : checkpoint.parent_path() / "resumed";
  if (!(t_end >= ck.header.time))
    throw ConfigError("--t-end " + format_real(t_end) + " precedes the checkpoint time " + format_real(ck.header.time));
  return run_simulation(spec, options);
}

void write_summary(const RunSummary& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << "variant = " << s.variant << '\n'
      << "alpha = " << format_real(s.alpha) << '\n'
      << "beta = " << format_real(s.beta) << '\n'
      << "gamma = " << format_real(s.gamma) << '\n'
      << "g = " << s.g << '\n'
      << "covered_regime = " << (s.covered ? "true" : "false") << '\n'
      << "completed = " << (s.completed ? "true" : "false") << '\n'
      << "blowup = " << (s.blowup ? "true" : "false") << '\n';
  if (s.blowup) out << "blowup_time = " << format_real(s.blowup_time) << "\nblowup_reason = " << s.blowup_reason << '\n';
  out << "final_time = " << format_real(s.final_time) << '\n'
      << "steps = " << s.steps << '\n'
      << "wall_seconds = " << format_real(s.wall_seconds) << '\n'
      << "peak_omega_linf = " << format_real(s.peak_omega_linf) << '\n';
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    out << "peak_omega_H" << format_real(s.exponents[i]) << " = " << format_real(s.peak_omega_sobolev[i]) << '\n';
    out << "peak_b_H" << format_real(s.exponents[i]) << " = " << format_real(s.peak_b_sobolev[i]) << '\n';
  }
  out << "max_energy_rise = " << format_real(s.max_energy_rise) << '\n'
      << "energy_balance = " << format_real(s.energy_balance) << '\n'
      << "max_cancellation_residual = " << format_real(s.max_cancellation_residual) << '\n';
}

// ---------------------------------------------------------------------------
// Sweeps

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("axis '" + text + "' must look like name=lo:hi:step");
  SweepAxis axis;
  axis.name = text.substr(0, eq);
  if (axis.name != "alpha" && axis.name != "beta" && axis.name != "gamma")
    throw ConfigError("unknown sweep axis '" + axis.name + "' (expected alpha, beta or gamma)");
  const std::string body = text.substr(eq + 1);
  const auto number = [&](const std::string& s) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0' || !std::isfinite(x)) throw ConfigError("axis '" + text + "': bad number '" + s + "'");
    return x;
  };
  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("axis '" + text + "' must look like name=lo:hi:step");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw ConfigError("axis '" + text + "' needs lo <= hi and step > 0");
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) axis.values.push_back(lo + static_cast<double>(i) * step);
  } else {
    std::stringstream ss(body);
    std::string p;
    while (std::getline(ss, p, ','))
      if (!p.empty()) axis.values.push_back(number(p));
  }
  if (axis.values.empty()) throw ConfigError("axis '" + text + "' is empty");
  return axis;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("FMHD_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*env != '\0' && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
    throw ConfigError(std::string("FMHD_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepCell> sweep(const RunSpec& base, const std::vector<SweepAxis>& axes, const RunOptions& options,
                             unsigned threads) {
  if (axes.empty()) throw ConfigError("a sweep needs at least one axis");
  for (const auto& a : axes)
    if (a.values.empty()) throw ConfigError("sweep axis '" + a.name + "' is empty");

  std::vector<SweepCell> cells(1);
  for (const auto& axis : axes) {
    std::vector<SweepCell> next;
    for (const auto& c : cells)
      for (double v : axis.values) {
        auto cell = c;
        cell.parameters.emplace_back(axis.name, v);
        next.push_back(std::move(cell));
      }
    cells = std::move(next);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::ostringstream name;
    name << "cell_" << std::setw(3) << std::setfill('0') << i;
    for (const auto& [k, v] : cells[i].parameters) name << '_' << k << '=' << format_real(v);
    cells[i].directory = base.output_dir / name.str();
  }

  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      auto& cell = cells[i];
      std::ostringstream local_log;
      RunOptions local = options;
      local.log = options.log ? &local_log : nullptr;
      try {
        RunSpec spec = base;
        for (const auto& [k, v] : cell.parameters) set_system_parameter(spec, k, v);
        spec.output_dir = cell.directory;
        const auto outcome = run_simulation(spec, local);
        cell.summary = outcome.summary;
        cell.status = outcome.summary.blowup ? "blowup" : "completed";
      } catch (const std::exception& e) {
        cell.status = "error";
        cell.error = e.what();
        if (local.log) local_log << "error: " << e.what() << '\n';
      }
      if (options.log) {
        std::lock_guard lock(log_mutex);
        *options.log << cell.directory.filename().string() << ": " << local_log.str();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads ? threads : sweep_threads(),
                                                             static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(base.output_dir);
  std::ofstream csv(base.output_dir / "sweep_summary.csv");
  csv << "cell";
  for (const auto& a : axes) csv << ',' << a.name;
  csv << ",alpha,beta,gamma,covered,status,final_time,steps,peak_omega_linf";
  for (double s : base.sobolev_exponents) csv << ",peak_omega_H" << format_real(s) << ",peak_b_H" << format_real(s);
  csv << ",wall_seconds,error\n";
  for (const auto& c : cells) {
    csv << c.directory.filename().string();
    for (const auto& p : c.parameters) csv << ',' << format_real(p.second);
    if (c.summary) {
      const auto& s = *c.summary;
      csv << ',' << format_real(s.alpha) << ',' << format_real(s.beta) << ',' << format_real(s.gamma) << ','
          << (s.covered ? "true" : "false") << ',' << c.status << ',' << format_real(s.final_time) << ',' << s.steps
          << ',' << format_real(s.peak_omega_linf);
      for (std::size_t i = 0; i < s.exponents.size(); ++i)
        csv << ',' << format_real(s.peak_omega_sobolev[i]) << ',' << format_real(s.peak_b_sobolev[i]);
      csv << ',' << format_real(s.wall_seconds) << ",\n";
    } else {
      csv << ",,,,," << c.status << ",,,";
      for (std::size_t i = 0; i < base.sobolev_exponents.size(); ++i) csv << ",,";
      std::string err = c.error;
      std::replace(err.begin(), err.end(), ',', ';');
      csv << "," << err << '\n';
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Reports

std::string report_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError("report: " + dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().filename() == "timeseries.csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Row {
    std::string run;
    std::string covered = "?";
    std::size_t records = 0;
    double t_final = NAN, e_initial = NAN, e_final = NAN, peak_omega = NAN, max_r = NAN;
  };
  std::vector<Row> rows;
  for (const auto& f : files) {
    const auto table = read_csv(f);
    Row row;
    row.run = std::filesystem::relative(f.parent_path(), dir).string();
    if (row.run == ".") row.run = dir.filename().string();
    row.records = table.rows.size();
    const auto t = table.column("t"), e = table.column("energy"), w = table.column("omega_linf");
    if (!table.rows.empty() && t && e && w) {
      row.t_final = table.rows.back()[*t];
      row.e_initial = table.rows.front()[*e];
      row.e_final = table.rows.back()[*e];
      row.peak_omega = 0.0;
      row.max_r = 0.0;
      for (const auto& r : table.rows) {
        row.peak_omega = std::max(row.peak_omega, r[*w]);
        for (const char* name : {"r1", "r2", "r3"})
          if (const auto c = table.column(name)) row.max_r = std::max(row.max_r, r[*c]);
      }
    }
    std::ifstream summary(f.parent_path() / "summary.txt");
    std::string line;
    while (std::getline(summary, line))
      if (line.rfind("covered_regime = ", 0) == 0) row.covered = line.substr(17);
    rows.push_back(row);
  }

  std::ofstream csv(dir / "report.csv");
  csv << "run,covered,records,t_final,energy_initial,energy_final,peak_omega_linf,max_residual\n";
  std::ostringstream text;
  text << std::left << std::setw(40) << "run" << std::setw(9) << "covered" << std::setw(9) << "records" << std::setw(12)
       << "t_final" << std::setw(16) << "energy_0" << std::setw(16) << "energy_T" << std::setw(16) << "peak|w|inf"
       << "max_r\n";
  for (const auto& r : rows) {
    csv << r.run << ',' << r.covered << ',' << r.records << ',' << format_real(r.t_final) << ','
        << format_real(r.e_initial) << ',' << format_real(r.e_final) << ',' << format_real(r.peak_omega) << ','
        << format_real(r.max_r) << '\n';
    text << std::left << std::setw(40) << r.run << std::setw(9) << r.covered << std::setw(9) << r.records
         << std::setw(12) << std::setprecision(6) << r.t_final << std::setw(16) << std::setprecision(10) << r.e_initial
         << std::setw(16) << r.e_final << std::setw(16) << r.peak_omega << std::setprecision(3) << r.max_r << '\n';
  }
  if (rows.empty()) text << "(no timeseries.csv found)\n";
  return text.str();
}

}  // namespace fmhd
