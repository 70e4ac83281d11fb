// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 other failure, 2 bad
// configuration or arguments, 3 resource guard, 4 thermal sweep breakdown.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lcqc/envelope.hpp"
#include "lcqc/experiment.hpp"
#include "lcqc/parallel.hpp"

namespace fs = std::filesystem;
using namespace lcqc;

namespace {

#ifndef LCQC_VERSION
#define LCQC_VERSION "unknown"
#endif

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

struct CommonOptions {
  std::string config;
  std::optional<std::string> preset;
  std::vector<std::string> overrides;
  std::optional<long long> seed;
};

std::pair<const Preset*, Params> resolve_options(const CommonOptions& o) {
  Config cfg;
  if (!o.config.empty()) cfg = load_config(o.config);
  else if (!o.preset) throw ConfigError("either --config or --preset is required");
  auto overrides = o.overrides;
  if (o.seed) overrides.push_back(fmt::format("seed={}", *o.seed));
  return resolve(cfg, overrides, o.preset);
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int run_command(const CommonOptions& o, unsigned workers, const std::string& out_dir) {
  const auto [preset, params] = resolve_options(o);
  fs::create_directories(out_dir);
  std::ofstream log(fs::path(out_dir) / "run.log");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  RunContext ctx;
  ctx.workers = workers;
  ctx.log = [&](const std::string& msg) {
    log << fmt::format("[{:9.3f}s] {}\n", elapsed(), msg);
    log.flush();
  };
  ctx.log(fmt::format("preset {} with {} worker(s)", preset->name, workers));
  const std::string started = utc_now();
  const RunOutput out = preset->run(params, ctx);

  std::vector<std::string> written;
  for (const auto& t : out.tables) {
    std::ofstream f(fs::path(out_dir) / t.file_name);
    t.write(f);
    written.push_back(t.file_name);
  }
  for (const auto& [name, contents] : out.files) {
    std::ofstream f(fs::path(out_dir) / name);
    f << contents;
    written.push_back(name);
  }
  const double wall = elapsed();
  ctx.log(fmt::format("done in {:.3f}s", wall));

  // The manifest is itself a valid config: rerunning it reproduces the CSVs.
  std::ofstream m(fs::path(out_dir) / "manifest.txt");
  m << "preset = " << preset->name << "\n";
  for (const auto& [k, e] : params.values())
    if (k != "preset") m << k << " = " << e.value << "\n";
  m << "\n[run]\n";
  m << "version = " << LCQC_VERSION << "\n";
  m << "started_at = " << started << "\n";
  m << "wall_seconds = " << fmt::format("{:.3f}", wall) << "\n";
  m << "workers = " << workers << "\n";
  std::string files;
  for (const auto& w : written) files += (files.empty() ? "" : ",") + w;
  m << "outputs = " << files << "\n";
  std::cout << fmt::format("wrote {} to {}\n", files, out_dir);
  return 0;
}

/// Reads one numeric column pair from a CSV with a header row, keeping rows
/// that match every key=value filter.
std::pair<std::vector<double>, std::vector<double>> read_curve(const std::string& path, const std::string& t_col,
                                                               std::string v_col,
                                                               const std::vector<std::string>& filters) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv '" + path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw AnalysisError("csv '" + path + "' is empty");
  const auto header = split(line);
  auto column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ConfigError("csv has no column '" + name + "'");
  };
  if (v_col.empty()) {
    for (const char* c : {"mean", "sz_center", "value"})
      if (std::find(header.begin(), header.end(), c) != header.end()) {
        v_col = c;
        break;
      }
    if (v_col.empty()) throw ConfigError("pass --column; no default value column found");
  }
  const std::size_t ti = column(t_col), vi = column(v_col);
  std::vector<std::pair<std::size_t, std::string>> conds;
  for (const auto& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw ConfigError("filter '" + f + "' must be column=value");
    conds.emplace_back(column(f.substr(0, eq)), f.substr(eq + 1));
  }
  std::vector<double> t, v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    bool keep = cells.size() == header.size();
    for (const auto& [i, want] : conds) keep = keep && cells[i] == want;
    if (!keep) continue;
    t.push_back(std::stod(cells[ti]));
    v.push_back(std::stod(cells[vi]));
  }
  return {t, v};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Light-cone sampling, circuit checks and thermal sweeps for spin chains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LCQC_VERSION));

  CommonOptions common;
  unsigned workers = default_workers();
  std::string out_dir = "out";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Config file (key = value, [section] headers)");
    sub->add_option("--preset", common.preset, "Preset name; overrides the config's preset key");
    sub->add_option("--override", common.overrides, "key=value applied after the config")->take_all();
    sub->add_option("--seed", common.seed, "Seed; overrides the config's seed key");
  };

  auto* run = app.add_subcommand("run", "Run a preset and write CSV, manifest and log");
  add_common(run);
  run->add_option("--workers", workers, "Worker threads (default: available parallelism)")->check(CLI::PositiveNumber);
  run->add_option("--out-dir", out_dir, "Artifact directory");

  auto* validate = app.add_subcommand("validate-config", "Parse and resolve a config without running it");
  add_common(validate);

  app.add_subcommand("list-presets", "List presets and their parameters");

  std::string csv, t_col = "t", v_col;
  double t_min = 5.0, t_max = 25.0;
  std::vector<std::string> filters;
  auto* fit = app.add_subcommand("fit-envelope", "Fit t^-a cos(omega t + theta0) to a CSV curve");
  fit->add_option("--csv", csv, "Input CSV")->required();
  fit->add_option("--t-min", t_min, "Window start");
  fit->add_option("--t-max", t_max, "Window end");
  fit->add_option("--time-column", t_col, "Time column");
  fit->add_option("--column", v_col, "Value column (default: mean, sz_center or value)");
  fit->add_option("--filter", filters, "column=value row filter")->take_all();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return run_command(common, workers, out_dir);
    if (validate->parsed()) {
      const auto [preset, params] = resolve_options(common);
      std::cout << "preset = " << preset->name << "\n";
      for (const auto& [k, e] : params.values())
        if (k != "preset") std::cout << k << " = " << e.value << "\n";
      return 0;
    }
    if (app.got_subcommand("list-presets")) {
      for (const auto& p : presets()) {
        std::cout << p.name << "\n  " << p.description << "\n";
        for (const auto& [k, v] : p.defaults) std::cout << "    " << k << " = " << v << "\n";
      }
      return 0;
    }
    if (fit->parsed()) {
      const auto [t, v] = read_curve(csv, t_col, v_col, filters);
      const EnvelopeFit f = fit_envelope(t, v, t_min, t_max);
      std::cout << fmt::format("exponent = {}\nomega = {}\ntheta0 = {}\nextrema = {}\nzero_crossings = {}\n",
                               f.exponent, f.omega, f.theta0, f.n_extrema, f.n_crossings);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const NumericalBreakdown& e) {
    std::cerr << "numerical breakdown at site " << e.site() << ": " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
