// Copyright 2026 The lcqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Batch experiments: flat key = value configs with [section] headers,
// named presets with documented defaults, and runners that turn a resolved
// parameter set into CSV tables.

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lcqc/circuits.hpp"
#include "lcqc/errors.hpp"
#include "lcqc/freefermion.hpp"
#include "lcqc/lightcone.hpp"
#include "lcqc/models.hpp"
#include "lcqc/qbp.hpp"

namespace lcqc {

/// Malformed or inconsistent configuration; line and column are 1-based, 0
/// when the problem is not tied to a config line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? fmt::format("{}:{}: {}", line, column, what) : what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

/// Keys are "section.key", or bare "key" before the first section.
using Config = std::map<std::string, ConfigEntry>;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

}  // namespace detail

inline Config parse_config(std::istream& in) {
  Config cfg;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no, col);
      section = detail::trim(line.substr(1, line.size() - 2));
      if (!detail::valid_name(section)) throw ConfigError("invalid section name", line_no, col + 1);
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos || (hash != std::string::npos && eq > hash))
      throw ConfigError("expected key = value", line_no, col);
    const std::string key = detail::trim(raw.substr(0, eq));
    const std::string value = detail::trim(raw.substr(eq + 1, hash == std::string::npos ? std::string::npos : hash - eq - 1));
    if (!detail::valid_name(key)) throw ConfigError("invalid key", line_no, col);
    if (value.empty()) throw ConfigError("missing value", line_no, static_cast<int>(eq) + 2);
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.count(full)) throw ConfigError("duplicate key '" + full + "'", line_no, col);
    cfg[full] = {value, line_no};
  }
  if (cfg.empty()) throw ConfigError("configuration is empty", 1, 1);
  return cfg;
}

inline Config parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

/// Resolved parameters with typed access; every read key must exist.
class Params {
 public:
  Params() = default;
  explicit Params(std::map<std::string, ConfigEntry> values) : values_(std::move(values)) {}

  const std::map<std::string, ConfigEntry>& values() const { return values_; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value, int line = 0) { values_[key] = {value, line}; }

  const std::string& str(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing parameter '" + key + "'");
    return it->second.value;
  }

  double real(const std::string& key) const { return parse_real(key, str(key)); }

  long long integer(const std::string& key) const {
    const std::string& s = str(key);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) fail(key, "an integer");
    return v;
  }

  bool boolean(const std::string& key) const {
    const std::string& s = str(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    fail(key, "a boolean");
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, detail::trim(item)));
    if (out.empty()) fail(key, "a comma-separated list");
    return out;
  }

  std::vector<std::string> words(const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(str(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = detail::trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = values_.find(key);
    throw ConfigError("parameter '" + key + "' must be " + what, it == values_.end() ? 0 : it->second.line, 1);
  }

  double parse_real(const std::string& key, const std::string& s) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v)) fail(key, "a finite number");
    return v;
  }

  std::map<std::string, ConfigEntry> values_;
};

/// One CSV file: header row plus pre-formatted rows.
struct Table {
  std::string file_name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
  }
};

/// Shortest round-trip decimal form; locale independent.
inline std::string num(double v) { return fmt::format("{}", v); }
inline std::string num(long long v) { return fmt::format("{}", v); }

struct RunOutput {
  std::vector<Table> tables;
  /// Extra plain-text artifacts: (file name, contents).
  std::vector<std::pair<std::string, std::string>> files;
};

struct RunContext {
  unsigned workers = 1;
  std::function<void(const std::string&)> log = [](const std::string&) {};
};

struct Preset {
  std::string name;
  std::string description;
  /// Every accepted parameter with its default.
  std::vector<std::pair<std::string, std::string>> defaults;
  std::function<RunOutput(const Params&, const RunContext&)> run;
};

inline constexpr std::uint64_t kDefaultMaxStateDimension = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultMaxDenseDimension = std::uint64_t{1} << 13;

namespace detail {

inline void guard(const Params& p, const std::string& key, std::uint64_t dimension, const std::string& what) {
  const auto cap = static_cast<std::uint64_t>(p.integer(key));
  if (dimension > cap)
    throw ResourceError(fmt::format("{} needs dimension {}, above {} = {}", what, dimension, key, cap));
}

inline RunOutput run_xy_exact(const Params& p, const RunContext& ctx) {
  const double dt = p.real("freefermion.dt");
  const double t_max = p.real("freefermion.t_max");
  if (!(dt > 0.0) || !(t_max > 0.0)) throw ConfigError("freefermion.dt and freefermion.t_max must be positive");
  const int steps = static_cast<int>(std::lround(t_max / dt));
  Table t{"xy_exact.csv", {"t", "n_sites", "boundary", "sz_center"}, {}};
  auto add = [&](const std::string& key, bool periodic) {
    for (double nd : p.reals(key)) {
      const int n = static_cast<int>(nd);
      if (n < 3 || n != nd) throw ConfigError("parameter '" + key + "' needs integer sizes >= 3");
      ctx.log(fmt::format("free-fermion chain n={} {}", n, periodic ? "periodic" : "open"));
      const auto curve = central_spin_curve(n, periodic, dt, steps);
      for (int k = 0; k <= steps; ++k)
        t.rows.push_back({num(k * dt), num(static_cast<long long>(n)), periodic ? "periodic" : "open",
                          num(curve[static_cast<std::size_t>(k)])});
    }
  };
  add("freefermion.open_sizes", false);
  add("freefermion.periodic_sizes", true);
  return {{t}, {}};
}

inline LightconeConfig lightcone_config(const Params& p, const RunContext& ctx) {
  LightconeConfig cfg;
  cfg.l = static_cast<int>(p.integer("lightcone.l"));
  cfg.delta = p.real("lightcone.delta");
  cfg.n_it = static_cast<int>(p.integer("lightcone.n_it"));
  cfg.dt = p.real("lightcone.dt");
  cfg.velocity = p.real("lightcone.velocity");
  cfg.observable = Observable::sz(static_cast<int>(p.integer("lightcone.site")));
  cfg.center_up = p.boolean("lightcone.center_up");
  cfg.seed = static_cast<std::uint64_t>(p.integer("seed"));
  cfg.workers = ctx.workers;
  if (cfg.velocity <= 0.0 && std::abs(cfg.delta) > 1.0)
    throw ConfigError("lightcone.velocity must be set when |delta| > 1");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  guard(p, "limits.max_state_dimension", std::uint64_t{1} << (cfg.l + 1), "light-cone middle window");
  return cfg;
}

inline RunOutput run_lightcone(const Params& p, const RunContext& ctx, const std::string& file) {
  const LightconeConfig cfg = lightcone_config(p, ctx);
  const std::string protocol = p.str("lightcone.protocol");
  Estimate e;
  if (protocol == "single") {
    ctx.log(fmt::format("light-cone sampling l={} delta={} t_f={} n_it={}", cfg.l, cfg.delta, cfg.final_time(), cfg.n_it));
    e = ascending(run_sampling(cfg));
  } else if (protocol == "stitched") {
    double t_max = p.real("lightcone.t_max");
    if (t_max <= 0.0) t_max = cfg.final_time();
    ctx.log(fmt::format("light-cone stitched sampling l={} delta={} t_max={} n_it={}", cfg.l, cfg.delta, t_max, cfg.n_it));
    e = run_stitched(cfg, t_max, 1.0);
  } else {
    throw ConfigError("lightcone.protocol must be 'single' or 'stitched'");
  }
  Table t{file, {"t", "mean", "rms", "std_error", "n_it", "l", "delta", "dt", "protocol", "seed"}, {}};
  for (std::size_t k = 0; k < e.times.size(); ++k)
    t.rows.push_back({num(e.times[k]), num(e.mean[k]), num(e.rms[k]), num(e.std_error[k]),
                      num(static_cast<long long>(e.n_it)), num(static_cast<long long>(cfg.l)), num(cfg.delta),
                      num(cfg.dt), protocol, p.str("seed")});
  return {{t}, {}};
}

inline RunOutput run_circuit_verify(const Params& p, const RunContext& ctx) {
  const int n = static_cast<int>(p.integer("circuits.n_sites"));
  const double t = p.real("circuits.t");
  const double delta = p.real("circuits.delta");
  const double v_lr = p.real("circuits.v_lr");
  const int rounds = static_cast<int>(p.integer("circuits.rounds"));
  const bool velocity = p.boolean("circuits.velocity");
  if (n < 2 || n > 30) throw ConfigError("circuits.n_sites must lie in [2, 30]");
  guard(p, "limits.max_dense_dimension", std::uint64_t{1} << n, "dense circuit operator");
  if (n > kMaxDenseCircuitSites) throw ResourceError("circuits.n_sites above the dense operator limit");
  const auto h = build_xxz(n, delta);
  Table out{"circuits.csv", {"circuit", "l_prime", "period", "n_sites", "t", "delta", "v_lr", "error", "velocity"}, {}};
  for (double lpd : p.reals("circuits.l_prime")) {
    const int lp = static_cast<int>(lpd);
    if (lp < 1 || lp != lpd) throw ConfigError("circuits.l_prime entries must be positive integers");
    const CornerConfig cc{lp, t, v_lr};
    cc.validate();
    const int period = cc.period();
    const Circuit block = build_block_circuit(h, period, t, true);
    const Circuit corner = build_corner_circuit(h, cc);
    for (const auto* c : {&block, &corner}) {
      const std::string name = c == &block ? "block" : "corner";
      ctx.log(fmt::format("circuit {} l'={} period={}", name, lp, period));
      const double err = circuit_error(*c, h);
      const std::string v = velocity ? num(measure_circuit_velocity(*c, h, rounds)) : "nan";
      out.rows.push_back({name, num(static_cast<long long>(lp)), num(static_cast<long long>(period)),
                          num(static_cast<long long>(n)), num(t), num(delta), num(v_lr), num(err), v});
    }
  }
  return {{out}, {}};
}

inline std::vector<double> load_bonds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bond file '" + path + "'");
  return read_couplings(in);
}

inline RunOutput run_thermo(const Params& p, const RunContext& ctx, const LocalHamiltonian& h, const std::string& model,
                            const std::string& disorder) {
  const int l0 = static_cast<int>(p.integer("qbp.l0"));
  if (l0 < 2) throw ConfigError("qbp.l0 must be >= 2");
  guard(p, "limits.max_dense_dimension", std::uint64_t{1} << std::min(l0, 62), "transfer operator");
  ThermoRequest req;
  req.beta_step = p.real("qbp.beta_step");
  req.h_step = p.real("qbp.h_step");
  req.lambda_step = p.real("qbp.lambda_step");
  req.specific_heat = req.susceptibility = req.dimer = false;
  for (const auto& o : p.words("qbp.observables")) {
    if (o == "specific_heat") req.specific_heat = true;
    else if (o == "chi") req.susceptibility = true;
    else if (o == "chi_dimer") req.dimer = true;
    else throw ConfigError("qbp.observables accepts specific_heat, chi, chi_dimer");
  }
  const double beta_max = p.real("qbp.beta_max");
  if (!(req.beta_step > 0.0) || beta_max < req.beta_step) throw ConfigError("need 0 < qbp.beta_step <= qbp.beta_max");
  const int points = static_cast<int>(std::floor(beta_max / req.beta_step + 1e-9));
  ctx.log(fmt::format("thermal sweep model={} n={} l0={} points={}", model, h.n_sites, l0, points));
  const auto curve = thermo_curve(h, l0, points, req, ctx.workers);
  Table t{"thermo.csv",
          {"beta", "T", "observable", "value", "precision_warning", "l0", "model", "n_sites", "disorder", "seed"},
          {}};
  for (const auto& pt : curve) {
    auto row = [&](const std::string& name, const ThermoValue& v) {
      t.rows.push_back({num(pt.beta), num(1.0 / pt.beta), name, num(v.value), v.precision_warning ? "1" : "0",
                        num(static_cast<long long>(l0)), model, num(static_cast<long long>(h.n_sites)), disorder,
                        p.str("seed")});
    };
    if (req.specific_heat) row("specific_heat", pt.specific_heat);
    if (req.susceptibility) row("chi", pt.susceptibility);
    if (req.dimer) row("chi_dimer_over_beta", pt.dimer);
  }
  std::ostringstream bonds;
  write_couplings(bonds, nearest_bonds(h));
  return {{t}, {{"bonds.txt", bonds.str()}}};
}

inline RunOutput run_qbp_faf(const Params& p, const RunContext& ctx) {
  const double prob = p.real("qbp.p");
  LocalHamiltonian h;
  const std::string file = p.str("qbp.bonds_file");
  if (file != "none") {
    h = chain_from_bonds(load_bonds(file));
  } else {
    std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed")));
    try {
      h = build_faf(static_cast<int>(p.integer("qbp.n_sites")), p.real("qbp.j"), p.real("qbp.j_f"), p.real("qbp.j_a"),
                    prob, rng);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return run_thermo(p, ctx, h, "faf", fmt::format("p={}", prob));
}

inline RunOutput run_qbp_frustrated(const Params& p, const RunContext& ctx) {
  const int n = static_cast<int>(p.integer("qbp.n_sites"));
  const bool disorder = p.boolean("qbp.disorder");
  const std::string file = p.str("qbp.bonds_file");
  LocalHamiltonian h;
  std::string label = "pure";
  if (file != "none") {
    h = frustrated_from_bonds(load_bonds(file));
    label = "file";
  } else if (disorder) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed")));
    const double lo = p.real("qbp.j_low"), hi = p.real("qbp.j_high");
    if (n < 3) throw ConfigError("qbp.n_sites must be >= 3");
    h = build_frustrated(n, {lo, hi}, rng);
    label = fmt::format("binary({},{})", lo, hi);
  } else {
    if (n < 3) throw ConfigError("qbp.n_sites must be >= 3");
    h = build_frustrated_pure(n);
  }
  return run_thermo(p, ctx, h, "frustrated", label);
}

inline std::vector<std::pair<std::string, std::string>> common_defaults() {
  return {{"seed", "1"},
          {"limits.max_state_dimension", std::to_string(kDefaultMaxStateDimension)},
          {"limits.max_dense_dimension", std::to_string(kDefaultMaxDenseDimension)}};
}

inline std::vector<std::pair<std::string, std::string>> with_common(std::vector<std::pair<std::string, std::string>> v) {
  auto c = common_defaults();
  c.insert(c.end(), v.begin(), v.end());
  return c;
}

inline std::vector<std::pair<std::string, std::string>> lightcone_defaults(const std::string& delta,
                                                                           const std::string& velocity,
                                                                           const std::string& protocol,
                                                                           const std::string& n_it) {
  return with_common({{"lightcone.l", "12"},
                      {"lightcone.delta", delta},
                      {"lightcone.n_it", n_it},
                      {"lightcone.dt", "0.25"},
                      {"lightcone.velocity", velocity},
                      {"lightcone.protocol", protocol},
                      {"lightcone.t_max", "0"},
                      {"lightcone.site", "0"},
                      {"lightcone.center_up", "false"}});
}

inline std::vector<std::pair<std::string, std::string>> qbp_defaults(
    std::vector<std::pair<std::string, std::string>> model) {
  std::vector<std::pair<std::string, std::string>> v{{"qbp.l0", "7"},           {"qbp.beta_step", "0.25"},
                                                     {"qbp.beta_max", "8"},     {"qbp.h_step", "0.001"},
                                                     {"qbp.lambda_step", "0.001"}, {"qbp.bonds_file", "none"}};
  v.insert(v.end(), model.begin(), model.end());
  return with_common(v);
}

}  // namespace detail

/// All presets, in listing order.
inline const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    using namespace detail;
    std::vector<Preset> v;
    v.push_back({"xy-exact", "free-fermion central spin after a Neel quench, open and periodic chains",
                 with_common({{"freefermion.open_sizes", "35,51,101"},
                              {"freefermion.periodic_sizes", "36"},
                              {"freefermion.dt", "0.25"},
                              {"freefermion.t_max", "30"}}),
                 run_xy_exact});
    // Above |delta| = 1 the spin-wave formula does not apply; the isotropic
    // value pi/2 sets the default light-cone time.
    const std::string v_half_pi = fmt::format("{}", std::numbers::pi / 2);
    for (const auto& [name, delta, vel] : std::vector<std::tuple<std::string, std::string, std::string>>{
             {"lightcone-delta0", "0", "0"},
             {"lightcone-delta0.5", "0.5", "0"},
             {"lightcone-delta1", "1", "0"},
             {"lightcone-delta2", "2", v_half_pi}})
      v.push_back({name, "light-cone sampled central spin of the XXZ chain after a Neel quench",
                   lightcone_defaults(delta, vel, "single", "1000"),
                   [](const Params& p, const RunContext& c) { return run_lightcone(p, c, "lightcone.csv"); }});
    v.push_back({"rms-fluctuations", "sample-to-sample spread of the light-cone estimator, stitched over t_f",
                 lightcone_defaults("0", "0", "stitched", "200"),
                 [](const Params& p, const RunContext& c) { return run_lightcone(p, c, "rms.csv"); }});
    v.push_back({"circuit-verify", "operator-norm error and measured velocity of block and corner circuits",
                 with_common({{"circuits.n_sites", "12"},
                              {"circuits.t", "0.5"},
                              {"circuits.delta", "1"},
                              {"circuits.l_prime", "1,2,3"},
                              {"circuits.v_lr", "1"},
                              {"circuits.rounds", "1"},
                              {"circuits.velocity", "true"}}),
                 run_circuit_verify});
    v.push_back({"qbp-faf", "thermal susceptibility of the random ferro/antiferromagnetic dimer chain",
                 qbp_defaults({{"qbp.n_sites", "2000"},
                               {"qbp.p", "0"},
                               {"qbp.j", "1"},
                               {"qbp.j_f", "-2"},
                               {"qbp.j_a", "2"},
                               {"qbp.observables", "chi"}}),
                 run_qbp_faf});
    v.push_back({"qbp-frustrated", "specific heat, susceptibility and dimer response of the frustrated chain",
                 qbp_defaults({{"qbp.n_sites", "1999"},
                               {"qbp.disorder", "false"},
                               {"qbp.j_low", "0.9"},
                               {"qbp.j_high", "1.1"},
                               {"qbp.observables", "specific_heat,chi,chi_dimer"}}),
                 run_qbp_frustrated});
    return v;
  }();
  return all;
}

inline const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + name + "'");
}

/// Preset defaults overlaid by the config, then by key=value overrides.
/// Unknown keys are errors. The preset comes from `preset_override` or the
/// config's `preset` key.
inline std::pair<const Preset*, Params> resolve(const Config& cfg, const std::vector<std::string>& overrides,
                                                const std::optional<std::string>& preset_override) {
  std::string name;
  if (preset_override) {
    name = *preset_override;
  } else {
    const auto it = cfg.find("preset");
    if (it == cfg.end()) throw ConfigError("no preset given (set 'preset' or pass --preset)");
    name = it->second.value;
  }
  const Preset& preset = [&]() -> const Preset& {
    try {
      return find_preset(name);
    } catch (const ConfigError& e) {
      const auto it = cfg.find("preset");
      throw ConfigError(e.what(), it == cfg.end() ? 0 : it->second.line, 1);
    }
  }();
  Params params;
  for (const auto& [k, v] : preset.defaults) params.set(k, v);
  params.set("preset", preset.name);
  auto accept = [&](const std::string& key, const std::string& value, int line) {
    if (key != "preset" && !std::any_of(preset.defaults.begin(), preset.defaults.end(),
                                        [&](const auto& d) { return d.first == key; }))
      throw ConfigError("unknown key '" + key + "' for preset " + preset.name, line, 1);
    if (key != "preset") params.set(key, value, line);
  };
  // Keys under [run] are manifest metadata and do not change results.
  for (const auto& [k, e] : cfg)
    if (k.rfind("run.", 0) != 0) accept(k, e.value, e.line);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' must be key=value");
    accept(detail::trim(o.substr(0, eq)), detail::trim(o.substr(eq + 1)), 0);
  }
  // Values must have the shape of their defaults: numbers stay numbers and
  // booleans stay booleans.
  for (const auto& [k, d] : preset.defaults) {
    if (d == "true" || d == "false") {
      params.boolean(k);
    } else if (d.find(',') == std::string::npos && d != "none") {
      char* end = nullptr;
      std::strtod(d.c_str(), &end);
      if (end && *end == '\0') params.real(k);
    }
  }
  return {&preset, params};
}

}  // namespace lcqc
