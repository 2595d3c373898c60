#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "integrator.hpp"
#include "model.hpp"
#include "output.hpp"
#include "sweep.hpp"

namespace revflow {

enum class Command { simulate, bifurcate, spectrum, entropy, icmap, poincare };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::bifurcate: return "bifurcate";
    case Command::spectrum: return "spectrum";
    case Command::entropy: return "entropy";
    case Command::icmap: return "icmap";
    default: return "poincare";
  }
}

/// Fully resolved run description: which command, every model/grid/schedule
/// value, and the command-specific extras. A bare command keeps every default
/// and reproduces the reference scenario for that command.
struct RunConfig {
  Command command = Command::simulate;
  ModelParams params;
  GridSpec grid;
  RunSchedule schedule;
  double alpha0 = 0.9;
  double theta0 = 0.2;

  // bifurcate / entropy / spectrum --sweep
  SweepAxis axis = SweepAxis::tau_r;
  double axis_start = 3.0;
  double axis_stop = 14.0;
  int axis_points = 400;
  bool sweep_spectrum = false;  ///< spectrum command: sweep mode instead of a single run

  // icmap
  double alpha0_min = 0.0, alpha0_max = 1.0;
  double theta0_min = 0.0, theta0_max = 0.5;
  int n_alpha = 51;
  int n_theta = 51;

  std::string output_dir = "out";
  bool emit_plots = false;
  int n_workers = 0;  ///< 0 = resolve from environment / hardware

  bool is_sweep() const {
    return command == Command::bifurcate || command == Command::entropy ||
           (command == Command::spectrum && sweep_spectrum);
  }

  SweepSpec sweep_spec() const {
    SweepSpec s;
    s.axis = axis;
    s.start = axis_start;
    s.stop = axis_stop;
    s.n_points = axis_points;
    s.base = params;
    s.alpha0 = alpha0;
    s.theta0 = theta0;
    s.grid = grid;
    s.schedule = schedule;
    return s;
  }

  IcMapSpec icmap_spec() const {
    IcMapSpec s;
    s.alpha0_min = alpha0_min;
    s.alpha0_max = alpha0_max;
    s.theta0_min = theta0_min;
    s.theta0_max = theta0_max;
    s.n_alpha = n_alpha;
    s.n_theta = n_theta;
    s.base = params;
    s.grid = grid;
    s.schedule = schedule;
    return s;
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Outcome of command-line / config-file parsing. `config` is engaged iff a
/// run should proceed; otherwise `message` carries help text (exit_code 0) or
/// the configuration error (exit_code 2).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = 0;
  std::string message;
};

namespace detail {

inline std::string trim_copy(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

/// Flat `key = value` file: one pair per line, `#` or `;` comments, optional
/// single or double quotes around the value.
inline std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string t = trim_copy(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim_copy(t.substr(0, eq));
    std::string val = trim_copy(t.substr(eq + 1));
    if (key.empty() || key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789-_") != std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
    if (key == "config")
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": config files do not nest");
    if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                            (val.front() == '\'' && val.back() == '\'')))
      val = val.substr(1, val.size() - 2);
    kv.emplace_back(key, val);
  }
  return kv;
}

inline std::string quote_if_needed(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t") == std::string::npos) return s;
  return '"' + s + '"';
}

/// One command-line grammar instance with all option bindings. Rebuilt for
/// each parsing pass because CLI::App accumulates parse state.
struct CliGrammar {
  RunConfig cfg;
  std::optional<double> start, stop;
  std::optional<int> points;
  std::string config_file;
  CLI::App app{"revflow: reverse-flow tubular reactor simulation and dynamics analysis"};
  std::vector<std::pair<Command, CLI::App*>> subs;

  CliGrammar() {
    app.require_subcommand(1);
    static const std::map<std::string, SweepAxis> axis_map{{"tau_r", SweepAxis::tau_r},
                                                           {"da", SweepAxis::da}};
    auto make_sub = [&](Command cmd, const char* desc) {
      CLI::App* s = app.add_subcommand(to_string(cmd), desc);
      // A key given both in the file and as a flag resolves to the flag: file
      // values are replayed first and every option takes the last value.
      s->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      s->add_option("--config", config_file,
                    "flat 'key = value' run configuration; flags override file values");
      s->add_option("--gamma", cfg.params.gamma, "activation-energy number")->capture_default_str();
      s->add_option("--beta", cfg.params.beta, "adiabatic-temperature-rise number")
          ->capture_default_str();
      s->add_option("--m", cfg.params.m, "reaction order")->capture_default_str();
      s->add_option("--delta", cfg.params.delta, "heat-exchange coefficient")->capture_default_str();
      s->add_option("--theta-h", cfg.params.theta_h, "coolant temperature")->capture_default_str();
      s->add_option("--pe-m", cfg.params.pe_m, "mass Peclet number")->capture_default_str();
      s->add_option("--pe-h", cfg.params.pe_h, "heat Peclet number")->capture_default_str();
      s->add_option("--le", cfg.params.le, "Lewis number")->capture_default_str();
      s->add_option("--da", cfg.params.da, "Damkohler number")->capture_default_str();
      s->add_option("--tau-r", cfg.params.tau_r, "switching time between flow reversals")
          ->capture_default_str();
      s->add_option("--n-nodes", cfg.grid.n_nodes, "spatial grid nodes")->capture_default_str();
      s->add_option("--n-transient", cfg.schedule.n_transient, "discarded switching cycles")
          ->capture_default_str();
      s->add_option("--n-record", cfg.schedule.n_record, "recorded switching cycles")
          ->capture_default_str();
      s->add_option("--dt-target", cfg.schedule.dt_target,
                    "time-step target; <= 0 derives it from the grid and parameters")
          ->capture_default_str();
      s->add_option("--output-dir", cfg.output_dir, "destination directory")->capture_default_str();
      s->add_flag("--emit-plots", cfg.emit_plots, "also write gnuplot scripts for the CSVs");
      s->add_option("--workers", cfg.n_workers,
                    "sweep worker threads; 0 = REVFLOW_WORKERS or hardware")
          ->capture_default_str();
      subs.emplace_back(cmd, s);
      return s;
    };
    auto add_ic = [&](CLI::App* s) {
      s->add_option("--alpha0", cfg.alpha0, "uniform initial conversion")->capture_default_str();
      s->add_option("--theta0", cfg.theta0, "uniform initial temperature")->capture_default_str();
    };
    auto add_axis = [&](CLI::App* s, CLI::Option* needs = nullptr) {
      auto* oa = s->add_option("--axis", cfg.axis, "swept parameter (tau_r or da)")
                     ->transform(CLI::CheckedTransformer(axis_map, CLI::ignore_case))
                     ->default_str("tau_r");
      auto* ob = s->add_option("--start", start, "axis start (default depends on --axis)");
      auto* oc = s->add_option("--stop", stop, "axis stop (default depends on --axis)");
      auto* od = s->add_option("--points", points, "axis resolution (default depends on --axis)");
      if (needs)
        for (auto* o : {oa, ob, oc, od}) o->needs(needs);
    };

    CLI::App* s_sim = make_sub(Command::simulate, "record the stroboscopic outlet series");
    add_ic(s_sim);
    CLI::App* s_bif = make_sub(Command::bifurcate, "bifurcation diagram along tau_r or Da");
    add_ic(s_bif);
    add_axis(s_bif);
    CLI::App* s_spec = make_sub(Command::spectrum, "amplitude spectrum of the outlet series");
    add_ic(s_spec);
    CLI::Option* sweep_flag =
        s_spec->add_flag("--sweep", cfg.sweep_spectrum, "spectra along a parameter axis instead");
    add_axis(s_spec, sweep_flag);
    CLI::App* s_ent = make_sub(Command::entropy, "information entropy along tau_r or Da");
    add_ic(s_ent);
    add_axis(s_ent);
    CLI::App* s_ic =
        make_sub(Command::icmap, "orbit classification over a grid of initial conditions");
    s_ic->add_option("--alpha0-min", cfg.alpha0_min, "smallest initial conversion")
        ->capture_default_str();
    s_ic->add_option("--alpha0-max", cfg.alpha0_max, "largest initial conversion")
        ->capture_default_str();
    s_ic->add_option("--theta0-min", cfg.theta0_min, "smallest initial temperature")
        ->capture_default_str();
    s_ic->add_option("--theta0-max", cfg.theta0_max, "largest initial temperature")
        ->capture_default_str();
    s_ic->add_option("--n-alpha", cfg.n_alpha, "initial-condition grid columns")
        ->capture_default_str();
    s_ic->add_option("--n-theta", cfg.n_theta, "initial-condition grid rows")->capture_default_str();
    CLI::App* s_poi = make_sub(Command::poincare, "stroboscopic (alpha_out, theta_out) section");
    add_ic(s_poi);
  }

  // Returns true on success; on CLI errors fills `res` and returns false.
  bool parse(const std::vector<std::string>& args, ParseResult& res) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("revflow");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full) argv.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      std::ostringstream out;
      const int code = app.exit(e, out, out);
      res.exit_code = code == 0 ? 0 : 2;
      res.message = out.str();
      return false;
    }
    for (const auto& [cmd, sub] : subs)
      if (app.got_subcommand(sub)) cfg.command = cmd;
    return true;
  }
};

}  // namespace detail

/// Flat `key = value` rendering of a resolved configuration, readable back
/// through `--config`. Keys match the command-line option names.
inline std::string dump_config(const RunConfig& c) {
  std::ostringstream os;
  os << "# resolved configuration for command: " << to_string(c.command) << '\n';
  os << "gamma = " << fmt_double(c.params.gamma) << '\n';
  os << "beta = " << fmt_double(c.params.beta) << '\n';
  os << "m = " << fmt_double(c.params.m) << '\n';
  os << "delta = " << fmt_double(c.params.delta) << '\n';
  os << "theta-h = " << fmt_double(c.params.theta_h) << '\n';
  os << "pe-m = " << fmt_double(c.params.pe_m) << '\n';
  os << "pe-h = " << fmt_double(c.params.pe_h) << '\n';
  os << "le = " << fmt_double(c.params.le) << '\n';
  os << "da = " << fmt_double(c.params.da) << '\n';
  os << "tau-r = " << fmt_double(c.params.tau_r) << '\n';
  os << "n-nodes = " << c.grid.n_nodes << '\n';
  os << "n-transient = " << c.schedule.n_transient << '\n';
  os << "n-record = " << c.schedule.n_record << '\n';
  os << "dt-target = " << fmt_double(c.schedule.dt_target) << '\n';
  if (c.command == Command::icmap) {
    os << "alpha0-min = " << fmt_double(c.alpha0_min) << '\n';
    os << "alpha0-max = " << fmt_double(c.alpha0_max) << '\n';
    os << "theta0-min = " << fmt_double(c.theta0_min) << '\n';
    os << "theta0-max = " << fmt_double(c.theta0_max) << '\n';
    os << "n-alpha = " << c.n_alpha << '\n';
    os << "n-theta = " << c.n_theta << '\n';
  } else {
    os << "alpha0 = " << fmt_double(c.alpha0) << '\n';
    os << "theta0 = " << fmt_double(c.theta0) << '\n';
  }
  if (c.command == Command::spectrum)
    os << "sweep = " << (c.sweep_spectrum ? "true" : "false") << '\n';
  if (c.is_sweep()) {
    os << "axis = " << to_string(c.axis) << '\n';
    os << "start = " << fmt_double(c.axis_start) << '\n';
    os << "stop = " << fmt_double(c.axis_stop) << '\n';
    os << "points = " << c.axis_points << '\n';
  }
  os << "output-dir = " << detail::quote_if_needed(c.output_dir) << '\n';
  os << "emit-plots = " << (c.emit_plots ? "true" : "false") << '\n';
  os << "workers = " << c.n_workers << '\n';
  return os.str();
}

/// Parses command-line arguments (without the program name) plus an optional
/// `--config` file into a validated RunConfig. Flags override file values;
/// unknown keys are rejected. User input problems never throw — they come
/// back as exit_code 2 with a message.
inline ParseResult parse_config(const std::vector<std::string>& args) {
  ParseResult res;

  detail::CliGrammar first;
  if (!first.parse(args, res)) return res;

  detail::CliGrammar* active = &first;
  detail::CliGrammar reparsed;
  if (!first.config_file.empty()) {
    // Replay the file's keys as options ahead of the explicit flags and parse
    // again from scratch so ordinary precedence resolves the overrides.
    std::vector<std::string> merged;
    merged.push_back(args.at(0));
    try {
      for (const auto& [k, v] : detail::read_flat_config(first.config_file))
        merged.push_back("--" + k + "=" + v);
    } catch (const std::exception& e) {
      res.exit_code = 2;
      res.message = std::string("configuration error: ") + e.what() + '\n';
      return res;
    }
    merged.insert(merged.end(), args.begin() + 1, args.end());
    if (!reparsed.parse(merged, res)) return res;
    active = &reparsed;
  }

  RunConfig cfg = active->cfg;
  if (cfg.is_sweep()) {
    const bool da_axis = cfg.axis == SweepAxis::da;
    cfg.axis_start = active->start.value_or(da_axis ? 0.05 : 3.0);
    cfg.axis_stop = active->stop.value_or(da_axis ? 0.2 : 14.0);
    cfg.axis_points = active->points.value_or(da_axis ? 300 : 400);
  }

  try {
    cfg.params.validate();
    cfg.grid.validate();
    cfg.schedule.validate();
    if (cfg.n_workers < 0) throw std::invalid_argument("workers must be >= 0");
    if (cfg.is_sweep()) cfg.sweep_spec().validate();
    if (cfg.command == Command::icmap) cfg.icmap_spec().validate();
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.message = std::string("configuration error: ") + e.what() + '\n';
    return res;
  }

  res.config = cfg;
  return res;
}

inline ParseResult parse_config(int argc, const char* const* argv) {
  return parse_config(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace revflow
