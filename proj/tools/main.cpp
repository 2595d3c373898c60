#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "revflow/config.hpp"
#include "revflow/revflow.hpp"

namespace fs = std::filesystem;
using namespace revflow;

namespace {

const char* axis_label(SweepAxis a) { return a == SweepAxis::tau_r ? "tau_r" : "Da"; }

StroboSeries run_single(const RunConfig& cfg) {
  return simulate(cfg.alpha0, cfg.theta0, cfg.params, cfg.grid, cfg.schedule);
}

std::vector<std::string> dispatch(const RunConfig& cfg, const fs::path& dir) {
  std::vector<std::string> files;
  auto emit = [&](const char* name) { files.emplace_back(name); return dir / name; };
  switch (cfg.command) {
    case Command::simulate: {
      const StroboSeries s = run_single(cfg);
      write_series_csv(emit("series.csv"), s);
      if (cfg.emit_plots) write_series_plot(emit("series.gp"));
      break;
    }
    case Command::poincare: {
      const StroboSeries s = run_single(cfg);
      write_poincare_csv(emit("poincare.csv"), s);
      if (cfg.emit_plots) write_poincare_plot(emit("poincare.gp"));
      break;
    }
    case Command::spectrum: {
      if (cfg.sweep_spectrum) {
        const SweepResult r = spectral_sweep(cfg.sweep_spec(), cfg.n_workers);
        write_spectrum_sweep_csv(emit("spectrum_sweep.csv"), r);
      } else {
        const StroboSeries s = run_single(cfg);
        const Spectrum sp = amplitude_spectrum(s.alpha_out);
        write_spectrum_csv(emit("spectrum.csv"), sp);
        if (cfg.emit_plots) {
          double peak = 0.0;
          for (std::size_t k = 1; k < sp.amplitudes.size(); ++k)
            peak = std::max(peak, sp.amplitudes[k]);
          const double cap = peak > 0.0 ? 1.2 * peak : (sp.amplitudes.empty() ? 1.0 : sp.amplitudes[0]);
          write_spectrum_plot(emit("spectrum.gp"), cap);
        }
      }
      break;
    }
    case Command::bifurcate: {
      const SweepResult r = bifurcation_sweep(cfg.sweep_spec(), cfg.n_workers);
      write_bifurcation_csv(emit("bifurcation.csv"), r);
      write_classes_csv(emit("classes.csv"), r);
      if (cfg.emit_plots) write_bifurcation_plot(emit("bifurcation.gp"), axis_label(cfg.axis));
      break;
    }
    case Command::entropy: {
      const SweepResult r = entropy_sweep(cfg.sweep_spec(), cfg.n_workers);
      write_entropy_csv(emit("entropy.csv"), r);
      if (cfg.emit_plots) write_entropy_plot(emit("entropy.gp"), axis_label(cfg.axis));
      break;
    }
    case Command::icmap: {
      const SweepResult r = ic_map(cfg.icmap_spec(), cfg.n_workers);
      write_icmap_csv(emit("icmap.csv"), r);
      if (cfg.emit_plots) write_icmap_plot(emit("icmap.gp"));
      break;
    }
  }
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  const ParseResult parsed = parse_config(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  const RunConfig& cfg = *parsed.config;
  try {
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    write_text_file(dir / "config.txt", dump_config(cfg));
    std::vector<std::string> files = dispatch(cfg, dir);
    files.emplace_back("config.txt");
    std::cout << to_string(cfg.command) << ": wrote";
    for (const std::string& f : files) std::cout << ' ' << (dir / f).string();
    std::cout << '\n';
    return 0;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure";
    if (e.cycle >= 0) std::cerr << " (cycle " << e.cycle << ")";
    std::cerr << ": " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
