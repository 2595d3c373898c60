// Minimal library walkthrough: one stroboscopic run, its diagnostics, and a
// short bifurcation sweep, all on a coarse grid so it finishes in seconds.
#include <cstdio>

#include "revflow/revflow.hpp"

int main() {
  using namespace revflow;

  ModelParams p;  // reference parameter set; tau_r = 5.5
  GridSpec g{41};
  // explicit step target: the derived one is meant for the 101-node grid and
  // is too coarse for the ignition transient here
  RunSchedule sched{40, 64, 0.005};

  StroboSeries series = simulate(0.9, 0.2, p, g, sched);
  OrbitClass orbit = classify_orbit(series.alpha_out);
  EntropyResult ent = shannon_entropy(series.alpha_out);
  std::printf("single run: tau_r = %.2f, %zu samples, class = %s (period %d), entropy = %.3f bits\n",
              p.tau_r, series.alpha_out.size(), to_string(orbit.kind), orbit.period, ent.entropy);

  Spectrum spec = amplitude_spectrum(series.alpha_out);
  std::printf("spectrum: DC amplitude %.6f, first harmonic %.3e\n", spec.amplitudes[0],
              spec.amplitudes[1]);

  SweepSpec sweep;
  sweep.start = 4.0;
  sweep.stop = 7.0;
  sweep.n_points = 7;
  sweep.grid = g;
  sweep.schedule = sched;
  SweepResult result = bifurcation_sweep(sweep);
  std::printf("sweep over %s:\n", to_string(sweep.axis));
  for (const SweepRow& row : result.rows) {
    if (row.failed) {
      std::printf("  %5.2f  failed at cycle %ld: %s\n", row.param, row.fail_cycle,
                  row.fail_reason.c_str());
    } else {
      std::printf("  %5.2f  %-10s period %2d  entropy %.3f  alpha_out[last] %.6f\n", row.param,
                  to_string(row.orbit.kind), row.orbit.period, row.entropy.entropy,
                  row.alpha_out.back());
    }
  }
  return 0;
}
