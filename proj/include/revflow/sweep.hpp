#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "integrator.hpp"
#include "model.hpp"

namespace revflow {

enum class SweepAxis { tau_r, da };

inline const char* to_string(SweepAxis a) { return a == SweepAxis::tau_r ? "tau_r" : "da"; }

/// Family of simulations along one parameter axis, each started cold from
/// the same uniform initial condition.
struct SweepSpec {
  SweepAxis axis = SweepAxis::tau_r;
  double start = 3.0;
  double stop = 14.0;
  int n_points = 400;
  ModelParams base;
  double alpha0 = 0.9;
  double theta0 = 0.2;
  GridSpec grid;
  RunSchedule schedule;

  void validate() const {
    if (!(start < stop)) throw std::invalid_argument("SweepSpec: start must be < stop");
    if (n_points < 2) throw std::invalid_argument("SweepSpec: n_points must be >= 2");
    base.validate();
    grid.validate();
    schedule.validate();
  }
};

/// Evenly spaced axis values, reproducible from indices alone.
inline std::vector<double> axis_values(const SweepSpec& spec) {
  std::vector<double> v(static_cast<std::size_t>(spec.n_points));
  const double h = (spec.stop - spec.start) / static_cast<double>(spec.n_points - 1);
  for (int j = 0; j < spec.n_points; ++j) v[static_cast<std::size_t>(j)] = spec.start + j * h;
  return v;
}

/// Grid of uniform initial conditions at fixed parameters.
struct IcMapSpec {
  double alpha0_min = 0.0, alpha0_max = 1.0;
  double theta0_min = 0.0, theta0_max = 0.5;
  int n_alpha = 51;
  int n_theta = 51;
  ModelParams base;
  GridSpec grid;
  RunSchedule schedule;

  void validate() const {
    if (!(alpha0_min <= alpha0_max)) throw std::invalid_argument("IcMapSpec: alpha0 range inverted");
    if (!(theta0_min <= theta0_max)) throw std::invalid_argument("IcMapSpec: theta0 range inverted");
    if (n_alpha < 1 || n_theta < 1) throw std::invalid_argument("IcMapSpec: grid must be >= 1x1");
    if (n_alpha == 1 && alpha0_min != alpha0_max)
      throw std::invalid_argument("IcMapSpec: n_alpha = 1 requires alpha0_min = alpha0_max");
    if (n_theta == 1 && theta0_min != theta0_max)
      throw std::invalid_argument("IcMapSpec: n_theta = 1 requires theta0_min = theta0_max");
    base.validate();
    grid.validate();
    schedule.validate();
  }
};

/// One completed run of a sweep: the axis value (or IC pair), its recorded
/// outlet series, and every diagnostic derived from it. A row that failed
/// numerically carries the failing cycle instead of data.
struct SweepRow {
  double param = 0.0;
  double alpha0 = 0.0;
  double theta0 = 0.0;
  bool failed = false;
  long fail_cycle = -1;
  std::string fail_reason;
  std::vector<double> alpha_out;
  std::vector<double> theta_out;
  OrbitClass orbit;
  EntropyResult entropy;
  Spectrum spectrum;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Worker-count resolution: explicit request, then the REVFLOW_WORKERS
/// environment variable, then hardware concurrency.
inline int resolve_workers(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("REVFLOW_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace detail {

struct RowTask {
  ModelParams params;
  double param = 0.0;
  double alpha0 = 0.0;
  double theta0 = 0.0;
};

inline void run_row(SweepRow& row, const RowTask& task, const GridSpec& grid,
                    const RunSchedule& sched, bool keep_series, bool keep_spectrum) {
  row.param = task.param;
  row.alpha0 = task.alpha0;
  row.theta0 = task.theta0;
  try {
    StroboSeries s = simulate(task.alpha0, task.theta0, task.params, grid, sched);
    row.orbit = classify_orbit(s.alpha_out);
    row.entropy = shannon_entropy(s.alpha_out, 100);
    if (keep_spectrum) row.spectrum = amplitude_spectrum(s.alpha_out);
    if (keep_series) {
      row.alpha_out = std::move(s.alpha_out);
      row.theta_out = std::move(s.theta_out);
    }
  } catch (const NumericalError& e) {
    row.failed = true;
    row.fail_cycle = e.cycle;
    row.fail_reason = e.what();
  }
}

/// Static round-robin partition of row indices over `n_workers` threads.
/// Every row is computed by exactly one thread into its own slot, so the
/// assembled result cannot depend on worker count or scheduling.
inline SweepResult run_tasks(const std::vector<RowTask>& tasks, const GridSpec& grid,
                             const RunSchedule& sched, bool keep_series, bool keep_spectrum,
                             int n_workers) {
  SweepResult result;
  result.rows.resize(tasks.size());
  const int workers = std::min<int>(resolve_workers(n_workers),
                                    static_cast<int>(tasks.size()) > 0 ? static_cast<int>(tasks.size()) : 1);
  auto body = [&](int w) {
    for (std::size_t i = static_cast<std::size_t>(w); i < tasks.size();
         i += static_cast<std::size_t>(workers))
      run_row(result.rows[i], tasks[i], grid, sched, keep_series, keep_spectrum);
  };
  if (workers <= 1) {
    body(0);
    return result;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        body(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

inline std::vector<RowTask> axis_tasks(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> values = axis_values(spec);
  std::vector<RowTask> tasks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    tasks[i].params = spec.base;
    tasks[i].param = values[i];
    tasks[i].alpha0 = spec.alpha0;
    tasks[i].theta0 = spec.theta0;
    if (spec.axis == SweepAxis::tau_r)
      tasks[i].params.tau_r = values[i];
    else
      tasks[i].params.da = values[i];
  }
  return tasks;
}

}  // namespace detail

/// All three axis sweeps run the identical simulations and derive every
/// diagnostic from the same recorded series; they differ only in which part
/// of the row downstream serialization reads.
inline SweepResult bifurcation_sweep(const SweepSpec& spec, int n_workers = 0) {
  return detail::run_tasks(detail::axis_tasks(spec), spec.grid, spec.schedule,
                           /*keep_series=*/true, /*keep_spectrum=*/true, n_workers);
}

inline SweepResult spectral_sweep(const SweepSpec& spec, int n_workers = 0) {
  return bifurcation_sweep(spec, n_workers);
}

inline SweepResult entropy_sweep(const SweepSpec& spec, int n_workers = 0) {
  return bifurcation_sweep(spec, n_workers);
}

/// Classification map over uniform initial conditions; rows are ordered with
/// alpha0 as the outer loop. Series and spectra are not retained (the map is
/// read through class, period and entropy only).
inline SweepResult ic_map(const IcMapSpec& spec, int n_workers = 0) {
  spec.validate();
  std::vector<detail::RowTask> tasks;
  tasks.reserve(static_cast<std::size_t>(spec.n_alpha) * static_cast<std::size_t>(spec.n_theta));
  const double ha = spec.n_alpha > 1 ? (spec.alpha0_max - spec.alpha0_min) / (spec.n_alpha - 1) : 0.0;
  const double ht = spec.n_theta > 1 ? (spec.theta0_max - spec.theta0_min) / (spec.n_theta - 1) : 0.0;
  for (int i = 0; i < spec.n_alpha; ++i)
    for (int j = 0; j < spec.n_theta; ++j) {
      detail::RowTask t;
      t.params = spec.base;
      t.alpha0 = spec.alpha0_min + i * ha;
      t.theta0 = spec.theta0_min + j * ht;
      t.param = t.alpha0;
      tasks.push_back(t);
    }
  return detail::run_tasks(tasks, spec.grid, spec.schedule,
                           /*keep_series=*/false, /*keep_spectrum=*/false, n_workers);
}

}  // namespace revflow
