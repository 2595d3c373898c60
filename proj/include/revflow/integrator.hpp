#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"

namespace revflow {

/// How many switching cycles to discard and how many to record afterwards.
/// `dt_target` <= 0 selects the step derived from the grid and parameters;
/// the actual step is tau_r / ceil(tau_r / dt_target), so a whole number of
/// steps tiles each switching interval and no switching instant is
/// interpolated.
struct RunSchedule {
  long n_transient = 500;
  long n_record = 512;
  double dt_target = 0.0;

  void validate() const {
    if (n_transient < 0) throw std::invalid_argument("RunSchedule: n_transient must be >= 0");
    if (n_record < 1) throw std::invalid_argument("RunSchedule: n_record must be >= 1");
  }

  friend bool operator==(const RunSchedule&, const RunSchedule&) = default;
};

/// Step target keeping the explicit scheme inside its stability region with
/// a 0.8 safety factor; the dispersive limit Pe dxi^2/2 dominates on the
/// grids of interest (0.002 on the default 101-node grid).
inline double default_dt_target(const ModelParams& p, const GridSpec& g) {
  const double dxi = g.dxi();
  const double pe_min = std::min(p.pe_m, p.pe_h / p.le);
  return 0.8 * std::min(dxi, 0.5 * pe_min * dxi * dxi);
}

/// Number of equal steps that tile one switching interval.
inline long steps_per_cycle(double tau_r, double dt_target) {
  if (!(dt_target > 0.0)) throw std::invalid_argument("steps_per_cycle: dt_target must be > 0");
  return static_cast<long>(std::ceil(tau_r / dt_target));
}

/// Classical fourth-order Runge-Kutta over the method-of-lines system, with
/// all stage storage preallocated. After each step the boundary nodes are
/// refreshed from the interior so the stored state stays consistent.
class Rk4Stepper {
 public:
  Rk4Stepper(const ModelParams& p, const GridSpec& g)
      : op_(p, g), n_(static_cast<std::size_t>(g.n_nodes)) {
    for (auto* v : {&k1a_, &k1t_, &k2a_, &k2t_, &k3a_, &k3t_, &k4a_, &k4t_, &ya_, &yt_})
      v->assign(n_, 0.0);
  }

  void step(ReactorState& s, double dt) {
    const std::size_t n = n_;
    double* a = s.alpha.data();
    double* t = s.theta.data();
    op_.eval(a, t, k1a_.data(), k1t_.data());
    stage(a, t, k1a_.data(), k1t_.data(), 0.5 * dt);
    op_.eval(ya_.data(), yt_.data(), k2a_.data(), k2t_.data());
    stage(a, t, k2a_.data(), k2t_.data(), 0.5 * dt);
    op_.eval(ya_.data(), yt_.data(), k3a_.data(), k3t_.data());
    stage(a, t, k3a_.data(), k3t_.data(), dt);
    op_.eval(ya_.data(), yt_.data(), k4a_.data(), k4t_.data());
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += w * (k1a_[i] + 2.0 * (k2a_[i] + k3a_[i]) + k4a_[i]);
      t[i] += w * (k1t_[i] + 2.0 * (k2t_[i] + k3t_[i]) + k4t_[i]);
    }
    apply_boundaries(s, op_.params(), op_.grid());
    s.tau += dt;
  }

 private:
  void stage(const double* a, const double* t, const double* ka, const double* kt, double h) {
    for (std::size_t i = 0; i < n_; ++i) {
      ya_[i] = a[i] + h * ka[i];
      yt_[i] = t[i] + h * kt[i];
    }
  }

  SpatialOperator op_;
  std::size_t n_;
  std::vector<double> k1a_, k1t_, k2a_, k2t_, k3a_, k3t_, k4a_, k4t_, ya_, yt_;
};

namespace detail {

inline void check_state(const ReactorState& s, long cycle) {
  for (std::size_t i = 0; i < s.alpha.size(); ++i) {
    const double a = s.alpha[i];
    const double t = s.theta[i];
    if (!std::isfinite(a) || !std::isfinite(t))
      throw NumericalError("integration produced a non-finite value at node " + std::to_string(i), cycle);
    if (a < -kAlphaDiverged || a > 1.0 + kAlphaDiverged)
      throw NumericalError("conversion degree diverged at node " + std::to_string(i) +
                               " (alpha = " + std::to_string(a) + ")",
                           cycle);
  }
}

// Recorded outlet samples are held to the tight physical range; transient
// interior wiggles are not.
inline void check_sample(double alpha_out, double theta_out, double beta, long cycle) {
  if (alpha_out < -kAlphaSlack || alpha_out > 1.0 + kAlphaSlack)
    throw NumericalError("recorded alpha_out left [0,1] (" + std::to_string(alpha_out) + ")", cycle);
  if (!(1.0 + beta * theta_out > 0.0))
    throw NumericalError("recorded theta_out outside domain (" + std::to_string(theta_out) + ")", cycle);
}

}  // namespace detail

/// One validated Runge-Kutta step as a pure function (the in-place stepper
/// above is the engine for long runs).
inline ReactorState step(const ReactorState& s, double dt, const ModelParams& p, const GridSpec& g) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  ReactorState out = s;
  Rk4Stepper stepper(p, g);
  try {
    stepper.step(out, dt);
  } catch (const std::domain_error& e) {
    throw NumericalError(e.what());
  }
  detail::check_state(out, -1);
  return out;
}

/// One point of the stroboscopic map: integrate over one switching interval
/// (tau_r / dt must be a whole number of steps), sample the outlet — always
/// the xi = 1 node of the computational frame — and reverse the flow.
struct CycleSample {
  ReactorState state;
  double alpha_out = 0.0;
  double theta_out = 0.0;
};

inline CycleSample run_cycle(const ReactorState& s, const ModelParams& p, const GridSpec& g,
                             double dt) {
  p.validate();
  g.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("run_cycle: dt must be > 0");
  const double ratio = p.tau_r / dt;
  const long steps = static_cast<long>(std::llround(ratio));
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
    throw std::invalid_argument("run_cycle: tau_r must be a whole number of steps");
  CycleSample out;
  out.state = s;
  Rk4Stepper stepper(p, g);
  try {
    for (long k = 0; k < steps; ++k) stepper.step(out.state, dt);
  } catch (const std::domain_error& e) {
    throw NumericalError(e.what());
  }
  detail::check_state(out.state, -1);
  out.alpha_out = out.state.alpha.back();
  out.theta_out = out.state.theta.back();
  detail::check_sample(out.alpha_out, out.theta_out, p.beta, -1);
  mirror_in_place(out.state);
  apply_boundaries(out.state, p, g);
  return out;
}

/// Advances `s` in place through `n_cycles` switching cycles (integrate,
/// validate, reverse). Failures carry the offending cycle index.
inline void advance_cycles(ReactorState& s, const ModelParams& p, const GridSpec& g,
                           long n_cycles, double dt_target = 0.0) {
  p.validate();
  g.validate();
  if (s.alpha.size() != static_cast<std::size_t>(g.n_nodes) || s.theta.size() != s.alpha.size())
    throw std::invalid_argument("advance_cycles: state size does not match grid");
  const double target = dt_target > 0.0 ? dt_target : default_dt_target(p, g);
  const long steps = steps_per_cycle(p.tau_r, target);
  const double dt = p.tau_r / static_cast<double>(steps);
  Rk4Stepper stepper(p, g);
  for (long c = 0; c < n_cycles; ++c) {
    try {
      for (long k = 0; k < steps; ++k) stepper.step(s, dt);
    } catch (const std::domain_error& e) {
      throw NumericalError(e.what(), c);
    }
    detail::check_state(s, c);
    mirror_in_place(s);
    apply_boundaries(s, p, g);
  }
}

/// Outlet values sampled once per switching cycle, at the cycle's end and
/// immediately before the flow reverses.
struct StroboSeries {
  std::vector<double> tau;        ///< sample times (end of each recorded cycle)
  std::vector<double> alpha_out;
  std::vector<double> theta_out;
  ModelParams params;             ///< parameters that produced the series
  double alpha0 = 0.0;            ///< uniform initial condition
  double theta0 = 0.0;
};

/// Runs the full stroboscopic protocol from a spatially uniform initial
/// condition (io = 0): discard `n_transient` cycles, then record the outlet
/// at the end of each of the following `n_record` cycles. If `final_state`
/// is non-null it receives the state after the last recorded reversal.
inline StroboSeries simulate(double alpha0, double theta0, const ModelParams& p,
                             const GridSpec& g, const RunSchedule& sched,
                             ReactorState* final_state = nullptr) {
  p.validate();
  g.validate();
  sched.validate();
  ReactorState s = uniform_state(alpha0, theta0, g);
  apply_boundaries(s, p, g);
  const double target = sched.dt_target > 0.0 ? sched.dt_target : default_dt_target(p, g);
  const long steps = steps_per_cycle(p.tau_r, target);
  const double dt = p.tau_r / static_cast<double>(steps);
  Rk4Stepper stepper(p, g);
  StroboSeries out;
  out.params = p;
  out.alpha0 = alpha0;
  out.theta0 = theta0;
  out.tau.reserve(static_cast<std::size_t>(sched.n_record));
  out.alpha_out.reserve(static_cast<std::size_t>(sched.n_record));
  out.theta_out.reserve(static_cast<std::size_t>(sched.n_record));
  const long total = sched.n_transient + sched.n_record;
  for (long c = 0; c < total; ++c) {
    try {
      for (long k = 0; k < steps; ++k) stepper.step(s, dt);
    } catch (const std::domain_error& e) {
      throw NumericalError(e.what(), c);
    }
    detail::check_state(s, c);
    if (c >= sched.n_transient) {
      detail::check_sample(s.alpha.back(), s.theta.back(), p.beta, c);
      out.tau.push_back(s.tau);
      out.alpha_out.push_back(s.alpha.back());
      out.theta_out.push_back(s.theta.back());
    }
    mirror_in_place(s);
    apply_boundaries(s, p, g);
  }
  if (final_state) *final_state = std::move(s);
  return out;
}

}  // namespace revflow
