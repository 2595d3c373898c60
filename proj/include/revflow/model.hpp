#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revflow {

/// Dimensionless constants of the reverse-flow reactor model plus the
/// switching time tau_r between two consecutive flow reversals.
struct ModelParams {
  double gamma = 15.0;   ///< activation-energy number
  double beta = 2.0;     ///< adiabatic-temperature-rise number
  double m = 1.5;        ///< reaction order
  double delta = 3.0;    ///< heat-exchange coefficient
  double theta_h = 0.0;  ///< coolant temperature
  double pe_m = 50.0;    ///< mass Peclet number
  double pe_h = 50.0;    ///< heat Peclet number
  double le = 1.0;       ///< Lewis number
  double da = 0.13;      ///< Damkohler number
  double tau_r = 5.5;    ///< switching time

  void validate() const {
    auto bad = [](const char* what) { throw std::invalid_argument(std::string("ModelParams: ") + what); };
    if (!(pe_m > 0.0)) bad("pe_m must be > 0");
    if (!(pe_h > 0.0)) bad("pe_h must be > 0");
    if (!(le > 0.0)) bad("le must be > 0");
    if (!(tau_r > 0.0)) bad("tau_r must be > 0");
    if (!(da >= 0.0)) bad("da must be >= 0");
    if (!(m >= 0.0)) bad("m must be >= 0");
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Uniform spatial grid on xi in [0,1].
struct GridSpec {
  int n_nodes = 101;

  double dxi() const { return 1.0 / (n_nodes - 1); }

  void validate() const {
    if (n_nodes < 3) throw std::invalid_argument("GridSpec: n_nodes must be >= 3");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Discretized profiles in the computational frame, where flow is always in
/// the +xi direction. `io` tracks which physical end is the current outlet
/// (it flips at every reversal); `tau` is the current dimensionless time.
struct ReactorState {
  std::vector<double> alpha;
  std::vector<double> theta;
  int io = 0;
  double tau = 0.0;
};

/// Thrown when the integration produces NaN/Inf or leaves the physical
/// range of the conversion degree. `cycle` is the switching cycle at which
/// the failure occurred (-1 when not attributable to a cycle).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what, long cycle_ = -1)
      : std::runtime_error(what), cycle(cycle_) {}
  long cycle;
};

/// Allowed overshoot of recorded outlet samples beyond [0,1] before a run is
/// declared failed. Interior nodes may over/undershoot further during stiff
/// ignition transients on coarse grids; they are only held to kAlphaDiverged.
inline constexpr double kAlphaSlack = 1e-6;

/// Overshoot at any node that counts as divergence rather than a transient.
inline constexpr double kAlphaDiverged = 0.5;

inline ReactorState uniform_state(double alpha0, double theta0, const GridSpec& g) {
  ReactorState s;
  s.alpha.assign(static_cast<std::size_t>(g.n_nodes), alpha0);
  s.theta.assign(static_cast<std::size_t>(g.n_nodes), theta0);
  return s;
}

namespace detail {

// (1 - alpha)^m with fast paths for the common exponents.
inline double pow_m(double base, double m) {
  if (m == 1.5) return base * std::sqrt(base);
  if (m == 1.0) return base;
  if (m == 2.0) return base * base;
  if (m == 0.5) return std::sqrt(base);
  return std::pow(base, m);
}

inline double upwind_gradient(const double* u, std::size_t i, double inv_dxi) {
  return (u[i] - u[i - 1]) * inv_dxi;
}

// Three-point second difference; `scale` carries 1/dxi^2 and any diffusivity.
inline double second_difference(const double* u, std::size_t i, double scale) {
  return (u[i + 1] - 2.0 * u[i] + u[i - 1]) * scale;
}

}  // namespace detail

/// Kinetic source term Da (1-alpha)^m exp(gamma beta theta / (1 + beta theta)).
/// The base (1-alpha) is clamped at zero so a transient overshoot alpha > 1
/// saturates the reaction instead of producing NaN.
inline double phi1(double alpha, double theta, const ModelParams& p) {
  const double denom = 1.0 + p.beta * theta;
  if (!(denom > 0.0))
    throw std::domain_error("phi1: 1 + beta*theta must be positive (theta = " + std::to_string(theta) + ")");
  const double base = std::max(1.0 - alpha, 0.0);
  return p.da * detail::pow_m(base, p.m) * std::exp(p.gamma * p.beta * theta / denom);
}

/// Heat source term: reaction heat plus external exchange.
inline double phi2(double alpha, double theta, const ModelParams& p) {
  return phi1(alpha, theta, p) + p.delta * (p.theta_h - theta);
}

/// Boundary node values eliminated from the Danckwerts conditions with
/// three-point one-sided differences: the inlet relation u(0) = (1/Pe) u'(0)
/// is solved for u(0); the outlet u'(1) = 0 is solved for u(1).
struct BoundaryValues {
  double alpha_in, theta_in;
  double alpha_out, theta_out;
};

namespace detail {

inline double inlet_value(const double* u, double pe, double dxi) {
  return (4.0 * u[1] - u[2]) / (2.0 * pe * dxi + 3.0);
}

inline double outlet_value(const double* u, std::size_t n) {
  return (4.0 * u[n - 2] - u[n - 3]) / 3.0;
}

// n == 3: the two one-sided stencils share the interior node and each other's
// boundary node, so the pair is solved as a coupled 2x2 system.
inline void boundary_pair_n3(const double* u, double pe, double dxi, double& in, double& out) {
  const double k = 2.0 * pe * dxi + 3.0;
  in = 8.0 * u[1] / (3.0 * k - 1.0);
  out = (4.0 * u[1] - in) / 3.0;
}

}  // namespace detail

inline BoundaryValues boundary_values(const double* alpha, const double* theta,
                                      const ModelParams& p, const GridSpec& g) {
  const auto n = static_cast<std::size_t>(g.n_nodes);
  const double dxi = g.dxi();
  BoundaryValues bv{};
  if (n == 3) {
    detail::boundary_pair_n3(alpha, p.pe_m, dxi, bv.alpha_in, bv.alpha_out);
    detail::boundary_pair_n3(theta, p.pe_h, dxi, bv.theta_in, bv.theta_out);
  } else {
    bv.alpha_in = detail::inlet_value(alpha, p.pe_m, dxi);
    bv.theta_in = detail::inlet_value(theta, p.pe_h, dxi);
    bv.alpha_out = detail::outlet_value(alpha, n);
    bv.theta_out = detail::outlet_value(theta, n);
  }
  return bv;
}

/// Overwrites the four boundary entries of `s` with the values implied by
/// the interior profile, so a stored state always satisfies the discrete
/// boundary conditions.
inline void apply_boundaries(ReactorState& s, const ModelParams& p, const GridSpec& g) {
  const BoundaryValues bv = boundary_values(s.alpha.data(), s.theta.data(), p, g);
  const auto last = s.alpha.size() - 1;
  s.alpha[0] = bv.alpha_in;
  s.theta[0] = bv.theta_in;
  s.alpha[last] = bv.alpha_out;
  s.theta[last] = bv.theta_out;
}

/// Spatial right-hand side of the balance equations, preassembled for
/// repeated evaluation. Interior nodes combine first-order upwind convection,
/// central second-difference dispersion and the source terms; boundary nodes
/// are algebraically constrained and get zero time derivative.
class SpatialOperator {
 public:
  SpatialOperator(const ModelParams& p, const GridSpec& g)
      : p_(p),
        g_(g),
        n_(static_cast<std::size_t>(g.n_nodes)),
        inv_dxi_(1.0 / g.dxi()),
        disp_m_(inv_dxi_ * inv_dxi_ / p.pe_m),
        disp_h_(inv_dxi_ * inv_dxi_ / p.pe_h),
        inv_le_(1.0 / p.le),
        gb_(p.gamma * p.beta),
        work_a_(n_),
        work_t_(n_) {}

  const ModelParams& params() const { return p_; }
  const GridSpec& grid() const { return g_; }

  /// dalpha/dtheta must hold n_nodes entries each. Throws std::domain_error
  /// if any node reaches 1 + beta*theta <= 0.
  void eval(const double* alpha, const double* theta, double* dalpha, double* dtheta) {
    const std::size_t n = n_;
    double* a = work_a_.data();
    double* t = work_t_.data();
    std::copy(alpha, alpha + n, a);
    std::copy(theta, theta + n, t);
    const BoundaryValues bv = boundary_values(a, t, p_, g_);
    a[0] = bv.alpha_in;
    t[0] = bv.theta_in;
    a[n - 1] = bv.alpha_out;
    t[n - 1] = bv.theta_out;

    const double da_coef = p_.da;
    const double m = p_.m;
    const double beta = p_.beta;
    const double delta = p_.delta;
    const double theta_h = p_.theta_h;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double ai = a[i];
      const double ti = t[i];
      const double denom = 1.0 + beta * ti;
      if (!(denom > 0.0))
        throw std::domain_error("spatial_rhs: 1 + beta*theta <= 0 at node " + std::to_string(i));
      const double rate =
          da_coef * detail::pow_m(std::max(1.0 - ai, 0.0), m) * std::exp(gb_ * ti / denom);
      dalpha[i] = -detail::upwind_gradient(a, i, inv_dxi_) +
                  detail::second_difference(a, i, disp_m_) + rate;
      dtheta[i] = (-detail::upwind_gradient(t, i, inv_dxi_) +
                   detail::second_difference(t, i, disp_h_) + rate + delta * (theta_h - ti)) *
                  inv_le_;
    }
    dalpha[0] = dtheta[0] = 0.0;
    dalpha[n - 1] = dtheta[n - 1] = 0.0;
  }

 private:
  ModelParams p_;
  GridSpec g_;
  std::size_t n_;
  double inv_dxi_, disp_m_, disp_h_, inv_le_, gb_;
  std::vector<double> work_a_, work_t_;
};

struct RhsEval {
  std::vector<double> dalpha;
  std::vector<double> dtheta;
};

/// One-shot right-hand-side evaluation. Throws NumericalError if any
/// derivative comes out non-finite.
inline RhsEval spatial_rhs(const ReactorState& s, const ModelParams& p, const GridSpec& g) {
  if (s.alpha.size() != static_cast<std::size_t>(g.n_nodes) || s.theta.size() != s.alpha.size())
    throw std::invalid_argument("spatial_rhs: state size does not match grid");
  RhsEval r;
  r.dalpha.resize(s.alpha.size());
  r.dtheta.resize(s.theta.size());
  SpatialOperator op(p, g);
  op.eval(s.alpha.data(), s.theta.data(), r.dalpha.data(), r.dtheta.data());
  for (std::size_t i = 0; i < r.dalpha.size(); ++i)
    if (!std::isfinite(r.dalpha[i]) || !std::isfinite(r.dtheta[i]))
      throw NumericalError("spatial_rhs: non-finite derivative at node " + std::to_string(i));
  return r;
}

/// Flow reversal as a spatial reflection: profiles are reversed end-to-end
/// and the outlet index flips. Applying it twice restores the state.
inline void mirror_in_place(ReactorState& s) {
  std::reverse(s.alpha.begin(), s.alpha.end());
  std::reverse(s.theta.begin(), s.theta.end());
  s.io = 1 - s.io;
}

inline ReactorState mirror(const ReactorState& s) {
  ReactorState out = s;
  mirror_in_place(out);
  return out;
}

}  // namespace revflow
