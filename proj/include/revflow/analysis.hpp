#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "integrator.hpp"

namespace revflow {

/// One-sided amplitude-per-harmonic representation of a sampled series:
/// |X[k]| with X[k] = (1/N) sum_n x_n exp(-2 pi i k n / N).
struct Spectrum {
  std::vector<double> amplitudes;
  std::size_t n_samples = 0;
};

namespace detail {

inline void require_finite(std::span<const double> x, const char* who) {
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite sample");
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 transform with direct (std::polar) twiddles so the result
// matches the plain summation to machine precision.
inline void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto w = std::polar(1.0, ang * static_cast<double>(k));
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

// O(N^2) summation; twiddles indexed modulo N so large k*n products do not
// lose angular precision.
inline std::vector<std::complex<double>> dft_direct(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> w(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += x[j] * w[(k * j) % n];
    out[k] = acc;
  }
  return out;
}

}  // namespace detail

inline Spectrum amplitude_spectrum(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("amplitude_spectrum: empty series");
  detail::require_finite(x, "amplitude_spectrum");
  const std::size_t n = x.size();
  std::vector<std::complex<double>> freq;
  if (detail::is_pow2(n)) {
    freq.assign(x.begin(), x.end());
    detail::fft_pow2(freq);
  } else {
    freq = detail::dft_direct(x);
  }
  Spectrum s;
  s.n_samples = n;
  s.amplitudes.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) s.amplitudes[k] = std::abs(freq[k]) * scale;
  return s;
}

/// Base-2 information entropy of the sample distribution over `n_bins` equal
/// sub-intervals of the observed range.
struct EntropyResult {
  double entropy = 0.0;
  int n_bins = 0;
  int occupied_bins = 0;
};

inline EntropyResult shannon_entropy(std::span<const double> x, int n_bins = 100) {
  if (x.empty()) throw std::invalid_argument("shannon_entropy: empty series");
  if (n_bins < 1) throw std::invalid_argument("shannon_entropy: n_bins must be >= 1");
  detail::require_finite(x, "shannon_entropy");
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it, range = *hi_it - *lo_it;
  std::vector<long> counts(static_cast<std::size_t>(n_bins), 0);
  if (range > 0.0) {
    for (double v : x) {
      auto b = static_cast<std::size_t>((v - lo) / range * n_bins);
      if (b >= counts.size()) b = counts.size() - 1;
      ++counts[b];
    }
  } else {
    counts[0] = static_cast<long>(x.size());
  }
  EntropyResult r;
  r.n_bins = n_bins;
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (long c : counts) {
    if (c == 0) continue;
    ++r.occupied_bins;
    const double p = c * inv_n;
    r.entropy -= p * std::log2(p);
  }
  if (r.entropy < 0.0) r.entropy = 0.0;  // guard against -0 from rounding
  return r;
}

/// Entropy of an ideal M-periodic orbit with equiprobable, well-separated
/// values: log2(M).
inline double expected_entropy(int m) {
  if (m < 1) throw std::invalid_argument("expected_entropy: period must be >= 1");
  return std::log2(static_cast<double>(m));
}

enum class OrbitKind { stationary, periodic, aperiodic };

inline const char* to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::stationary: return "stationary";
    case OrbitKind::periodic: return "periodic";
    default: return "aperiodic";
  }
}

struct OrbitClass {
  OrbitKind kind = OrbitKind::stationary;
  int period = 1;           ///< M for periodic, 1 for stationary, 0 for aperiodic
  int distinct_values = 1;  ///< tolerance-distinct sample values observed
};

/// Clusters the samples into tolerance-distinct values (cluster spread at
/// most rel_tol times the observed range, with a 1e-9 absolute floor), then
/// decides: one cluster = stationary; k <= max_period clusters visited in an
/// exactly k-periodic order = periodic(k); anything else = aperiodic.
inline OrbitClass classify_orbit(std::span<const double> x, double rel_tol = 1e-4,
                                 int max_period = 32) {
  if (x.empty()) throw std::invalid_argument("classify_orbit: empty series");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("classify_orbit: rel_tol must be > 0");
  if (max_period < 1) throw std::invalid_argument("classify_orbit: max_period must be >= 1");
  detail::require_finite(x, "classify_orbit");
  const std::size_t n = x.size();

  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double tol = std::max(rel_tol * (*hi_it - *lo_it), 1e-9);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<int> label(n);
  int k = 0;
  double cluster_lo = x[order[0]];
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[order[i]];
    if (v - cluster_lo > tol) {
      ++k;
      cluster_lo = v;
    }
    label[order[i]] = k;
  }
  ++k;  // count, not last index

  OrbitClass oc;
  oc.distinct_values = k;
  if (k == 1) {
    oc.kind = OrbitKind::stationary;
    oc.period = 1;
    return oc;
  }
  if (k <= max_period) {
    bool cyclic = true;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < n; ++i)
      if (label[i] != label[i + static_cast<std::size_t>(k)]) {
        cyclic = false;
        break;
      }
    if (cyclic) {
      oc.kind = OrbitKind::periodic;
      oc.period = k;
      return oc;
    }
  }
  oc.kind = OrbitKind::aperiodic;
  oc.period = 0;
  return oc;
}

/// The stroboscopic section as explicit (alpha_out, theta_out) pairs.
inline std::vector<std::pair<double, double>> poincare_points(const StroboSeries& s) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(s.alpha_out.size());
  for (std::size_t i = 0; i < s.alpha_out.size(); ++i)
    pts.emplace_back(s.alpha_out[i], s.theta_out[i]);
  return pts;
}

}  // namespace revflow
