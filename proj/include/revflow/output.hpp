#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "analysis.hpp"
#include "integrator.hpp"
#include "sweep.hpp"

namespace revflow {

/// Decimal rendering with 17 significant digits (round-trips any double),
/// locale-independent.
inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open for writing: " + p.string());
  return f;
}

inline void finish(std::ofstream& f, const std::filesystem::path& p) {
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace detail

inline void write_series_csv(const std::filesystem::path& p, const StroboSeries& s) {
  auto f = detail::open_out(p);
  f << "n,tau,alpha_out,theta_out\n";
  for (std::size_t i = 0; i < s.alpha_out.size(); ++i)
    f << i << ',' << fmt_double(s.tau[i]) << ',' << fmt_double(s.alpha_out[i]) << ','
      << fmt_double(s.theta_out[i]) << '\n';
  detail::finish(f, p);
}

inline void write_poincare_csv(const std::filesystem::path& p, const StroboSeries& s) {
  auto f = detail::open_out(p);
  f << "alpha_out,theta_out\n";
  for (std::size_t i = 0; i < s.alpha_out.size(); ++i)
    f << fmt_double(s.alpha_out[i]) << ',' << fmt_double(s.theta_out[i]) << '\n';
  detail::finish(f, p);
}

/// One row per retained stroboscopic sample per axis value; failed rows
/// contribute no samples (they are reported in classes.csv instead).
inline void write_bifurcation_csv(const std::filesystem::path& p, const SweepResult& r) {
  auto f = detail::open_out(p);
  f << "param,alpha_out\n";
  for (const SweepRow& row : r.rows) {
    if (row.failed) continue;
    const std::string param = fmt_double(row.param);
    for (double v : row.alpha_out) f << param << ',' << fmt_double(v) << '\n';
  }
  detail::finish(f, p);
}

inline void write_classes_csv(const std::filesystem::path& p, const SweepResult& r) {
  auto f = detail::open_out(p);
  f << "param,class,period,entropy\n";
  for (const SweepRow& row : r.rows) {
    if (row.failed) {
      f << fmt_double(row.param) << ",failed,0,nan\n";
    } else {
      f << fmt_double(row.param) << ',' << to_string(row.orbit.kind) << ',' << row.orbit.period
        << ',' << fmt_double(row.entropy.entropy) << '\n';
    }
  }
  detail::finish(f, p);
}

inline void write_spectrum_csv(const std::filesystem::path& p, const Spectrum& s) {
  auto f = detail::open_out(p);
  f << "k,amplitude\n";
  for (std::size_t k = 0; k < s.amplitudes.size(); ++k)
    f << k << ',' << fmt_double(s.amplitudes[k]) << '\n';
  detail::finish(f, p);
}

/// Amplitudes below 1e-12 are omitted to bound the file size; failed rows are
/// skipped entirely.
inline void write_spectrum_sweep_csv(const std::filesystem::path& p, const SweepResult& r) {
  auto f = detail::open_out(p);
  f << "param,k,amplitude\n";
  for (const SweepRow& row : r.rows) {
    if (row.failed) continue;
    const std::string param = fmt_double(row.param);
    for (std::size_t k = 0; k < row.spectrum.amplitudes.size(); ++k) {
      const double a = row.spectrum.amplitudes[k];
      if (a < 1e-12) continue;
      f << param << ',' << k << ',' << fmt_double(a) << '\n';
    }
  }
  detail::finish(f, p);
}

inline void write_entropy_csv(const std::filesystem::path& p, const SweepResult& r) {
  auto f = detail::open_out(p);
  f << "param,entropy\n";
  for (const SweepRow& row : r.rows) {
    if (row.failed)
      f << fmt_double(row.param) << ",nan\n";
    else
      f << fmt_double(row.param) << ',' << fmt_double(row.entropy.entropy) << '\n';
  }
  detail::finish(f, p);
}

inline void write_icmap_csv(const std::filesystem::path& p, const SweepResult& r) {
  auto f = detail::open_out(p);
  f << "alpha0,theta0,class,period,entropy\n";
  for (const SweepRow& row : r.rows) {
    if (row.failed) {
      f << fmt_double(row.alpha0) << ',' << fmt_double(row.theta0) << ",failed,0,nan\n";
    } else {
      f << fmt_double(row.alpha0) << ',' << fmt_double(row.theta0) << ','
        << to_string(row.orbit.kind) << ',' << row.orbit.period << ','
        << fmt_double(row.entropy.entropy) << '\n';
    }
  }
  detail::finish(f, p);
}

inline void write_text_file(const std::filesystem::path& p, const std::string& text) {
  auto f = detail::open_out(p);
  f << text;
  detail::finish(f, p);
}

// ---- gnuplot scripts -------------------------------------------------------
// Plain-text companions that render the CSVs; run with `gnuplot -p <file>`.

inline void write_series_plot(const std::filesystem::path& p) {
  write_text_file(p,
                  "set datafile separator ','\n"
                  "set xlabel 'n'\n"
                  "set ylabel 'outlet value'\n"
                  "plot 'series.csv' skip 1 using 1:3 with linespoints pt 7 ps 0.4 title 'alpha', \\\n"
                  "     'series.csv' skip 1 using 1:4 with linespoints pt 6 ps 0.4 title 'theta'\n");
}

inline void write_bifurcation_plot(const std::filesystem::path& p, const char* xlabel) {
  write_text_file(p, std::string("set datafile separator ','\n"
                                 "set xlabel '") +
                         xlabel +
                         "'\n"
                         "set ylabel 'alpha_out'\n"
                         "set key off\n"
                         "plot 'bifurcation.csv' skip 1 using 1:2 with dots\n");
}

/// The k = 0 (mean-value) amplitude dwarfs the harmonics, so the plot clamps
/// it to `dc_cap`; the data file itself is left uncapped.
inline void write_spectrum_plot(const std::filesystem::path& p, double dc_cap) {
  write_text_file(p, std::string("set datafile separator ','\n"
                                 "set xlabel 'k'\n"
                                 "set ylabel 'amplitude'\n"
                                 "set key off\n"
                                 "cap = ") +
                         fmt_double(dc_cap) +
                         "\n"
                         "plot 'spectrum.csv' skip 1 using 1:($1 == 0 ? ($2 > cap ? cap : $2) : $2) "
                         "with impulses\n");
}

inline void write_entropy_plot(const std::filesystem::path& p, const char* xlabel) {
  write_text_file(p, std::string("set datafile separator ','\n"
                                 "set xlabel '") +
                         xlabel +
                         "'\n"
                         "set ylabel 'entropy [bits]'\n"
                         "set key off\n"
                         "plot 'entropy.csv' skip 1 using 1:2 with linespoints pt 7 ps 0.3\n");
}

inline void write_icmap_plot(const std::filesystem::path& p) {
  write_text_file(p,
                  "set datafile separator ','\n"
                  "set xlabel 'alpha0'\n"
                  "set ylabel 'theta0'\n"
                  "set cblabel 'period (0 = aperiodic)'\n"
                  "plot 'icmap.csv' skip 1 using 1:2:4 with points pt 5 ps 1 palette notitle\n");
}

inline void write_poincare_plot(const std::filesystem::path& p) {
  write_text_file(p,
                  "set datafile separator ','\n"
                  "set xlabel 'alpha_out'\n"
                  "set ylabel 'theta_out'\n"
                  "set key off\n"
                  "plot 'poincare.csv' skip 1 using 1:2 with points pt 7 ps 0.4\n");
}

}  // namespace revflow
