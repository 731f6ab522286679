#pragma once

// Tabulated complex-refractive-index data: ingestion, eps''(omega) = 2 n k
// with log-log interpolation, low-frequency Drude extrapolation, a fitted
// C/omega^3 high-frequency tail, and the dispersion integral that carries
// the loss data onto the imaginary frequency axis.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::optical {

struct Sample {
  double omega_eV = 0.0;
  double n = 0.0;
  double k = 0.0;
};

// Low-frequency extrapolation of eps''. NoExtrapolation makes any pointwise
// evaluation outside the table an error and truncates the dispersion
// integral to the table's support. DrudeTail extends the loss below the
// table with a free-electron term and above it with the fitted power tail.
struct NoExtrapolation {};
struct DrudeTail {
  double plasma_eV = 0.0;     // omega_p of the extrapolating Drude form
  double relaxation_eV = 0.0; // gamma > 0
};
using ExtrapolationPolicy = std::variant<NoExtrapolation, DrudeTail>;

class Dataset {
public:
  Dataset(std::vector<Sample> samples, std::string source_label)
      : samples_(std::move(samples)), source_label_(std::move(source_label)) {
    if (samples_.size() < 2)
      throw std::invalid_argument("optical::Dataset: need at least 2 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const auto& s = samples_[i];
      if (!(s.omega_eV > 0.0) || !std::isfinite(s.omega_eV) || !std::isfinite(s.n) ||
          !std::isfinite(s.k) || s.n < 0.0 || s.k < 0.0)
        throw std::invalid_argument("optical::Dataset: invalid sample at row " +
                                    std::to_string(i + 1));
      if (i > 0 && !(samples_[i - 1].omega_eV < s.omega_eV))
        throw std::invalid_argument("optical::Dataset: omega not strictly increasing at row " +
                                    std::to_string(i + 1));
    }
    fit_high_tail();
  }

  const std::vector<Sample>& samples() const { return samples_; }
  const std::string& source_label() const { return source_label_; }
  double omega_min() const { return samples_.front().omega_eV; }
  double omega_max() const { return samples_.back().omega_eV; }

  // C in eps'' ~ C/omega^3, fitted to the top decade of the table.
  double high_tail_coeff() const { return high_tail_coeff_; }

private:
  void fit_high_tail() {
    const double lo = omega_max() / 10.0;
    double acc = 0.0;
    std::size_t cnt = 0;
    for (auto it = samples_.rbegin(); it != samples_.rend(); ++it) {
      if (it->omega_eV < lo && cnt >= 2) break;
      const double e2 = 2.0 * it->n * it->k;
      if (e2 > 0.0) {
        acc += std::log(e2) + 3.0 * std::log(it->omega_eV);
        ++cnt;
      }
      if (cnt >= 2 && it->omega_eV < lo) break;
    }
    high_tail_coeff_ = cnt ? std::exp(acc / static_cast<double>(cnt)) : 0.0;
  }

  std::vector<Sample> samples_;
  std::string source_label_;
  double high_tail_coeff_ = 0.0;
};

// CSV reader. Header `omega_eV,n,k`, one sample per row, `#` starts a
// comment. Errors carry the 1-based line number.
inline Dataset load_nk_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("optical: cannot open '" + path + "'");

  auto strip = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };

  std::string line;
  long lineno = 0;
  bool header_seen = false;
  std::vector<Sample> rows;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      std::string squashed;
      for (char c : t)
        if (c != ' ' && c != '\t') squashed += c;
      if (squashed != "omega_eV,n,k")
        throw parse_error("optical: expected header 'omega_eV,n,k', got '" + t + "'", lineno);
      header_seen = true;
      continue;
    }
    Sample s;
    double* out[3] = {&s.omega_eV, &s.n, &s.k};
    std::stringstream ss(t);
    std::string field;
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, field, ','))
        throw parse_error("optical: expected 3 comma-separated values", lineno);
      field = strip(field);
      char* end = nullptr;
      *out[i] = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size())
        throw parse_error("optical: bad number '" + field + "'", lineno);
    }
    std::string extra;
    if (std::getline(ss, extra, ',') && !strip(extra).empty())
      throw parse_error("optical: trailing fields after k", lineno);
    if (!(s.omega_eV > 0.0))
      throw parse_error("optical: omega_eV must be > 0", lineno);
    if (s.n < 0.0 || s.k < 0.0)
      throw parse_error("optical: n and k must be non-negative", lineno);
    if (!rows.empty() && !(rows.back().omega_eV < s.omega_eV))
      throw parse_error("optical: omega_eV not strictly increasing", lineno);
    rows.push_back(s);
  }
  if (!header_seen) throw parse_error("optical: file '" + path + "' has no header row");
  return Dataset(std::move(rows), path);
}

namespace detail {

// Log-log interpolation of one tabulated quantity; falls back to linear
// when a bracketing node is zero. Exact at the nodes.
inline double interp(const std::vector<Sample>& rows, double omega, double Sample::*field) {
  auto it = std::lower_bound(rows.begin(), rows.end(), omega,
                             [](const Sample& s, double w) { return s.omega_eV < w; });
  if (it != rows.end() && it->omega_eV == omega) return (*it).*field;
  const Sample& hi = *it;
  const Sample& lo = *(it - 1);
  const double va = lo.*field, vb = hi.*field;
  if (va > 0.0 && vb > 0.0) {
    const double t = std::log(omega / lo.omega_eV) / std::log(hi.omega_eV / lo.omega_eV);
    return std::exp(std::log(va) + t * (std::log(vb) - std::log(va)));
  }
  const double t = (omega - lo.omega_eV) / (hi.omega_eV - lo.omega_eV);
  return va + t * (vb - va);
}

inline double drude_loss(double plasma_eV, double gamma_eV, double omega) {
  return plasma_eV * plasma_eV * gamma_eV / (omega * (omega * omega + gamma_eV * gamma_eV));
}

} // namespace detail

// eps''(omega) from the table, with extrapolation per policy.
inline double eps_imag_from_data(const Dataset& data, const ExtrapolationPolicy& policy,
                                 double omega_eV) {
  if (!(omega_eV > 0.0))
    throw std::domain_error("optical::eps_imag_from_data: omega must be > 0");
  const auto& rows = data.samples();
  if (omega_eV >= data.omega_min() && omega_eV <= data.omega_max()) {
    const double n = detail::interp(rows, omega_eV, &Sample::n);
    const double k = detail::interp(rows, omega_eV, &Sample::k);
    return 2.0 * n * k;
  }
  const auto* tail = std::get_if<DrudeTail>(&policy);
  if (!tail)
    throw std::domain_error("optical::eps_imag_from_data: omega outside the table and no "
                            "extrapolation policy is set");
  if (!(tail->relaxation_eV > 0.0))
    throw std::invalid_argument("optical: DrudeTail relaxation must be > 0");
  if (omega_eV < data.omega_min())
    return detail::drude_loss(tail->plasma_eV, tail->relaxation_eV, omega_eV);
  return data.high_tail_coeff() / (omega_eV * omega_eV * omega_eV);
}

// eps(i xi) from the tabulated loss:
//   eps(i xi) = 1 + (2/pi) int_0^inf x eps''(x) / (x^2 + xi^2) dx  [+ wp^2/xi^2]
// The pole term is added only when include_plasma_pole is set. Under
// NoExtrapolation the integral runs over the table's support only; a Drude
// tail extends it to (0, inf). xi = 0 is allowed only in the truncated,
// pole-free case, where the static permittivity is finite.
inline double eps_imag_axis_from_data(const Dataset& data, const ExtrapolationPolicy& policy,
                                      bool include_plasma_pole, double plasma_eV, double xi_eV,
                                      const quad::Options& opt = {1e-9, 1e-14, 2'000'000}) {
  const auto* tail = std::get_if<DrudeTail>(&policy);
  if (tail && !(tail->relaxation_eV > 0.0))
    throw std::invalid_argument("optical: DrudeTail relaxation must be > 0");
  if (xi_eV == 0.0 && (include_plasma_pole || tail))
    throw std::domain_error("optical::eps_imag_axis_from_data: xi = 0 diverges for this policy");
  if (!(xi_eV >= 0.0))
    throw std::domain_error("optical::eps_imag_axis_from_data: xi must be >= 0");

  const double xi2 = xi_eV * xi_eV;
  const auto& rows = data.samples();
  quad::Options seg_opt = opt;
  seg_opt.abs_tol = 0.0; // per-segment floor set below from a first sweep

  // First pass: one non-adaptive Kronrod panel per table segment to learn
  // the magnitude, then refine each segment against a shared floor.
  double integral = 0.0;
  double coarse = 0.0;
  std::vector<double> seg_val(rows.size() - 1);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    auto f = [&](double x) {
      const double n = detail::interp(rows, x, &Sample::n);
      const double k = detail::interp(rows, x, &Sample::k);
      return x * (2.0 * n * k) / (x * x + xi2);
    };
    auto panel = quad::detail::gk15(f, rows[i].omega_eV, rows[i + 1].omega_eV);
    seg_val[i] = panel.value;
    coarse += std::abs(panel.value);
  }
  seg_opt.abs_tol = std::max(coarse, 1e-30) * opt.rel_tol / static_cast<double>(rows.size());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    auto f = [&](double x) {
      const double n = detail::interp(rows, x, &Sample::n);
      const double k = detail::interp(rows, x, &Sample::k);
      return x * (2.0 * n * k) / (x * x + xi2);
    };
    integral += quad::integrate(f, rows[i].omega_eV, rows[i + 1].omega_eV, seg_opt).value;
  }

  if (tail) {
    auto low = [&](double x) {
      return x * detail::drude_loss(tail->plasma_eV, tail->relaxation_eV, x) / (x * x + xi2);
    };
    integral += quad::integrate(low, 0.0, data.omega_min(), seg_opt).value;
    const double c3 = data.high_tail_coeff();
    if (c3 > 0.0) {
      auto high = [&](double x) { return c3 / (x * x * (x * x + xi2)); };
      integral += quad::integrate_to_infinity(high, data.omega_max(), data.omega_max(), seg_opt).value;
    }
  }

  double eps = 1.0 + 2.0 * integral / std::numbers::pi;
  if (include_plasma_pole) eps += plasma_eV * plasma_eV / xi2;
  return eps;
}

} // namespace casimir::optical
