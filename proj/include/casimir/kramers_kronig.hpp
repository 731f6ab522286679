#pragma once

// Principal-value quadrature and the dispersion relations satisfied by
// permittivities with a second-order pole at zero frequency:
//
//   eps'(w)  = 1 + (1/pi) P int eps''(x)/(x - w) dx - wp^2/w^2
//   eps''(w) = -(1/pi) P int [eps'(x) + wp^2/x^2]/(x - w) dx
//   eps(iw)  = 1 + (1/pi) P int x eps''(x)/(x^2 + w^2) dx + wp^2/w^2
//
// (integrals over the whole real axis; eps'' odd-extended, eps' even). The
// wp^2/w^2 pole contribution is carried analytically -- it is never a
// numerical integrand. Setting wp = 0 recovers the standard relations for
// pole-free permittivities.
//
// A simple pole at x0 is removed by folding the integrand about it:
//   P int_{x0-r}^{x0+r} f = int_0^r [f(x0+u) + f(x0-u)] du,
// where the odd pole part cancels exactly under the +-u pairing and the
// smooth remainder is integrated adaptively.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "casimir/quadrature.hpp"

namespace casimir::kk {

// Integrand for pv_integral. The sampler must be finite and continuous on
// the open domain except at the declared singularity (a simple pole).
// Either bound may be infinite.
struct PVIntegrand {
  std::function<double(double)> sampler;
  std::optional<double> singularity;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

struct KKResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct KKOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  std::size_t max_evals = 1'000'000;
};

namespace detail {

inline quad::Options piece_options(const KKOptions& o, int pieces) {
  quad::Options q;
  q.rel_tol = o.rel_tol;
  q.abs_tol = o.abs_tol / pieces;
  q.max_evals = o.max_evals / static_cast<std::size_t>(pieces);
  return q;
}

} // namespace detail

// Cauchy principal value of the integrand over its domain: symmetric
// excision about the singularity, symmetric R -> inf pairing at infinity.
inline KKResult pv_integral(const PVIntegrand& in, const KKOptions& opt = {}) {
  const double lo = in.lower, hi = in.upper;
  if (!(lo < hi)) throw std::invalid_argument("kk::pv_integral: empty domain");
  if (!in.sampler) throw std::invalid_argument("kk::pv_integral: no sampler");

  auto accumulate = [](KKResult& r, const quad::Result& q) {
    r.value += q.value;
    r.error_estimate += q.error;
    r.evaluations += q.evaluations;
  };

  KKResult res;
  const auto& f = in.sampler;

  if (!in.singularity) {
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    const auto q = detail::piece_options(opt, 1);
    if (lo_inf && hi_inf) accumulate(res, quad::integrate_real_line(f, 1.0, q));
    else if (hi_inf) accumulate(res, quad::integrate_to_infinity(f, lo, std::max(1.0, std::abs(lo)), q));
    else if (lo_inf) accumulate(res, quad::integrate_from_minus_infinity(f, hi, std::max(1.0, std::abs(hi)), q));
    else accumulate(res, quad::integrate(f, lo, hi, q));
    return res;
  }

  const double x0 = *in.singularity;
  if (!std::isfinite(x0) || !(lo < x0) || !(x0 < hi))
    throw std::domain_error("kk::pv_integral: singularity must lie strictly inside the domain");

  auto folded = [&f, x0](double u) { return f(x0 + u) + f(x0 - u); };
  const double r_left = x0 - lo;   // may be inf
  const double r_right = hi - x0;  // may be inf
  const double r = std::min(r_left, r_right);

  if (std::isinf(r)) {
    // Both bounds infinite: one folded half-line integral does it all.
    accumulate(res, quad::integrate_to_infinity(folded, 0.0, std::max(1.0, std::abs(x0)),
                                                detail::piece_options(opt, 1)));
    return res;
  }

  const bool has_left = r_left > r;
  const bool has_right = r_right > r;
  const int pieces = 1 + (has_left ? 1 : 0) + (has_right ? 1 : 0);
  const auto q = detail::piece_options(opt, pieces);

  accumulate(res, quad::integrate(folded, 0.0, r, q));
  if (has_left) {
    const double b = x0 - r;
    if (std::isinf(lo)) accumulate(res, quad::integrate_from_minus_infinity(f, b, std::max(1.0, std::abs(b)), q));
    else accumulate(res, quad::integrate(f, lo, b, q));
  }
  if (has_right) {
    const double a = x0 + r;
    if (std::isinf(hi)) accumulate(res, quad::integrate_to_infinity(f, a, std::max(1.0, std::abs(a)), q));
    else accumulate(res, quad::integrate(f, a, hi, q));
  }
  return res;
}

// eps'(omega) from a half-line loss sampler (odd extension applied
// internally). wp may be zero for pole-free materials.
inline double kk_real_from_imag(const std::function<double(double)>& eps_imag_sampler,
                                double omega_p_eV, double omega_eV, const KKOptions& opt = {}) {
  if (!(omega_eV > 0.0)) throw std::domain_error("kk::kk_real_from_imag: omega must be > 0");
  if (omega_p_eV < 0.0) throw std::domain_error("kk::kk_real_from_imag: omega_p must be >= 0");
  // Odd extension halves the domain: the kernel becomes 2x/(x^2 - w^2).
  PVIntegrand in;
  in.sampler = [&eps_imag_sampler, omega_eV](double x) {
    return 2.0 * x * eps_imag_sampler(x) / (x * x - omega_eV * omega_eV);
  };
  in.singularity = omega_eV;
  in.lower = 0.0;
  const auto pv = pv_integral(in, opt);
  return 1.0 + pv.value / std::numbers::pi - omega_p_eV * omega_p_eV / (omega_eV * omega_eV);
}

// eps''(omega) from a half-line sampler of eps' (even extension applied
// internally). The combination eps'(x) + wp^2/x^2 must stay finite as
// x -> 0; a divergence means the supplied wp does not match the sampler.
inline double kk_imag_from_real(const std::function<double(double)>& eps_real_sampler,
                                double omega_p_eV, double omega_eV, const KKOptions& opt = {}) {
  if (!(omega_eV > 0.0)) throw std::domain_error("kk::kk_imag_from_real: omega must be > 0");
  if (omega_p_eV < 0.0) throw std::domain_error("kk::kk_imag_from_real: omega_p must be >= 0");
  const double f0 = omega_p_eV * omega_p_eV;
  auto regular = [&eps_real_sampler, f0](double x) { return eps_real_sampler(x) + f0 / (x * x); };

  double prev = std::abs(regular(1e-3));
  for (double x : {1e-4, 1e-5}) {
    const double cur = std::abs(regular(x));
    if (cur > 30.0 * prev + 1.0)
      throw std::domain_error("kk::kk_imag_from_real: eps'(x) + wp^2/x^2 diverges as x -> 0 "
                              "(mismatched omega_p)");
    prev = cur;
  }

  // Even extension: kernel 2w/(x^2 - w^2); the constant part of the
  // bracket integrates to zero in the principal-value sense.
  PVIntegrand in;
  in.sampler = [regular, omega_eV](double x) {
    return 2.0 * omega_eV * regular(x) / (x * x - omega_eV * omega_eV);
  };
  in.singularity = omega_eV;
  in.lower = 0.0;
  const auto pv = pv_integral(in, opt);
  return -pv.value / std::numbers::pi;
}

// eps(i xi) from a half-line loss sampler. The integrand is even, so no
// principal value is needed on the half line.
inline double kk_imag_axis(const std::function<double(double)>& eps_imag_sampler,
                           double omega_p_eV, double xi_eV, const KKOptions& opt = {}) {
  if (!(xi_eV > 0.0)) throw std::domain_error("kk::kk_imag_axis: xi must be > 0");
  if (omega_p_eV < 0.0) throw std::domain_error("kk::kk_imag_axis: omega_p must be >= 0");
  PVIntegrand in;
  in.sampler = [&eps_imag_sampler, xi_eV](double x) {
    return 2.0 * x * eps_imag_sampler(x) / (x * x + xi_eV * xi_eV);
  };
  in.lower = 0.0;
  const auto pv = pv_integral(in, opt);
  return 1.0 + pv.value / std::numbers::pi + omega_p_eV * omega_p_eV / (xi_eV * xi_eV);
}

// Both quartic integrals behind the oscillator substitution check:
//   int dy/(y^4 - 2 b y^2 + 1) = int y^2 dy/(...) = pi/sqrt(2(1-b)),  b < 1.
struct OscillatorIdentity {
  double i0 = 0.0;
  double i2 = 0.0;
  double closed_form = 0.0;
};

inline OscillatorIdentity verify_oscillator_identity(double beta, const KKOptions& opt = {}) {
  if (!(beta < 1.0))
    throw std::domain_error("kk::verify_oscillator_identity: requires beta < 1");
  auto quartic = [beta](double y) {
    const double y2 = y * y;
    return (y2 - beta) * (y2 - beta) + (1.0 - beta * beta);
  };
  PVIntegrand i0;
  i0.sampler = [quartic](double y) { return 1.0 / quartic(y); };
  PVIntegrand i2;
  i2.sampler = [quartic](double y) {
    const double y2 = y * y;
    return y2 / quartic(y);
  };
  OscillatorIdentity out;
  out.i0 = pv_integral(i0, opt).value;
  out.i2 = pv_integral(i2, opt).value;
  out.closed_form = std::numbers::pi / std::sqrt(2.0 * (1.0 - beta));
  return out;
}

} // namespace casimir::kk
