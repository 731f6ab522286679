#pragma once

// Finite-temperature free energy of two parallel plates, its T = 0 limit,
// and the sphere-plate force in the proximity force approximation.
//
// With y = 2 a q, y_l = 2 a xi_l / (hbar c):
//
//   F(a,T) = (kB T / 8 pi a^2) * sum'_{l>=0} int_{y_l}^inf y dy
//              [ ln(1 - rTM^2 e^-y) + ln(1 - rTE^2 e^-y) ],
//
// prime = half weight on l = 0. The T = 0 energy replaces the Matsubara sum
// by (1/2pi) int_0^inf dxi of the same integrand. The l = 0 term is always
// taken from the analytic zero-frequency limit of the model kind, never
// from a numeric xi -> 0 evaluation.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/models.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::lifshitz {

// Zero-frequency behaviour of a material. It decides the l = 0 reflection
// coefficients: the TE zero mode separates plasma-like responses (finite
// ytp) from Drude-like ones (rTE = 0).
struct IdealMetalZero {};
struct PlasmaZero {
  double plasma_eV = 0.0;
};
struct DrudeZero {};
struct DielectricZero {
  double eps_static = 1.0;
};
using ZeroModeKind = std::variant<IdealMetalZero, PlasmaZero, DrudeZero, DielectricZero>;

// eps(i xi) sampler for xi > 0 (may return +inf for an ideal metal) plus
// the zero-mode descriptor and a label for table output.
struct ImagAxisResponse {
  std::function<double(double)> eps;
  ZeroModeKind zero_mode;
  std::string label;
};

inline ImagAxisResponse ideal_metal() {
  return {[](double) { return std::numeric_limits<double>::infinity(); }, IdealMetalZero{},
          "ideal-metal"};
}

inline ImagAxisResponse vacuum() {
  return {[](double) { return 1.0; }, DielectricZero{1.0}, "vacuum"};
}

inline ImagAxisResponse response_from_model(const models::PermittivityModel& m) {
  models::validate(m);
  return std::visit(
      [&m](const auto& v) -> ImagAxisResponse {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, models::Tabulated>) {
          auto sampler = [v](double xi) {
            return optical::eps_imag_axis_from_data(*v.data, v.policy, v.include_plasma_pole,
                                                    v.plasma_eV, xi);
          };
          ZeroModeKind zero;
          if (v.include_plasma_pole) {
            zero = PlasmaZero{v.plasma_eV};
          } else if (std::holds_alternative<optical::DrudeTail>(v.policy)) {
            zero = DrudeZero{};
          } else {
            zero = DielectricZero{optical::eps_imag_axis_from_data(*v.data, v.policy, false,
                                                                   v.plasma_eV, 0.0)};
          }
          return {sampler, zero, models::kind_name(m)};
        } else if constexpr (std::is_same_v<T, models::Drude>) {
          auto copy = v;
          return {[copy](double xi) { return models::eval_imag_axis(models::PermittivityModel{copy}, xi); },
                  DrudeZero{}, models::kind_name(m)};
        } else {
          auto copy = v;
          return {[copy](double xi) { return models::eval_imag_axis(models::PermittivityModel{copy}, xi); },
                  PlasmaZero{v.plasma_eV}, models::kind_name(m)};
        }
      },
      m);
}

// Matsubara energy xi_l = 2 pi kB T l in eV; T > 0.
inline double matsubara_frequency(double T_kelvin, long l) {
  if (!(T_kelvin > 0.0))
    throw std::domain_error("lifshitz::matsubara_frequency: T must be > 0 "
                            "(use the zero-temperature energy instead)");
  if (l < 0) throw std::domain_error("lifshitz::matsubara_frequency: l must be >= 0");
  return 2.0 * std::numbers::pi * constants::k_boltzmann_eV_per_K * T_kelvin *
         static_cast<double>(l);
}

struct ReflectionPair {
  double tm = 0.0;
  double te = 0.0;
};

// Fresnel coefficients at imaginary frequency xi (eV) and transverse
// wavevector k_perp (1/nm). eps = +inf is the ideal-metal limit.
inline ReflectionPair reflection_coeffs(double eps, double xi_eV, double k_perp_nm) {
  if (xi_eV < 0.0 || k_perp_nm < 0.0 || (xi_eV == 0.0 && k_perp_nm == 0.0))
    throw std::domain_error("lifshitz::reflection_coeffs: need xi, k_perp >= 0, not both zero");
  if (std::isinf(eps)) return {1.0, -1.0};
  if (!(eps > 0.0)) throw std::domain_error("lifshitz::reflection_coeffs: eps must be > 0");
  const double kappa = xi_eV / constants::hbar_c_eV_nm;
  const double q = std::hypot(k_perp_nm, kappa);
  const double k = std::sqrt(k_perp_nm * k_perp_nm + eps * kappa * kappa);
  return {(eps * q - k) / (eps * q + k), (q - k) / (q + k)};
}

// Analytic l = 0 coefficients per model kind.
inline ReflectionPair zero_mode_reflection(const ZeroModeKind& zero, double k_perp_nm) {
  if (k_perp_nm < 0.0)
    throw std::domain_error("lifshitz::zero_mode_reflection: k_perp must be >= 0");
  return std::visit(
      [k_perp_nm](const auto& z) -> ReflectionPair {
        using T = std::decay_t<decltype(z)>;
        if constexpr (std::is_same_v<T, IdealMetalZero>) {
          return {1.0, -1.0};
        } else if constexpr (std::is_same_v<T, PlasmaZero>) {
          const double kp = z.plasma_eV / constants::hbar_c_eV_nm;
          const double root = std::hypot(k_perp_nm, kp);
          return {1.0, (root - k_perp_nm) / (root + k_perp_nm)};
        } else if constexpr (std::is_same_v<T, DrudeZero>) {
          return {1.0, 0.0};
        } else {
          return {(z.eps_static - 1.0) / (z.eps_static + 1.0), 0.0};
        }
      },
      zero);
}

struct LifshitzOptions {
  double rel_tol = 1e-6;
  std::size_t max_evals = 80'000'000; // total budget over all terms
};

enum class SumTruncation {
  NotTruncated,         // T = 0 path: no discrete sum
  RelativeContribution, // last term fell below 1e-10 of the running sum
  FrequencySpan,        // y_l exceeded the e^-y cutoff span
};

struct FreeEnergyInfo {
  double value_eV_nm2 = 0.0;
  std::size_t matsubara_terms = 0; // l >= 1 terms summed (0 on the T = 0 path)
  std::size_t evaluations = 0;
  double y_span = 0.0; // each y integral ran over [y_l, y_l + y_span]
  SumTruncation truncation = SumTruncation::NotTruncated;
};

namespace detail {

inline constexpr double y_span = 50.0; // e^-50 ~ 2e-22 ends every y integral

// r^2 pair at Matsubara index l >= 1, y-parameterized.
inline void r_squared(double eps, double y, double y_l, double& rtm2, double& rte2) {
  const double s = std::sqrt(y * y + (eps - 1.0) * y_l * y_l);
  if (!(eps < 1e280)) { // ideal limit, also shields eps*y overflow
    rtm2 = 1.0;
  } else {
    const double rtm = (eps * y - s) / (eps * y + s);
    rtm2 = rtm * rtm;
  }
  const double rte = (y - s) / (y + s);
  rte2 = rte * rte;
}

inline double log_round_trip(double rtm2, double rte2, double y) {
  // below ~1e-15 the y*log(y) contribution is ~1e-30 while exp(-y) rounds
  // to 1 and a unit reflection would give log1p(-1) = -inf
  if (y < 1e-15) return 0.0;
  const double e = std::exp(-y);
  return y * (std::log1p(-rtm2 * e) + std::log1p(-rte2 * e));
}

inline double term_integrand(double y, double eps, double y_l) {
  if (std::isinf(eps)) return log_round_trip(1.0, 1.0, y);
  double rtm2, rte2;
  r_squared(eps, y, y_l, rtm2, rte2);
  return log_round_trip(rtm2, rte2, y);
}

inline double zero_mode_integrand(double y, const ZeroModeKind& zero, double a_nm) {
  const double k_perp = y / (2.0 * a_nm);
  const auto r = zero_mode_reflection(zero, k_perp);
  return log_round_trip(r.tm * r.tm, r.te * r.te, y);
}

inline quad::Options inner_options(const LifshitzOptions& o) {
  quad::Options q;
  q.rel_tol = std::max(o.rel_tol * 1e-3, 1e-12);
  q.abs_tol = 1e-16;
  q.max_evals = 2'000'000;
  return q;
}

} // namespace detail

// F(a, T) per unit area in eV/nm^2 (negative: attraction). a in nm, T > 0.
inline FreeEnergyInfo free_energy_plates_info(const ImagAxisResponse& response, double a_nm,
                                              double T_kelvin, const LifshitzOptions& opt = {}) {
  if (!(a_nm > 0.0)) throw std::domain_error("lifshitz::free_energy_plates: a must be > 0");
  if (!(T_kelvin > 0.0))
    throw std::domain_error("lifshitz::free_energy_plates: T must be > 0 "
                            "(use energy_plates_zero_temperature)");

  const auto inner = detail::inner_options(opt);
  FreeEnergyInfo info;
  info.y_span = detail::y_span;
  info.truncation = SumTruncation::FrequencySpan;

  auto zero_f = [&](double y) { return detail::zero_mode_integrand(y, response.zero_mode, a_nm); };
  auto q0 = quad::integrate(zero_f, 0.0, detail::y_span, inner);
  info.evaluations += q0.evaluations;
  double sum = 0.5 * q0.value;

  for (long l = 1;; ++l) {
    const double xi = matsubara_frequency(T_kelvin, l);
    const double y_l = 2.0 * a_nm * xi / constants::hbar_c_eV_nm;
    if (y_l > detail::y_span) break;
    const double eps = response.eps(xi);
    auto f = [eps, y_l](double y) { return detail::term_integrand(y, eps, y_l); };
    auto q = quad::integrate(f, y_l, y_l + detail::y_span, inner);
    info.evaluations += q.evaluations;
    if (info.evaluations > opt.max_evals)
      throw convergence_error("lifshitz::free_energy_plates: evaluation budget exhausted");
    sum += q.value;
    ++info.matsubara_terms;
    if (std::abs(q.value) < 1e-10 * std::abs(sum)) {
      info.truncation = SumTruncation::RelativeContribution;
      break;
    }
  }

  info.value_eV_nm2 = constants::k_boltzmann_eV_per_K * T_kelvin /
                      (8.0 * std::numbers::pi * a_nm * a_nm) * sum;
  return info;
}

inline double free_energy_plates(const ImagAxisResponse& response, double a_nm, double T_kelvin,
                                 const LifshitzOptions& opt = {}) {
  return free_energy_plates_info(response, a_nm, T_kelvin, opt).value_eV_nm2;
}

// T = 0 energy per unit area: the Matsubara sum becomes a frequency
// integral, with the same y integrand.
inline FreeEnergyInfo energy_plates_zero_temperature_info(const ImagAxisResponse& response,
                                                          double a_nm,
                                                          const LifshitzOptions& opt = {}) {
  if (!(a_nm > 0.0))
    throw std::domain_error("lifshitz::energy_plates_zero_temperature: a must be > 0");

  const auto inner = detail::inner_options(opt);
  FreeEnergyInfo info;
  info.y_span = detail::y_span;

  auto outer_f = [&](double xi) {
    const double y_l = 2.0 * a_nm * xi / constants::hbar_c_eV_nm;
    const double eps = response.eps(xi);
    auto f = [eps, y_l](double y) { return detail::term_integrand(y, eps, y_l); };
    auto q = quad::integrate(f, y_l, y_l + detail::y_span, inner);
    info.evaluations += q.evaluations;
    return q.value;
  };
  quad::Options outer;
  outer.rel_tol = opt.rel_tol;
  outer.abs_tol = 0.0;
  outer.max_evals = 100'000;
  const double scale = constants::hbar_c_eV_nm / (2.0 * a_nm);
  auto q = quad::integrate_to_infinity(outer_f, 0.0, scale, outer);

  info.value_eV_nm2 =
      q.value / (16.0 * std::numbers::pi * std::numbers::pi * a_nm * a_nm);
  return info;
}

inline double energy_plates_zero_temperature(const ImagAxisResponse& response, double a_nm,
                                             const LifshitzOptions& opt = {}) {
  return energy_plates_zero_temperature_info(response, a_nm, opt).value_eV_nm2;
}

// |2 pi R F| in pN. T = 0 selects the zero-temperature energy.
inline double force_sphere_plate(const ImagAxisResponse& response, double a_nm, double T_kelvin,
                                 double R_nm, const LifshitzOptions& opt = {}) {
  if (!(R_nm > 0.0)) throw std::domain_error("lifshitz::force_sphere_plate: R must be > 0");
  if (T_kelvin < 0.0) throw std::domain_error("lifshitz::force_sphere_plate: T must be >= 0");
  const double F = (T_kelvin == 0.0) ? energy_plates_zero_temperature(response, a_nm, opt)
                                     : free_energy_plates(response, a_nm, T_kelvin, opt);
  return std::abs(2.0 * std::numbers::pi * R_nm * F) * constants::piconewton_per_eV_nm;
}

// PFA is a short-separation approximation; flag configurations outside it.
inline bool pfa_aspect_warning(double a_nm, double R_nm) { return a_nm / R_nm > 0.01; }

struct ForceRow {
  double a_nm = 0.0;
  double force_pN = 0.0;
};

struct ForceTable {
  std::vector<ForceRow> rows;
  std::string model_label;
  double temperature_K = 0.0;
};

inline ForceTable force_table(const models::PermittivityModel& model,
                              const std::vector<double>& separations_nm, double T_kelvin,
                              double R_nm, const LifshitzOptions& opt = {}) {
  if (separations_nm.empty())
    throw std::invalid_argument("lifshitz::force_table: no separations given");
  for (std::size_t i = 1; i < separations_nm.size(); ++i)
    if (!(separations_nm[i - 1] < separations_nm[i]))
      throw std::invalid_argument("lifshitz::force_table: separations must be strictly ascending");

  const auto response = response_from_model(model);
  ForceTable table;
  table.model_label = response.label;
  table.temperature_K = T_kelvin;
  for (double a : separations_nm)
    table.rows.push_back({a, force_sphere_plate(response, a, T_kelvin, R_nm, opt)});

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!(table.rows[i].force_pN > 0.0))
      throw std::runtime_error("lifshitz::force_table: non-positive force magnitude");
    if (i > 0 && !(table.rows[i].force_pN < table.rows[i - 1].force_pN))
      throw std::runtime_error("lifshitz::force_table: force not decreasing with separation");
  }
  return table;
}

} // namespace casimir::lifshitz
