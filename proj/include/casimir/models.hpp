#pragma once

// Closed-form plasma-like dielectric permittivities. A model is a sum of a
// free-electron response (second-order pole at omega = 0, or a Drude term
// with finite relaxation) and interband Lorentz oscillators for the core
// electrons. Real-axis evaluation is complex-valued; the imaginary-axis
// value eps(i xi) is real, > 1 and monotone decreasing.

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "casimir/optical.hpp"

namespace casimir::models {

// One interband resonance. The strength carries eV^2; a zero relaxation is
// a lossless oscillator. A zero resonance is not representable here -- the
// free-electron response is a separate term of the model.
struct Oscillator {
  double resonance_eV = 0.0;  // > 0
  double strength_eV2 = 0.0;  // >= 0
  double relaxation_eV = 0.0; // >= 0
};

struct PurePlasma {
  double plasma_eV = 0.0;
};

struct GeneralizedPlasma {
  double plasma_eV = 0.0;
  std::vector<Oscillator> oscillators;
};

// Free-electron term with finite relaxation (first-order pole at zero).
// The g0 -> 0 limit is not representable; use PurePlasma for that physics.
struct Drude {
  double plasma_eV = 0.0;
  double relaxation_eV = 0.0; // > 0
  std::vector<Oscillator> oscillators;
};

// Measured optical data; evaluated through the optical module and only on
// the imaginary axis. include_plasma_pole selects whether the free-electron
// wp^2/xi^2 term is added on top of the dispersion integral.
struct Tabulated {
  std::shared_ptr<const optical::Dataset> data;
  optical::ExtrapolationPolicy policy;
  bool include_plasma_pole = false;
  double plasma_eV = 0.0;
};

using PermittivityModel = std::variant<PurePlasma, GeneralizedPlasma, Drude, Tabulated>;

inline void validate_oscillators(std::span<const Oscillator> xs) {
  for (const auto& o : xs) {
    if (!(o.resonance_eV > 0.0))
      throw std::invalid_argument("models: oscillator resonance must be > 0");
    if (o.strength_eV2 < 0.0 || o.relaxation_eV < 0.0)
      throw std::invalid_argument("models: oscillator strength and relaxation must be >= 0");
  }
}

inline void validate(const PermittivityModel& m) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Tabulated>) {
          if (!v.data) throw std::invalid_argument("models: tabulated model without a dataset");
          if (v.include_plasma_pole && !(v.plasma_eV > 0.0))
            throw std::invalid_argument("models: plasma frequency must be > 0");
        } else {
          if (!(v.plasma_eV > 0.0))
            throw std::invalid_argument("models: plasma frequency must be > 0");
          if constexpr (std::is_same_v<T, Drude>) {
            if (!(v.relaxation_eV > 0.0))
              throw std::invalid_argument("models: Drude relaxation must be > 0");
            validate_oscillators(v.oscillators);
          } else if constexpr (std::is_same_v<T, GeneralizedPlasma>) {
            validate_oscillators(v.oscillators);
          }
        }
      },
      m);
}

// Au parametrization: wp = 9.0 eV and three interband oscillators.
inline PermittivityModel gold_default() {
  return GeneralizedPlasma{9.0,
                           {{3.87, 59.61, 2.62}, {8.37, 122.55, 6.41}, {23.46, 1031.19, 27.57}}};
}

namespace detail {

inline std::complex<double> oscillator_sum(std::span<const Oscillator> xs, double omega) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& o : xs)
    acc += o.strength_eV2 / std::complex<double>(o.resonance_eV * o.resonance_eV - omega * omega,
                                                 -o.relaxation_eV * omega);
  return acc;
}

inline std::complex<double> plasma_like_complex(double plasma_eV,
                                                std::span<const Oscillator> xs, double omega) {
  return 1.0 + oscillator_sum(xs, omega) - plasma_eV * plasma_eV / (omega * omega);
}

inline double oscillator_sum_imag_axis(std::span<const Oscillator> xs, double xi) {
  double acc = 0.0;
  for (const auto& o : xs)
    acc += o.strength_eV2 / (o.resonance_eV * o.resonance_eV + xi * xi + o.relaxation_eV * xi);
  return acc;
}

} // namespace detail

// eps(omega) on the real axis, omega > 0. Tabulated data has no closed
// real-axis form here; see optical::eps_imag_from_data.
inline std::complex<double> eval_complex(const PermittivityModel& m, double omega_eV) {
  validate(m);
  if (!(omega_eV > 0.0))
    throw std::domain_error("models::eval_complex: omega must be > 0 (pole at omega = 0)");
  return std::visit(
      [omega_eV](const auto& v) -> std::complex<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PurePlasma>) {
          return detail::plasma_like_complex(v.plasma_eV, {}, omega_eV);
        } else if constexpr (std::is_same_v<T, GeneralizedPlasma>) {
          return detail::plasma_like_complex(v.plasma_eV, v.oscillators, omega_eV);
        } else if constexpr (std::is_same_v<T, Drude>) {
          const double f0 = v.plasma_eV * v.plasma_eV;
          return 1.0 + detail::oscillator_sum(v.oscillators, omega_eV) -
                 f0 / (omega_eV * std::complex<double>(omega_eV, v.relaxation_eV));
        } else {
          throw std::invalid_argument(
              "models::eval_complex: tabulated models are evaluated through the optical module");
        }
      },
      m);
}

// eps''(omega) >= 0; identically zero for the pure plasma (the collisionless
// free-electron response carries no dissipation).
inline double eps_imag(const PermittivityModel& m, double omega_eV) {
  return eval_complex(m, omega_eV).imag();
}

// eps(i xi), xi > 0, real.
inline double eval_imag_axis(const PermittivityModel& m, double xi_eV) {
  validate(m);
  if (!(xi_eV > 0.0))
    throw std::domain_error("models::eval_imag_axis: xi must be > 0");
  return std::visit(
      [xi_eV](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PurePlasma>) {
          return 1.0 + detail::oscillator_sum_imag_axis({}, xi_eV) +
                 v.plasma_eV * v.plasma_eV / (xi_eV * xi_eV);
        } else if constexpr (std::is_same_v<T, GeneralizedPlasma>) {
          return 1.0 + detail::oscillator_sum_imag_axis(v.oscillators, xi_eV) +
                 v.plasma_eV * v.plasma_eV / (xi_eV * xi_eV);
        } else if constexpr (std::is_same_v<T, Drude>) {
          return 1.0 + detail::oscillator_sum_imag_axis(v.oscillators, xi_eV) +
                 v.plasma_eV * v.plasma_eV / (xi_eV * (xi_eV + v.relaxation_eV));
        } else {
          return optical::eps_imag_axis_from_data(*v.data, v.policy, v.include_plasma_pole,
                                                  v.plasma_eV, xi_eV);
        }
      },
      m);
}

inline const char* kind_name(const PermittivityModel& m) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PurePlasma>) return "plasma";
        else if constexpr (std::is_same_v<T, GeneralizedPlasma>) return "generalized-plasma";
        else if constexpr (std::is_same_v<T, Drude>) return "drude";
        else return "tabulated";
      },
      m);
}

inline double plasma_frequency(const PermittivityModel& m) {
  return std::visit([](const auto& v) { return v.plasma_eV; }, m);
}

} // namespace casimir::models
