#pragma once

// File formats consumed and produced by the command-line tool: the
// key-value material definition, the experiment CSV, and the number
// formatting rules (full precision by default; optional 4-significant-
// figure presentation with round-half-even).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/models.hpp"

namespace casimir::io {

// Material definition file:
//   omega_p_eV  = 9.0
//   oscillators = [3.87, 59.61, 2.62], [8.37, 122.55, 6.41]
//   g0_eV       = 0.02        # optional, enables the drude variant
struct MaterialParams {
  double plasma_eV = 0.0;
  std::vector<models::Oscillator> oscillators;
  std::optional<double> drude_relaxation_eV;
};

inline MaterialParams gold_material() {
  return {9.0, {{3.87, 59.61, 2.62}, {8.37, 122.55, 6.41}, {23.46, 1031.19, 27.57}}, {}};
}

namespace detail {

inline std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& field, long lineno) {
  const std::string t = strip(field);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw parse_error("bad number '" + t + "'", lineno);
  return v;
}

} // namespace detail

inline MaterialParams load_material_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("material: cannot open '" + path + "'");

  MaterialParams mat;
  bool have_wp = false;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = detail::strip(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw parse_error("material: expected 'key = value', got '" + t + "'", lineno);
    const std::string key = detail::strip(t.substr(0, eq));
    const std::string value = detail::strip(t.substr(eq + 1));
    if (key == "omega_p_eV") {
      mat.plasma_eV = detail::parse_number(value, lineno);
      have_wp = true;
    } else if (key == "g0_eV") {
      mat.drude_relaxation_eV = detail::parse_number(value, lineno);
    } else if (key == "oscillators") {
      std::size_t pos = 0;
      while (pos < value.size()) {
        const auto open = value.find('[', pos);
        if (open == std::string::npos) {
          if (!detail::strip(value.substr(pos)).empty() && detail::strip(value.substr(pos)) != ",")
            throw parse_error("material: stray text in oscillator list", lineno);
          break;
        }
        const auto close = value.find(']', open);
        if (close == std::string::npos)
          throw parse_error("material: unterminated '[' in oscillator list", lineno);
        std::stringstream ss(value.substr(open + 1, close - open - 1));
        std::string field;
        double v[3];
        for (int i = 0; i < 3; ++i) {
          if (!std::getline(ss, field, ','))
            throw parse_error("material: oscillator needs [omega_j_eV, f_j_eV2, g_j_eV]", lineno);
          v[i] = detail::parse_number(field, lineno);
        }
        if (std::getline(ss, field, ',') && !detail::strip(field).empty())
          throw parse_error("material: oscillator has more than 3 entries", lineno);
        mat.oscillators.push_back({v[0], v[1], v[2]});
        pos = close + 1;
      }
    } else {
      throw parse_error("material: unknown key '" + key + "'", lineno);
    }
  }
  if (!have_wp) throw parse_error("material: missing required key 'omega_p_eV'");
  return mat;
}

enum class ModelKind { Generalized, Plasma, Drude };

inline models::PermittivityModel make_model(const MaterialParams& mat, ModelKind kind) {
  models::PermittivityModel m;
  switch (kind) {
  case ModelKind::Generalized:
    m = models::GeneralizedPlasma{mat.plasma_eV, mat.oscillators};
    break;
  case ModelKind::Plasma:
    m = models::PurePlasma{mat.plasma_eV};
    break;
  case ModelKind::Drude:
    if (!mat.drude_relaxation_eV)
      throw std::invalid_argument("material: drude model needs g0_eV");
    m = models::Drude{mat.plasma_eV, *mat.drude_relaxation_eV, mat.oscillators};
    break;
  }
  models::validate(m);
  return m;
}

// Experiment CSV: header `a_nm,mean_force_pN,ci95_pN`, `#` comments.
struct ExperimentRow {
  double a_nm = 0.0;
  double mean_force_pN = 0.0;
  double ci95_pN = 0.0;
};

inline std::vector<ExperimentRow> load_experiment_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("experiment: cannot open '" + path + "'");

  static const char* expected[3] = {"a_nm", "mean_force_pN", "ci95_pN"};
  std::vector<ExperimentRow> rows;
  std::string line;
  long lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::strip(line);
    if (t.empty() || t[0] == '#') continue;
    std::stringstream ss(t);
    std::string field;
    if (!header_seen) {
      for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, field, ','))
          throw parse_error(std::string("experiment: missing column '") + expected[i] + "'",
                            lineno);
        if (detail::strip(field) != expected[i])
          throw parse_error(std::string("experiment: expected column '") + expected[i] +
                                "', got '" + detail::strip(field) + "'",
                            lineno);
      }
      header_seen = true;
      continue;
    }
    ExperimentRow r;
    double* out[3] = {&r.a_nm, &r.mean_force_pN, &r.ci95_pN};
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, field, ','))
        throw parse_error("experiment: expected 3 comma-separated values", lineno);
      *out[i] = detail::parse_number(field, lineno);
    }
    if (r.ci95_pN < 0.0)
      throw parse_error("experiment: ci95_pN must be >= 0", lineno);
    if (!rows.empty() && !(rows.back().a_nm < r.a_nm))
      throw parse_error("experiment: a_nm not strictly increasing", lineno);
    rows.push_back(r);
  }
  if (!header_seen) throw parse_error("experiment: file '" + path + "' has no header row");
  return rows;
}

// Full-precision text form; round-trips through strtod.
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Round to n significant figures with ties to even.
inline double round_to_sig_figs(double x, int n) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double mag = std::floor(std::log10(std::abs(x)));
  const double scale = std::pow(10.0, static_cast<double>(n - 1) - mag);
  return std::nearbyint(x * scale) / scale;
}

inline std::string format_sig4(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", round_to_sig_figs(x, 4));
  return buf;
}

} // namespace casimir::io
