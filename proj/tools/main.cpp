// Command-line front end: permittivity tables, dispersion-relation
// self-checks, sphere-plate force tables, and comparison against measured
// force data. Exit codes: 0 success, 1 check failure, 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/casimir.hpp"

namespace {

using namespace casimir;

struct ModelOpts {
  std::string material = "gold";
  std::string model = "generalized";
  std::optional<double> g0_eV;
  std::string nk_data;
  double gamma_eV = 0.0;
  bool no_low_extrapolation = false;
  bool include_plasma_pole = false;
};

void add_model_options(CLI::App* cmd, ModelOpts& o) {
  cmd->add_option("--material", o.material, "builtin 'gold' or a material definition file");
  cmd->add_option("--model", o.model, "permittivity variant")
      ->check(CLI::IsMember({"generalized", "plasma", "drude", "tabulated"}));
  cmd->add_option("--g0-eV", o.g0_eV, "drude relaxation (overrides the material file)");
  cmd->add_option("--nk-data", o.nk_data, "n,k CSV for --model tabulated");
  cmd->add_option("--gamma-eV", o.gamma_eV,
                  "drude relaxation for low-frequency extrapolation of tabulated data");
  cmd->add_flag("--no-low-extrapolation", o.no_low_extrapolation,
                "truncate tabulated data instead of extrapolating below the table");
  cmd->add_flag("--include-plasma-pole", o.include_plasma_pole,
                "add the free-electron wp^2/xi^2 term on top of tabulated data");
}

io::MaterialParams load_material(const std::string& name) {
  if (name == "gold") return io::gold_material();
  return io::load_material_file(name);
}

models::PermittivityModel build_model(const ModelOpts& o) {
  auto mat = load_material(o.material);
  if (o.g0_eV) mat.drude_relaxation_eV = o.g0_eV;
  if (o.model == "generalized") return io::make_model(mat, io::ModelKind::Generalized);
  if (o.model == "plasma") return io::make_model(mat, io::ModelKind::Plasma);
  if (o.model == "drude") return io::make_model(mat, io::ModelKind::Drude);

  if (o.nk_data.empty())
    throw std::invalid_argument("--model tabulated requires --nk-data");
  auto data = std::make_shared<const optical::Dataset>(optical::load_nk_table(o.nk_data));
  optical::ExtrapolationPolicy policy = optical::NoExtrapolation{};
  if (!o.no_low_extrapolation) {
    if (!(o.gamma_eV > 0.0))
      throw std::invalid_argument("tabulated data needs --gamma-eV > 0 for the low-frequency "
                                  "drude tail (or pass --no-low-extrapolation)");
    policy = optical::DrudeTail{mat.plasma_eV, o.gamma_eV};
  }
  models::PermittivityModel m =
      models::Tabulated{data, policy, o.include_plasma_pole, mat.plasma_eV};
  models::validate(m);
  return m;
}

// Output sink: stdout by default, file via -o.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::vector<double> make_grid(double lo, double hi, int points, const std::string& scale) {
  if (!(points >= 1)) throw std::invalid_argument("--grid-points must be >= 1");
  if (!(lo > 0.0) && scale == "log")
    throw std::invalid_argument("--grid-min must be > 0 on a log grid");
  if (!(hi >= lo)) throw std::invalid_argument("--grid-max must be >= --grid-min");
  std::vector<double> g;
  if (points == 1) {
    g.push_back(lo);
    return g;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g.push_back(scale == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  return g;
}

// ---------------------------------------------------------------- eps ----

struct EpsOpts {
  ModelOpts model;
  std::string axis = "imag";
  double grid_min = 0.0, grid_max = 0.0;
  int grid_points = 0;
  std::string grid_scale = "log";
  double tolerance = 1e-9;
  std::string output;
};

int run_eps(const EpsOpts& o) {
  const auto model = build_model(o.model);
  const auto grid = make_grid(o.grid_min, o.grid_max, o.grid_points, o.grid_scale);
  Sink sink(o.output);
  auto& out = sink.out();

  const bool tabulated = std::holds_alternative<models::Tabulated>(model);
  if (o.axis == "real") {
    if (tabulated) {
      // closed real-axis form is not available for measured data; emit the loss
      const auto& t = std::get<models::Tabulated>(model);
      out << "omega_eV,eps_imag\n";
      for (double w : grid)
        out << io::format_full(w) << ','
            << io::format_full(optical::eps_imag_from_data(*t.data, t.policy, w)) << '\n';
    } else {
      out << "omega_eV,eps_real,eps_imag\n";
      for (double w : grid) {
        const auto e = models::eval_complex(model, w);
        out << io::format_full(w) << ',' << io::format_full(e.real()) << ','
            << io::format_full(e.imag()) << '\n';
      }
    }
  } else {
    out << "xi_eV,eps\n";
    for (double xi : grid) {
      double eps;
      if (tabulated) {
        const auto& t = std::get<models::Tabulated>(model);
        eps = optical::eps_imag_axis_from_data(*t.data, t.policy, t.include_plasma_pole,
                                               t.plasma_eV, xi,
                                               {o.tolerance, 1e-14, 2'000'000});
      } else {
        eps = models::eval_imag_axis(model, xi);
      }
      out << io::format_full(xi) << ',' << io::format_full(eps) << '\n';
    }
  }
  return 0;
}

// ----------------------------------------------------------- kk-check ----

struct KKCheckOpts {
  ModelOpts model;
  std::optional<double> beta;
};

int run_kk_check(const KKCheckOpts& o) {
  const auto model = build_model(o.model);
  if (std::holds_alternative<models::Tabulated>(model))
    throw std::invalid_argument("kk-check requires a closed-form model");
  const bool drude = std::holds_alternative<models::Drude>(model);
  const double pole_wp = drude ? 0.0 : models::plasma_frequency(model);

  auto loss = [&model](double w) { return models::eps_imag(model, w); };
  auto real_part = [&model](double w) { return models::eval_complex(model, w).real(); };

  const double round_trip_threshold = 1e-3;
  const double identity_threshold = 1e-8;
  bool ok = true;

  auto report = [&ok](const std::string& name, double residual, double threshold) {
    const bool pass = residual <= threshold;
    ok = ok && pass;
    std::printf("%-34s residual %.3e  threshold %.1e  %s\n", name.c_str(), residual, threshold,
                pass ? "PASS" : "FAIL");
  };

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double w = 0.1 * std::pow(1000.0, i / 49.0);
    const double ref = real_part(w);
    const double got = kk::kk_real_from_imag(loss, pole_wp, w);
    worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
  }
  report("real part from loss", worst, round_trip_threshold);

  if (!drude) {
    worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double w = 0.5 * std::pow(100.0, i / 9.0);
      const double ref = models::eps_imag(model, w);
      const double got = kk::kk_imag_from_real(real_part, pole_wp, w);
      worst = std::max(worst, std::abs(got - ref) / std::max(1.0, std::abs(ref)));
    }
    report("loss from real part", worst, round_trip_threshold);
  } else {
    std::printf("%-34s skipped (first-order pole: outside this relation pair)\n",
                "loss from real part");
  }

  worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double xi = 0.01 * std::pow(10000.0, i / 49.0);
    const double ref = models::eval_imag_axis(model, xi);
    const double got = kk::kk_imag_axis(loss, pole_wp, xi);
    worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
  }
  report("imaginary-axis dispersion", worst, round_trip_threshold);

  std::vector<double> betas = {-0.5, 0.0, 0.5, 0.9, 0.99};
  if (const auto* g = std::get_if<models::GeneralizedPlasma>(&model)) {
    for (const auto& osc : g->oscillators)
      betas.push_back(1.0 - osc.relaxation_eV * osc.relaxation_eV /
                                (2.0 * osc.resonance_eV * osc.resonance_eV));
  }
  if (o.beta) betas.push_back(*o.beta);
  worst = 0.0;
  for (double b : betas) {
    const auto id = kk::verify_oscillator_identity(b);
    worst = std::max({worst, std::abs(id.i0 - id.closed_form), std::abs(id.i2 - id.closed_form)});
  }
  report("quartic integral identity", worst, identity_threshold);

  return ok ? 0 : 1;
}

// -------------------------------------------------------- force-table ----

struct ForceOpts {
  ModelOpts model;
  double temperature_K = 300.0;
  double radius_nm = 95650.0;
  std::vector<double> separations_nm;
  bool zero_temperature = false;
  bool round4 = false;
  double tolerance = 1e-6;
  std::string output;
};

int run_force_table(const ForceOpts& o) {
  const auto model = build_model(o.model);
  const double T = o.zero_temperature ? 0.0 : o.temperature_K;
  lifshitz::LifshitzOptions opt;
  opt.rel_tol = o.tolerance;

  for (double a : o.separations_nm)
    if (lifshitz::pfa_aspect_warning(a, o.radius_nm)) {
      std::fprintf(stderr, "warning: a/R = %g exceeds 0.01; the proximity force "
                           "approximation degrades\n", a / o.radius_nm);
      break;
    }

  const auto table = lifshitz::force_table(model, o.separations_nm, T, o.radius_nm, opt);
  Sink sink(o.output);
  auto& out = sink.out();
  out << "a_nm,force_pN,model,T_K\n";
  for (const auto& row : table.rows) {
    const std::string force =
        o.round4 ? io::format_sig4(row.force_pN) : io::format_full(row.force_pN);
    out << io::format_full(row.a_nm) << ',' << force << ',' << table.model_label << ','
        << io::format_full(table.temperature_K) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ compare ----

struct CompareOpts {
  ForceOpts force; // reuses model/temperature/radius/tolerance/output
  std::string experiment;
};

int run_compare(const CompareOpts& o) {
  const auto rows = io::load_experiment_csv(o.experiment);
  const auto model = build_model(o.force.model);
  const auto response = lifshitz::response_from_model(model);
  const double T = o.force.zero_temperature ? 0.0 : o.force.temperature_K;
  lifshitz::LifshitzOptions opt;
  opt.rel_tol = o.force.tolerance;

  Sink sink(o.force.output);
  auto& out = sink.out();
  out << "a_nm,residual_pN,ci95_pN\n";
  std::size_t inside = 0;
  for (const auto& r : rows) {
    const double theory = lifshitz::force_sphere_plate(response, r.a_nm, T, o.force.radius_nm, opt);
    const double residual = theory - r.mean_force_pN;
    if (std::abs(residual) <= r.ci95_pN) ++inside;
    out << io::format_full(r.a_nm) << ',' << io::format_full(residual) << ','
        << io::format_full(r.ci95_pN) << '\n';
  }
  out << "# residuals_within_ci95 = " << inside << "/" << rows.size() << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"plasma-like permittivities, generalized dispersion-relation checks, and "
               "Lifshitz/PFA sphere-plate Casimir forces"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags override it");

  EpsOpts eps;
  auto* eps_cmd = app.add_subcommand("eps", "tabulate the permittivity on a frequency grid");
  add_model_options(eps_cmd, eps.model);
  eps_cmd->add_option("--axis", eps.axis, "real or imag frequency axis")
      ->check(CLI::IsMember({"real", "imag"}));
  eps_cmd->add_option("--grid-min", eps.grid_min, "lowest grid frequency (eV)")->required();
  eps_cmd->add_option("--grid-max", eps.grid_max, "highest grid frequency (eV)")->required();
  eps_cmd->add_option("--grid-points", eps.grid_points, "number of grid points")->required();
  eps_cmd->add_option("--grid-scale", eps.grid_scale, "log or linear")
      ->check(CLI::IsMember({"log", "linear"}));
  eps_cmd->add_option("--tolerance", eps.tolerance,
                      "relative quadrature tolerance (tabulated data only)");
  eps_cmd->add_option("-o,--output", eps.output, "output CSV (default stdout)");

  KKCheckOpts kkc;
  auto* kk_cmd = app.add_subcommand("kk-check", "dispersion-relation self-check round trips");
  add_model_options(kk_cmd, kkc.model);
  kk_cmd->add_option("--beta", kkc.beta, "extra quartic-identity parameter (must be < 1)");

  ForceOpts force;
  auto* force_cmd = app.add_subcommand("force-table", "sphere-plate PFA force magnitudes");
  add_model_options(force_cmd, force.model);
  force_cmd->add_option("--temperature-K", force.temperature_K, "temperature in kelvin");
  force_cmd->add_option("--radius-nm", force.radius_nm, "sphere radius in nm");
  force_cmd->add_option("--separations-nm", force.separations_nm, "comma-separated list, ascending")
      ->delimiter(',')
      ->required();
  force_cmd->add_flag("--zero-temperature", force.zero_temperature,
                      "use the zero-temperature energy");
  force_cmd->add_flag("--round", force.round4, "round forces to 4 significant figures");
  force_cmd->add_option("--tolerance", force.tolerance, "relative quadrature tolerance");
  force_cmd->add_option("-o,--output", force.output, "output CSV (default stdout)");

  CompareOpts cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "residuals against measured forces");
  add_model_options(cmp_cmd, cmp.force.model);
  cmp_cmd->add_option("--experiment", cmp.experiment, "CSV of a_nm,mean_force_pN,ci95_pN")
      ->required();
  cmp_cmd->add_option("--temperature-K", cmp.force.temperature_K, "temperature in kelvin");
  cmp_cmd->add_option("--radius-nm", cmp.force.radius_nm, "sphere radius in nm");
  cmp_cmd->add_flag("--zero-temperature", cmp.force.zero_temperature,
                    "use the zero-temperature energy");
  cmp_cmd->add_option("--tolerance", cmp.force.tolerance, "relative quadrature tolerance");
  cmp_cmd->add_option("-o,--output", cmp.force.output, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eps_cmd) return run_eps(eps);
    if (*kk_cmd) return run_kk_check(kkc);
    if (*force_cmd) return run_force_table(force);
    if (*cmp_cmd) return run_compare(cmp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
