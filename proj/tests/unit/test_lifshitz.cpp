#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/lifshitz.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

const auto gold = models::gold_default();
const double R_paper_nm = 95650.0;

double ideal_energy_closed(double a_nm) {
  return -pi * pi * constants::hbar_c_eV_nm / (720.0 * a_nm * a_nm * a_nm);
}

double ideal_force_closed(double a_nm, double R_nm) {
  return pi * pi * pi * constants::hbar_c_eV_nm * R_nm / (360.0 * a_nm * a_nm * a_nm) *
         constants::piconewton_per_eV_nm;
}

} // namespace

TEST_CASE("matsubara frequencies", "[lifshitz]") {
  CHECK(lifshitz::matsubara_frequency(300.0, 0) == 0.0);
  // independent oracle: 2 pi kB T l from the CODATA constants
  const double xi1 = 2.0 * pi * 8.617333262e-5 * 300.0;
  CHECK(lifshitz::matsubara_frequency(300.0, 1) == Catch::Approx(xi1).epsilon(1e-15));
  CHECK(lifshitz::matsubara_frequency(300.0, 1) ==
        Catch::Approx(0.162432905216605).epsilon(1e-12));
  CHECK(lifshitz::matsubara_frequency(300.0, 10) ==
        Catch::Approx(10.0 * xi1).epsilon(1e-15));
  CHECK_THROWS_AS(lifshitz::matsubara_frequency(0.0, 1), std::domain_error);
  CHECK_THROWS_AS(lifshitz::matsubara_frequency(-5.0, 1), std::domain_error);
  CHECK_THROWS_AS(lifshitz::matsubara_frequency(300.0, -1), std::domain_error);
}

TEST_CASE("reflection coefficients", "[lifshitz]") {
  const double inf = std::numeric_limits<double>::infinity();
  const auto ideal = lifshitz::reflection_coeffs(inf, 1.0, 0.01);
  CHECK(ideal.tm == 1.0);
  CHECK(ideal.te == -1.0);

  const auto none = lifshitz::reflection_coeffs(1.0, 2.0, 0.03);
  CHECK(none.tm == Catch::Approx(0.0).margin(1e-15));
  CHECK(none.te == Catch::Approx(0.0).margin(1e-15));

  CHECK_THROWS_AS(lifshitz::reflection_coeffs(0.0, 1.0, 0.01), std::domain_error);
  CHECK_THROWS_AS(lifshitz::reflection_coeffs(-2.0, 1.0, 0.01), std::domain_error);
  CHECK_THROWS_AS(lifshitz::reflection_coeffs(2.0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("plasma zero mode matches the xi -> 0 limit", "[lifshitz]") {
  const lifshitz::ZeroModeKind zero = lifshitz::PlasmaZero{9.0};
  const double kp = 9.0 / constants::hbar_c_eV_nm;
  for (double k_perp : {0.001, 0.01, 0.1, 1.0}) {
    const auto zm = lifshitz::zero_mode_reflection(zero, k_perp);
    const double root = std::hypot(k_perp, kp);
    CHECK(zm.tm == 1.0);
    CHECK(zm.te == Catch::Approx((root - k_perp) / (root + k_perp)).epsilon(1e-15));
    // numeric limit of the Fresnel form (squares agree; the TE sign at
    // exactly xi = 0 is fixed by the frozen analytic branch)
    const double eps = models::eval_imag_axis(gold, 1e-6);
    const auto num = lifshitz::reflection_coeffs(eps, 1e-6, k_perp);
    CHECK(num.te * num.te == Catch::Approx(zm.te * zm.te).margin(1e-9));
    CHECK(num.tm == Catch::Approx(1.0).margin(1e-7));
  }
}

TEST_CASE("zero-mode dichotomy between drude and plasma-like models", "[lifshitz]") {
  const lifshitz::ZeroModeKind drude = lifshitz::DrudeZero{};
  const lifshitz::ZeroModeKind plasma = lifshitz::PlasmaZero{9.0};
  for (int i = 0; i < 20; ++i) {
    const double k_perp = 1e-3 * std::pow(10.0, 3.0 * i / 19.0);
    CHECK(lifshitz::zero_mode_reflection(drude, k_perp).te == 0.0);
    CHECK(lifshitz::zero_mode_reflection(plasma, k_perp).te > 0.0);
  }
  // a drude-model response carries the drude zero mode
  const auto resp = lifshitz::response_from_model(models::Drude{9.0, 0.02, {}});
  CHECK(std::holds_alternative<lifshitz::DrudeZero>(resp.zero_mode));
}

TEST_CASE("squared reflections stay in [0, 1]", "[lifshitz]") {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> logxi(-3.0, 2.0);
  std::uniform_real_distribution<double> logk(-4.0, 0.5);
  const auto resp = lifshitz::response_from_model(gold);
  for (int i = 0; i < 500; ++i) {
    const double xi = std::pow(10.0, logxi(rng));
    const double kp = std::pow(10.0, logk(rng));
    const auto r = lifshitz::reflection_coeffs(resp.eps(xi), xi, kp);
    CHECK(r.tm * r.tm <= 1.0);
    CHECK(r.te * r.te <= 1.0);
    CHECK(r.tm * r.tm >= 0.0);
  }
}

TEST_CASE("free energy: vacuum and ideal metal", "[lifshitz]") {
  CHECK(lifshitz::free_energy_plates(lifshitz::vacuum(), 100.0, 300.0) == 0.0);
  CHECK(lifshitz::energy_plates_zero_temperature(lifshitz::vacuum(), 100.0) == 0.0);

  const double closed = ideal_energy_closed(100.0);
  const double e0 = lifshitz::energy_plates_zero_temperature(lifshitz::ideal_metal(), 100.0);
  CHECK(e0 < 0.0);
  CHECK(e0 == Catch::Approx(closed).epsilon(1e-4));

  // small thermal correction at low temperature
  const double f10 = lifshitz::free_energy_plates(lifshitz::ideal_metal(), 100.0, 10.0);
  CHECK(f10 == Catch::Approx(closed).epsilon(1e-3));
}

TEST_CASE("ideal-metal sphere-plate force at zero temperature", "[lifshitz]") {
  const double got = lifshitz::force_sphere_plate(lifshitz::ideal_metal(), 200.0, 0.0, R_paper_nm);
  CHECK(got == Catch::Approx(ideal_force_closed(200.0, R_paper_nm)).epsilon(5e-4));
  CHECK(ideal_force_closed(200.0, R_paper_nm) == Catch::Approx(32.55659436792973).epsilon(1e-12));
}

TEST_CASE("paper spot value and model ordering", "[lifshitz]") {
  const auto resp_gen = lifshitz::response_from_model(gold);
  const auto resp_pl = lifshitz::response_from_model(models::PurePlasma{9.0});

  const double f_gen = lifshitz::force_sphere_plate(resp_gen, 200.0, 300.0, R_paper_nm);
  CHECK(f_gen == Catch::Approx(22.75).epsilon(3e-3));
  const double f_pl = lifshitz::force_sphere_plate(resp_pl, 200.0, 300.0, R_paper_nm);
  CHECK(f_pl == Catch::Approx(22.46).epsilon(3e-3));
  CHECK(f_gen > f_pl);
}

TEST_CASE("pfa identity is exact", "[lifshitz]") {
  const auto resp = lifshitz::response_from_model(gold);
  const double F = lifshitz::free_energy_plates(resp, 150.0, 300.0);
  const double force = lifshitz::force_sphere_plate(resp, 150.0, 300.0, R_paper_nm);
  CHECK(force == std::abs(2.0 * pi * R_paper_nm * F) * constants::piconewton_per_eV_nm);
}

TEST_CASE("free energy is negative for random models", "[lifshitz]") {
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> wp(2.0, 15.0);
  std::uniform_real_distribution<double> res(1.0, 30.0);
  std::uniform_real_distribution<double> str(0.0, 500.0);
  std::uniform_real_distribution<double> rel(0.0, 20.0);
  for (int i = 0; i < 5; ++i) {
    const models::PermittivityModel m = models::GeneralizedPlasma{
        wp(rng), {{res(rng), str(rng), rel(rng)}, {res(rng), str(rng), rel(rng)}}};
    const auto resp = lifshitz::response_from_model(m);
    CHECK(lifshitz::free_energy_plates(resp, 120.0, 300.0) < 0.0);
  }
}

TEST_CASE("thermal free energy approaches the zero-temperature energy", "[lifshitz]") {
  const auto resp = lifshitz::response_from_model(gold);
  const double f1 = lifshitz::free_energy_plates(resp, 100.0, 1.0);
  const double e0 = lifshitz::energy_plates_zero_temperature(resp, 100.0);
  CHECK(std::abs(f1 - e0) / std::abs(e0) < 1e-3);
}

TEST_CASE("plasma force grows toward the ideal-metal limit", "[lifshitz]") {
  const double ideal = ideal_force_closed(200.0, R_paper_nm);
  double prev = 0.0;
  for (double wp : {9.0, 30.0, 100.0, 300.0}) {
    const auto resp = lifshitz::response_from_model(models::PurePlasma{wp});
    const double f = lifshitz::force_sphere_plate(resp, 200.0, 0.0, R_paper_nm);
    CHECK(f > prev);
    CHECK(f < ideal * (1.0 + 1e-3));
    prev = f;
  }
  CHECK(prev == Catch::Approx(ideal).epsilon(0.02));
}

TEST_CASE("force table contract", "[lifshitz]") {
  CHECK_THROWS_AS(lifshitz::force_table(gold, {}, 300.0, R_paper_nm), std::invalid_argument);
  CHECK_THROWS_AS(lifshitz::force_table(gold, {100.0, 100.0}, 300.0, R_paper_nm),
                  std::invalid_argument);
  CHECK_THROWS_AS(lifshitz::force_table(gold, {100.0, 90.0}, 300.0, R_paper_nm),
                  std::invalid_argument);

  const auto table = lifshitz::force_table(gold, {100.0, 200.0, 300.0}, 300.0, R_paper_nm);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.model_label == "generalized-plasma");
  CHECK(table.temperature_K == 300.0);
  CHECK(table.rows[0].force_pN > table.rows[1].force_pN);
  CHECK(table.rows[1].force_pN > table.rows[2].force_pN);
}

TEST_CASE("evaluation budget exhaustion raises", "[lifshitz]") {
  const auto resp = lifshitz::response_from_model(gold);
  lifshitz::LifshitzOptions tiny;
  tiny.max_evals = 50;
  CHECK_THROWS_AS(lifshitz::free_energy_plates(resp, 100.0, 300.0, tiny), convergence_error);
}

TEST_CASE("free-energy metadata records the truncation", "[lifshitz]") {
  const auto resp = lifshitz::response_from_model(gold);
  const auto info = lifshitz::free_energy_plates_info(resp, 100.0, 300.0);
  CHECK(info.value_eV_nm2 < 0.0);
  CHECK(info.matsubara_terms > 10);
  CHECK(info.evaluations > info.matsubara_terms * 15);
  CHECK(info.y_span == 50.0);
  CHECK(info.truncation == lifshitz::SumTruncation::RelativeContribution);

  const auto info0 = lifshitz::energy_plates_zero_temperature_info(resp, 100.0);
  CHECK(info0.matsubara_terms == 0);
  CHECK(info0.truncation == lifshitz::SumTruncation::NotTruncated);
}

TEST_CASE("pfa aspect warning threshold", "[lifshitz]") {
  CHECK_FALSE(lifshitz::pfa_aspect_warning(300.0, R_paper_nm));
  CHECK(lifshitz::pfa_aspect_warning(1200.0, R_paper_nm));
}
