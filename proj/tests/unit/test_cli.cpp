#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "casimir/io.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/models.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = fs::temp_directory_path();
  const auto out = dir / ("cli_out_" + std::to_string(counter) + ".txt");
  const auto err = dir / ("cli_err_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

} // namespace

TEST_CASE("eps values equal the library calls", "[cli]") {
  const auto r = run_cli("eps --axis imag --grid-min 1 --grid-max 1 --grid-points 1");
  REQUIRE(r.code == 0);
  const double expect = casimir::models::eval_imag_axis(casimir::models::gold_default(), 1.0);
  CHECK(r.out == "xi_eV,eps\n1," + casimir::io::format_full(expect) + "\n");
}

TEST_CASE("eps on the real axis for the pure plasma", "[cli]") {
  const auto r = run_cli("eps --model plasma --axis real --grid-min 9 --grid-max 9 --grid-points 1");
  REQUIRE(r.code == 0);
  CHECK(r.out == "omega_eV,eps_real,eps_imag\n9,0,0\n");
}

TEST_CASE("missing grid spec is a usage error", "[cli]") {
  const auto r = run_cli("eps --axis imag");
  CHECK(r.code == 2);
  const auto r2 = run_cli("unknown-subcommand");
  CHECK(r2.code == 2);
  const auto r3 = run_cli("eps --grid-min 1 --grid-max 2 --grid-points 0");
  CHECK(r3.code == 2);
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
  const std::string args =
      "force-table --separations-nm 150,300 --temperature-K 300 --radius-nm 95650";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("a_nm,force_pN,model,T_K\n") == 0);
  CHECK(a.out.find("generalized-plasma,300") != std::string::npos);

  // the printed numbers are the library results, not re-rounded copies
  const auto resp = casimir::lifshitz::response_from_model(casimir::models::gold_default());
  const double f150 = casimir::lifshitz::force_sphere_plate(resp, 150.0, 300.0, 95650.0);
  CHECK(a.out.find("150," + casimir::io::format_full(f150) + ",") != std::string::npos);
}

TEST_CASE("force table rounding mode", "[cli]") {
  const auto r = run_cli("force-table --model plasma --separations-nm 60 --round");
  REQUIRE(r.code == 0);
  // pure plasma at 60 nm: 483.2042... is far from a rounding boundary
  CHECK(r.out.find("60,483.2,plasma,300\n") != std::string::npos);
}

TEST_CASE("zero-temperature flag", "[cli]") {
  const auto r = run_cli("force-table --model plasma --separations-nm 200 --zero-temperature");
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",plasma,0\n") != std::string::npos);
}

TEST_CASE("kk-check passes for the pure plasma and rejects bad beta", "[cli]") {
  const auto ok = run_cli("kk-check --model plasma");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  const auto gold = run_cli("kk-check");
  CHECK(gold.code == 0);
  CHECK(gold.out.find("FAIL") == std::string::npos);

  const auto drude = run_cli("kk-check --model drude --g0-eV 0.02");
  CHECK(drude.code == 0);
  CHECK(drude.out.find("skipped") != std::string::npos);

  const auto bad = run_cli("kk-check --model plasma --beta 1.5");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("beta") != std::string::npos);
}

TEST_CASE("compare against a self-generated experiment", "[cli]") {
  const auto dir = fs::temp_directory_path();
  const auto table = dir / "cli_theory.csv";
  const auto exp_file = dir / "cli_exp.csv";

  const auto t = run_cli("force-table --model plasma --separations-nm 200,300 -o " + table.string());
  REQUIRE(t.code == 0);

  // reshape the force table into the experiment format
  std::ifstream in(table);
  std::string line;
  std::getline(in, line); // header
  std::ofstream exp(exp_file);
  exp << "a_nm,mean_force_pN,ci95_pN\n";
  std::vector<double> forces;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string a, f;
    std::getline(ss, a, ',');
    std::getline(ss, f, ',');
    exp << a << ',' << f << ",0.5\n";
    forces.push_back(std::strtod(f.c_str(), nullptr));
  }
  exp.close();
  REQUIRE(forces.size() == 2);

  const auto self = run_cli("compare --model plasma --experiment " + exp_file.string());
  REQUIRE(self.code == 0);
  CHECK(self.out.find("a_nm,residual_pN,ci95_pN\n") == 0);
  CHECK(self.out.find("200,0,0.5\n") != std::string::npos);
  CHECK(self.out.find("300,0,0.5\n") != std::string::npos);
  CHECK(self.out.find("# residuals_within_ci95 = 2/2") != std::string::npos);

  // shift every measured force by +1 pN: residuals become -1
  std::ofstream shifted(exp_file);
  shifted << "a_nm,mean_force_pN,ci95_pN\n";
  shifted << "200," << casimir::io::format_full(forces[0] + 1.0) << ",0.5\n";
  shifted << "300," << casimir::io::format_full(forces[1] + 1.0) << ",0.5\n";
  shifted.close();
  const auto off = run_cli("compare --model plasma --experiment " + exp_file.string());
  REQUIRE(off.code == 0);
  {
    std::stringstream ss(off.out);
    std::string row;
    std::getline(ss, row); // header
    int parsed = 0;
    while (std::getline(ss, row) && row[0] != '#') {
      std::stringstream rs(row);
      std::string a, res;
      std::getline(rs, a, ',');
      std::getline(rs, res, ',');
      CHECK(std::strtod(res.c_str(), nullptr) == Catch::Approx(-1.0).margin(1e-9));
      ++parsed;
    }
    CHECK(parsed == 2);
  }
  CHECK(off.out.find("# residuals_within_ci95 = 0/2") != std::string::npos);

  // malformed header names the offending column
  std::ofstream bad(exp_file);
  bad << "a_nm,force,ci95_pN\n200,22,1\n";
  bad.close();
  const auto broken = run_cli("compare --model plasma --experiment " + exp_file.string());
  CHECK(broken.code == 2);
  CHECK(broken.err.find("mean_force_pN") != std::string::npos);
}

TEST_CASE("tabulated data flows through eps and force-table", "[cli]") {
  const std::string nk = std::string(CASIMIR_SOURCE_DIR) + "/data/synthetic_gold_nk.csv";
  const auto eps = run_cli("eps --model tabulated --nk-data " + nk +
                           " --include-plasma-pole --no-low-extrapolation --axis imag "
                           "--grid-min 1 --grid-max 1 --grid-points 1");
  REQUIRE(eps.code == 0);
  const double v = std::strtod(eps.out.substr(eps.out.find("\n1,") + 3).c_str(), nullptr);
  CHECK(v == Catch::Approx(88.5685).epsilon(5e-3)); // interpolation-limited

  // tabulated without a table is a usage error
  const auto no_data = run_cli("eps --model tabulated --axis imag --grid-min 1 --grid-max 1 "
                               "--grid-points 1");
  CHECK(no_data.code == 2);
  CHECK(no_data.err.find("--nk-data") != std::string::npos);
}

TEST_CASE("pfa warning for large aspect ratios", "[cli]") {
  const auto r = run_cli("force-table --model plasma --separations-nm 2000 --radius-nm 95650");
  REQUIRE(r.code == 0);
  CHECK(r.err.find("proximity force approximation") != std::string::npos);
}

TEST_CASE("config file sets defaults and flags override", "[cli]") {
  const auto dir = fs::temp_directory_path();
  const auto cfg = dir / "cli_cfg.ini";
  std::ofstream c(cfg);
  c << "[force-table]\nmodel=plasma\nseparations-nm=200,300\nround=true\n";
  c.close();

  const auto from_cfg = run_cli("--config " + cfg.string() + " force-table");
  REQUIRE(from_cfg.code == 0);
  CHECK(from_cfg.out.find("200,22.46,plasma,300\n") != std::string::npos);
  CHECK(from_cfg.out.find("300,7.4") != std::string::npos);

  // command line overrides the config value
  const auto overridden =
      run_cli("--config " + cfg.string() + " force-table --separations-nm 300");
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("200,") == std::string::npos);
}

TEST_CASE("material file flows through the cli", "[cli]") {
  const auto dir = fs::temp_directory_path();
  const auto mat = dir / "cli_mat.material";
  std::ofstream m(mat);
  m << "omega_p_eV = 9.0\n";
  m.close();
  const auto r = run_cli("eps --material " + mat.string() +
                         " --axis imag --grid-min 9 --grid-max 9 --grid-points 1");
  REQUIRE(r.code == 0);
  CHECK(r.out == "xi_eV,eps\n9,2\n");

  const auto missing = run_cli("eps --material /does/not/exist.material --axis imag "
                               "--grid-min 1 --grid-max 1 --grid-points 1");
  CHECK(missing.code == 2);
}
