#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpfock/cli.hpp"
#include "oracles.hpp"

using namespace mpfock;
using mpfock::cli::run_cli;
using Json = mpfock::Json;

namespace {

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& stem) {
  return std::filesystem::temp_directory_path() /
         ("mpfock_cli_test_" + stem + "_" + std::to_string(::getpid()));
}

}  // namespace

TEST_CASE("state report for the pair state") {
  CliRun r = run({"state", "--family", "tmsv", "--r", "0.5"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["tool"] == "mpfock");
  CHECK(j["convention"]["vacuum_variance"] == 1.0);
  CHECK(j["convention"]["entropy_units"] == "nats");
  CHECK(j["truncation"]["n_max"] == 14);
  CHECK(j["input"]["family"] == "tmsv");
  CHECK(j["payload"]["modes"] == 2);
  CHECK(j["payload"]["pure_form"] == true);
  CHECK(double(j["payload"]["purity"]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(double(j["payload"]["energy"]["total"]) ==
        doctest::Approx(oracles::kPairEnergyHalf).epsilon(1e-7));
  CHECK(j["payload"]["density_check"]["pass"] == true);
}

TEST_CASE("repeated runs are byte-identical") {
  std::vector<std::string> args = {"separability", "--family", "mp_tmsv",
                                   "--k",          "2",        "--gamma",
                                   "0.5"};
  CliRun a = run(args);
  CliRun b = run(args);
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("covariance payload") {
  CliRun r = run({"cov", "--family", "mp_tmsv", "--k", "2", "--r", "0.5"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["payload"]["k"] == 2);
  CHECK(double(j["payload"]["sigma"][0][0]) ==
        doctest::Approx(oracles::kCoshOne).epsilon(1e-7));
  CHECK(double(j["payload"]["sigma"][0][2]) ==
        doctest::Approx(oracles::kSinhOne).epsilon(1e-7));
  CHECK(j["payload"]["standard_form_validation"]["ok"] == true);
}

TEST_CASE("separability payload and decisions") {
  CliRun ent = run({"separability", "--family", "tmsv", "--r", "0.5"});
  REQUIRE(ent.code == cli::kExitOk);
  Json je = Json::parse(ent.out);
  CHECK(je["payload"]["decision"] == "Entangled");
  CHECK(je["payload"]["criterion"]["branch"] == 1);
  CHECK(je["payload"]["oracle"]["entangled"] == true);
  CHECK(je["payload"]["oracle_consistent"] == true);

  CliRun sep = run({"separability", "--config", "", "--family", "product"});
  CHECK(sep.code == cli::kExitInvalidSpec);  // missing factor specs

  // thermal product: certified separable, oracle agrees
  auto cfg = temp_file("product_cfg");
  {
    std::ofstream f(cfg);
    f << R"({"family":"product",
            "mode1":{"family":"mp_thermal","nu":0.4,"k":2,"j":0},
            "mode2":{"family":"mp_thermal","nu":0.6,"k":2,"j":0}})";
  }
  CliRun prod = run({"separability", "--config", cfg.string(), "--k", "2"});
  REQUIRE(prod.code == cli::kExitOk);
  Json jp = Json::parse(prod.out);
  CHECK(jp["payload"]["decision"] == "SeparableCertified");
  CHECK(jp["payload"]["certificate"]["certified"] == true);
  CHECK(jp["payload"]["oracle"]["entangled"] == false);
  std::filesystem::remove(cfg);
}

TEST_CASE("measures payload") {
  CliRun r = run({"measures", "--family", "tmsv", "--gamma", "0.6",
                  "--nmax", "64", "--pmin-energy", "1"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(double(j["payload"]["purity"]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(j["payload"].contains("entanglement_entropy"));
  CHECK(double(j["payload"]["log_negativity"]) ==
        doctest::Approx(2 * oracles::kAtanhSixTenths).epsilon(1e-6));
  CHECK(double(j["payload"]["p_min"]["bound"]) ==
        doctest::Approx(0.25).epsilon(1e-12));

  CliRun cmp = run({"measures", "--family", "mp_tmsv", "--k", "3", "--gamma",
                    "0.6", "--compare-k", "3"});
  REQUIRE(cmp.code == cli::kExitOk);
  Json jc = Json::parse(cmp.out);
  CHECK(jc["payload"]["compare_k"]["confined"] == true);
  CHECK(std::abs(double(jc["payload"]["compare_k"]["difference"])) <= 1e-9);
}

TEST_CASE("sector payload") {
  CliRun r = run({"sector", "--family", "mp_tmsv", "--k", "3", "--gamma", "0.5"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["payload"]["k"] == 3);
  CHECK(j["payload"]["k_inferred"] == false);
  CHECK(j["payload"]["combined"]["confined"] == true);
  CHECK(j["payload"]["combined"]["sector"] == 0);

  CliRun inf = run({"sector", "--family", "tmsv", "--gamma", "0.5"});
  REQUIRE(inf.code == cli::kExitOk);
  Json ji = Json::parse(inf.out);
  CHECK(ji["payload"]["k"] == 1);
  CHECK(ji["payload"]["k_inferred"] == true);
}

TEST_CASE("wigner CSV output") {
  auto csv = temp_file("wigner.csv");
  CliRun r = run({"wigner", "--family", "thermal", "--nbar", "0.5",
                  "--grid-points", "21", "--out", csv.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());

  std::ifstream f(csv);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,p,W");
  int rows = 0;
  double origin = -1.0;
  std::string line;
  while (std::getline(f, line)) {
    ++rows;
    double x, p, w;
    REQUIRE(std::sscanf(line.c_str(), "%lg,%lg,%lg", &x, &p, &w) == 3);
    if (std::abs(x) < 1e-9 && std::abs(p) < 1e-9) origin = w;
  }
  CHECK(rows == 21 * 21);
  CHECK(origin == doctest::Approx(1.0 / (4 * M_PI)).epsilon(1e-8));

  std::ifstream hf(csv.string() + ".json");
  REQUIRE(hf.good());
  Json head = Json::parse(hf);
  CHECK(head["payload"]["points"] == 21);
  CHECK(std::abs(double(head["payload"]["normalization_residual"])) <= 1e-3);

  // identical reruns produce identical bytes
  auto csv2 = temp_file("wigner2.csv");
  run({"wigner", "--family", "thermal", "--nbar", "0.5", "--grid-points", "21",
       "--out", csv2.string()});
  std::ifstream a(csv, std::ios::binary), b(csv2, std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), {});
  std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
  std::filesystem::remove(csv);
  std::filesystem::remove(csv.string() + ".json");
  std::filesystem::remove(csv2);
  std::filesystem::remove(csv2.string() + ".json");
}

TEST_CASE("state files round-trip") {
  auto path = temp_file("ket.json");
  {
    // 0.8|00> + 0.6|11> padded to n_max=4 so covariance moments are clean
    std::ofstream f(path);
    f << R"({"modes":2,"n_max":4,"ket":[)";
    for (int idx = 0; idx < 25; ++idx) {
      double re = idx == 0 ? 0.8 : (idx == 6 ? 0.6 : 0.0);
      f << (idx ? "," : "") << '[' << re << ",0]";
    }
    f << "]}";
  }
  CliRun r = run({"state", "--file", path.string()});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["payload"]["modes"] == 2);
  CHECK(double(j["payload"]["purity"]) == doctest::Approx(1.0).epsilon(1e-12));

  CliRun sep = run({"separability", "--file", path.string()});
  REQUIRE(sep.code == cli::kExitOk);
  CHECK(Json::parse(sep.out)["payload"]["decision"] == "Entangled");

  {
    std::ofstream f(path);
    f << R"({"modes":1,"n_max":1,"rho":[[[0.5,0],[0,0.1]],[[0,-0.1],[0.5,0]]]})";
  }
  CliRun mixed = run({"state", "--file", path.string()});
  REQUIRE(mixed.code == cli::kExitOk);
  CHECK(Json::parse(mixed.out)["payload"]["modes"] == 1);

  {
    std::ofstream f(path);
    f << R"({"modes":1,"n_max":1,"rho":[[[0.9,0],[0,0]],[[0,0],[0.5,0]]]})";
  }
  CHECK(run({"state", "--file", path.string()}).code == cli::kExitInvalidSpec);
  std::filesystem::remove(path);
}

TEST_CASE("config merge with flag override") {
  auto cfg = temp_file("cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"family":"tmsv","gamma":0.4})";
  }
  CliRun r = run({"measures", "--config", cfg.string(), "--gamma", "0.6"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = Json::parse(r.out);
  CHECK(double(j["input"]["gamma"]) == doctest::Approx(0.6));
  std::filesystem::remove(cfg);
}

TEST_CASE("exit codes") {
  CHECK(run({"state", "--family", "nonsense"}).code == cli::kExitInvalidSpec);
  CHECK(run({"state", "--family", "tmsv", "--gamma", "1.2"}).code ==
        cli::kExitInvalidSpec);
  CHECK(run({"state", "--family", "tmsv", "--gamma", "0.5", "--r", "0.2"}).code ==
        cli::kExitInvalidSpec);
  CHECK(run({"state", "--family", "tmsv"}).code == cli::kExitInvalidSpec);
  CHECK(run({"state", "--family", "tmsv", "--gamma", "0.9", "--nmax", "2"}).code ==
        cli::kExitTruncation);
  CHECK(run({"wigner", "--family", "thermal", "--nbar", "0.5", "--k", "2",
             "--j", "1"})
            .code == cli::kExitSector);
  CHECK(run({"separability", "--family", "thermal", "--nbar", "0.5"}).code ==
        cli::kExitInvalidSpec);
  CHECK(run({"state"}).code == cli::kExitInvalidSpec);  // family required
  CHECK(run({}).code == cli::kExitInvalidSpec);         // subcommand required
  CHECK(run({"state", "--no-such-flag"}).code == cli::kExitInvalidSpec);

  CliRun help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("wigner") != std::string::npos);

  CliRun err = run({"state", "--family", "nonsense"});
  CHECK(err.err.find("invalid spec") != std::string::npos);
}
