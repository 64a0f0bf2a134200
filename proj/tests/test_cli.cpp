#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = mixmaster::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--help"}).out.find("simulate") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"chain", "--sector", "9", "--u", "3"}).code == 1);
  CHECK(run({"chain", "--u", "3"}).code == 1);
  CHECK(run({"chain", "--cycle", "classic18", "--u", "3"}).code == 1);
  auto bad = run({"eigenvalues", "--u", "abc"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error:") == 0);
}

TEST_CASE("kasner-orbit") {
  auto r = run({"kasner-orbit", "--u", "7/2", "--steps", "10", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["taub"] == true);
  CHECK(j["orbit"].size() == 5);
  CHECK(j["orbit"][1]["u_exact"] == "5/2");
}

TEST_CASE("eigenvalues") {
  auto r = run({"eigenvalues", "--u", "[;3,5]", "--sector", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["sector"] == 4);
  CHECK(j["eigenvalues"]["cross"].get<double>() == doctest::Approx(1.5418).epsilon(1e-4));
  auto all = run({"eigenvalues", "--u", "3"});
  CHECK(all.code == 0);
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 7);
}

TEST_CASE("chain formats are deterministic") {
  auto a = run({"chain", "--cycle", "classic18", "--format", "json"});
  auto b = run({"chain", "--cycle", "classic18", "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out);
  CHECK(j["sectors"].size() == 19);
  auto csv = run({"chain", "--u", "[;3,5]", "--sector", "4", "--policy", "classic", "--steps", "18", "--format", "csv"});
  CHECK(csv.out.rfind("index,sector,u\n0,4,", 0) == 0);
  auto text = run({"chain", "--cycle", "advanced18"});
  CHECK(text.out.find("passages: D A B2 A A A A B1") != std::string::npos);
}

TEST_CASE("resonance") {
  auto r = run({"resonance", "--cycle", "3-cycle", "--format", "json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["all_pass"] == false);
  auto c = run({"resonance", "--cycle", "classic18"});
  CHECK(c.code == 0);
  CHECK(c.out.find("all base points pass") != std::string::npos);
  CHECK(run({"resonance", "--u", "7/2", "--sector", "4", "--steps", "2"}).code == 1);
}

TEST_CASE("cllp") {
  auto r = run({"cllp", "--cycle", "3-cycle"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("symbolic: [[r5*r4") != std::string::npos);
  CHECK(r.out.find("eigenvalues: 2.61803, -1") != std::string::npos);
  auto c = run({"cllp", "--cycle", "classic18", "--format", "json"});
  auto j = json::parse(c.out);
  CHECK(j["factors"].size() == 8);
  CHECK(j["final"]["contraction"] == true);
  CHECK(j["final"]["eigen"]["values"][0].get<double>() == doctest::Approx(514.49).epsilon(5e-3));
  auto s = run({"cllp", "--cycle", "classic18", "--order", "sequential", "--format", "json"});
  CHECK(json::parse(s.out)["final"]["contraction"] == false);
}

TEST_CASE("simulate writes reports and csv files") {
  auto dir = std::filesystem::temp_directory_path() / "mixmaster_cli_test";
  std::filesystem::create_directories(dir);
  auto traj = (dir / "traj.csv").string(), events = (dir / "events.csv").string(), report = (dir / "r.json").string();
  auto r = run({"simulate", "--cycle", "classic18", "--entries", "4", "--stride", "50", "--trajectory", traj,
                "--events", events, "--report", report});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sectors matched: 4/4 (match)") != std::string::npos);
  std::ifstream t(traj);
  std::string header;
  std::getline(t, header);
  CHECK(header == "t,Sigma_plus,Sigma_minus,Sigma_cross,Sigma_two,N_minus,A,Omega_residual,g_residual,step_size,order");
  std::ifstream e(events);
  std::string line;
  int n = 0;
  while (std::getline(e, line)) ++n;
  CHECK(n == 5);
  std::ifstream rep(report);
  auto j = json::parse(rep);
  CHECK(j["match"] == true);

  auto multi = run({"simulate", "--eps", "1e-5,1e-6", "--entries", "3", "--format", "json"});
  REQUIRE(multi.code == 0);
  CHECK(json::parse(multi.out)["seeds"].size() == 2);

  auto b2 = run({"simulate", "--system", "b2", "--u", "5/2", "--format", "json"});
  CHECK(b2.code == 0);
  CHECK(json::parse(b2.out)["u_measured"].get<double>() == doctest::Approx(1.5).epsilon(1e-6));
  auto b9 = run({"simulate", "--system", "b9", "--u", "7/2", "--entries", "2"});
  CHECK(b9.code == 0);
  CHECK(run({"simulate", "--system", "b9"}).code == 1);
  CHECK(run({"simulate", "--eps", "x"}).code == 1);
  CHECK(run({"simulate", "--eps", "0.5"}).code == 1);
}

TEST_CASE("simulate reports a mismatch with exit code 2") {
  auto r = run({"simulate", "--cycle", "classic18", "--transverse", "0", "--span", "1000"});
  CHECK(r.code == 2);
  CHECK(r.out.find("mismatch") != std::string::npos);
}

TEST_CASE("verify-appendix") {
  auto r = run({"verify-appendix"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS: 82/82 fixture rows") != std::string::npos);
  CHECK(run({"verify-appendix", "--fixtures", "/nonexistent"}).code == 1);
}

}  // TEST_SUITE
