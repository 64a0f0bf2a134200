#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mixmaster/fixtures.hpp"
#include "mixmaster/verify.hpp"

namespace fs = std::filesystem;
using namespace mixmaster;

namespace {

/// Copy of the fixture directory with one value replaced.
fs::path corrupted_copy(const std::string& file, const std::string& from, const std::string& to) {
  fs::path dir = fs::temp_directory_path() / ("mixmaster_fixtures_" + file);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(fixtures::default_fixture_dir())) fs::copy(e.path(), dir / e.path().filename());
  std::ifstream in(dir / file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  std::ofstream(dir / file) << text;
  return dir;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("every transcribed row is reproduced") {
  auto rep = verify::verify_appendix(fixtures::default_fixture_dir());
  CHECK(rep.rows.size() == 82);
  CHECK(rep.passed() == rep.rows.size());
  CHECK(rep.pass());
  for (const auto& r : rep.rows) {
    CAPTURE(r.table);
    CAPTURE(r.row);
    CHECK(r.pass);
    CHECK(r.delta <= r.tolerance);
  }
}

TEST_CASE("a corrupted eigenvalue row is reported") {
  auto dir = corrupted_copy(fixtures::kEigenFile, "1.5418,1.91557", "1.5518,1.91557");
  auto rep = verify::verify_appendix(dir);
  CHECK_FALSE(rep.pass());
  CHECK(rep.passed() == rep.rows.size() - 1);
}

TEST_CASE("a corrupted resonance vector is reported") {
  auto dir = corrupted_copy(fixtures::kTakensFile, "3-5,1,1,34,3,-46,-80,-37", "3-5,1,1,34,3,-46,-80,-36");
  auto rep = verify::verify_appendix(dir);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("csv reader") {
  auto t = fixtures::CsvTable::parse("# note\na,b\n1,2\n\n3,4\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.rows.size() == 2);
  CHECK(t.column("b") == 1);
  CHECK_THROWS_AS(t.column("c"), fixtures::FixtureError);
  CHECK_THROWS_AS(fixtures::CsvTable::parse("a,b\n1\n"), fixtures::FixtureError);
  CHECK_THROWS_AS(fixtures::AlphaTable::load("/nonexistent/takens.csv"), fixtures::FixtureError);
}

}  // TEST_SUITE
