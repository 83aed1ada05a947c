#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "segsym/error.hpp"
#include "segsym/experiment.hpp"
#include "segsym/io.hpp"

using namespace segsym;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Precondition;
}

}  // namespace

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_experiment("{\n  \"name\": \"x\",\n  \"scenario\": ,\n}");
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
  CHECK(kind_of([] { parse_experiment("[1, 2]"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([] { parse_experiment(R"({"name": "a", "scenario": "profile", "colour": 1})"); }) ==
        ErrorKind::ConfigInvalid);
  CHECK(kind_of([] { load_experiment("/nonexistent/cfg.json"); }) == ErrorKind::InputMissing);
}

TEST_CASE("parameters are validated before any work") {
  std::ostringstream log;
  auto run = [&](const std::string& text) { return run_experiment(parse_experiment(text), log); };
  CHECK(kind_of([&] { run(R"({"name":"a","scenario":"solve2d","params":{"kappa":-1,"half_width":1,"h":0.1},"outputs":["u","v"]})"); }) ==
        ErrorKind::ConfigInvalid);
  CHECK(kind_of([&] { run(R"({"name":"a","scenario":"profile","params":{"spacing":0.05},"outputs":["p"]})"); }) ==
        ErrorKind::ConfigInvalid);
  CHECK(kind_of([&] { run(R"({"name":"a","scenario":"nope","outputs":[]})"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([&] { run(R"({"name":"a","scenario":"diag","params":{"functional":"N","in_u":"/nonexistent/u.csv","in_v":"/nonexistent/v.csv","kappa":1,"radii":"0.1:0.5:0.1"},"outputs":["t"]})"); }) ==
        ErrorKind::InputMissing);
}

TEST_CASE("exit codes by error kind") {
  CHECK(exit_code_for(ErrorKind::ConfigInvalid) == 1);
  CHECK(exit_code_for(ErrorKind::Precondition) == 1);
  CHECK(exit_code_for(ErrorKind::InputMissing) == 2);
  CHECK(exit_code_for(ErrorKind::NoConvergence) == 3);
  CHECK(exit_code_for(ErrorKind::ZeroDenominator) == 3);
  CHECK(exit_code_for(ErrorKind::NoSignChange) == 3);
  CHECK(exit_code_for(ErrorKind::MultipleSignChanges) == 3);
}

TEST_CASE("presets") {
  const auto& ps = presets();
  REQUIRE(ps.size() == 7);
  for (std::size_t i = 1; i < ps.size(); ++i) CHECK(ps[i - 1].id < ps[i].id);
  const std::string listing = list_presets();
  for (const auto& p : ps) CHECK(listing.find(p.id) != std::string::npos);
  CHECK(listing.find("blow-down") != std::string::npos);
  CHECK(listing.find("sphere") != std::string::npos);
}

TEST_CASE("radii and list parsing") {
  CHECK(parse_radii("0.5:2:0.5") == std::vector<double>{0.5, 1.0, 1.5, 2.0});
  CHECK(parse_radii("1,2,4") == std::vector<double>{1, 2, 4});
  CHECK(kind_of([] { parse_radii("2,1"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([] { parse_radii("a:b"); }) == ErrorKind::ConfigInvalid);
  CHECK(parse_list("1e2, 1e3") == std::vector<double>{100, 1000});
}

TEST_CASE("profile scenario writes its output") {
  const auto dir = std::filesystem::temp_directory_path() / "segsym_exp_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "p.csv").string();
  std::ostringstream log;
  const Outcome o = run_experiment(
      parse_experiment(R"({"name":"p","scenario":"profile","params":{"half_length":10,"h":"1/20"},"outputs":[")" + out + "\"]}"),
      log);
  CHECK(o.exit_code == 0);
  CHECK(o.result_line("p").rfind("RESULT name=p status=done", 0) == 0);
  const std::string text = io::read_text(out);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("x,u,v") != std::string::npos);
  CHECK(!std::filesystem::exists(out + ".tmp"));
  std::filesystem::remove_all(dir);
}
