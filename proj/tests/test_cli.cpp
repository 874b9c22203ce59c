#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hydro/cli.hpp"
#include "hydro/config.hpp"
#include "hydro/errors.hpp"

using namespace hydro;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

int cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parse, validate and round trip") {
  std::istringstream in(
      "# sweep\nsubcommand = sweep\nlambdas = 0.1, 0.05\nbeta = 3.5\ngrid = 16x16x8\n"
      "t_end = 0.25 # trailing comment\nseed = 12345678901234\n");
  const RunConfig c = parse_config(in, "a.cfg");
  CHECK(c.params.beta == 3.5);
  CHECK(c.params.grid == Grid(16, 16, 8));
  CHECK(c.lambdas == std::vector<double>{0.1, 0.05});
  CHECK(c.seed == 12345678901234ull);
  validate_config(c);
  std::istringstream again(serialize_config(c));
  const RunConfig d = parse_config(again);
  CHECK(d == c);
  CHECK(serialize_config(d) == serialize_config(c));
}

TEST_CASE("config errors name the location or field") {
  std::istringstream bad("beta = 3\nfoo = 1\n");
  try {
    (void)parse_config(bad, "x.cfg");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).rfind("x.cfg:2:", 0) == 0);
  }
  std::istringstream nonnum("dt = fast\n");
  CHECK(code_of([&] { (void)parse_config(nonnum); }) == ErrorCode::ParseError);
  std::istringstream noeq("dt 0.1\n");
  CHECK(code_of([&] { (void)parse_config(noeq); }) == ErrorCode::ParseError);

  RunConfig c;
  c.subcommand = "run-boussinesq";
  c.lambda = 0.1;
  c.params.lambda = 0.1;
  c.params.beta = 2.0;
  try {
    validate_config(c);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("'beta'") != std::string::npos);
  }
  RunConfig s;
  s.subcommand = "sweep";
  s.params.t_end = 0.1;
  CHECK(code_of([&] { validate_config(s); }) == ErrorCode::ValidationError);
  RunConfig r;
  r.subcommand = "run-primitive";
  CHECK(code_of([&] { validate_config(r); }) == ErrorCode::ValidationError);
}

TEST_CASE("flags override file values") {
  std::istringstream in("dt = 0.01\nlambda = 0.2\n");
  RunConfig c = parse_config(in);
  c = apply_overrides(c, {{"dt", "0.002"}});
  CHECK(c.params.dt == 0.002);
  CHECK(c.params.lambda == 0.2);
  CHECK(code_of([&] { (void)apply_overrides(c, {{"bogus", "1"}}); }) == ErrorCode::ParseError);
}

TEST_CASE("exit codes") {
  CHECK(cli({}) == 2);
  CHECK(cli({"frobnicate"}) == 2);
  CHECK(cli({"run-boussinesq", "--dt"}) == 2);
  std::string err;
  CHECK(cli({"run-boussinesq", "--lambda", "0.1", "--beta", "2", "--out",
             (fs::temp_directory_path() / "hydro_cli_never").string()}, &err) == 3);
  CHECK(err.find("beta") != std::string::npos);
  CHECK(cli({"run-boussinesq", "--lambda", "0.1", "--config", "/nonexistent/x.cfg"}) == 4);
  CHECK(exit_code(ErrorCode::BlowUp) == 5);
  CHECK(exit_code(ErrorCode::CompatibilityViolation) == 6);
}

TEST_CASE("run-primitive writes manifest, diagnostics and snapshots; flag beats file") {
  const fs::path dir = fs::temp_directory_path() / "hydro_cli_run";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "lambda = 0.2\ndt = 0.01\nt_end = 0.02\ngrid = 8\n";
  }
  const fs::path out = dir / "out";
  REQUIRE(cli({"run-primitive", "--config", (dir / "run.cfg").string(), "--dt", "0.005",
               "--snapshot-every", "2", "--out", out.string()}) == 0);
  const auto m = nlohmann::json::parse(read(out / "manifest.json"));
  CHECK(m["config"]["dt"] == "0.005");
  CHECK(m["steps"] == 4);
  CHECK(m["version"] == kVersion);
  CHECK(fs::exists(out / "snap_000000.bin"));
  CHECK(fs::exists(out / "snap_000002.bin"));
  CHECK(fs::exists(out / "snap_000004.bin"));
  CHECK(fs::exists(out / "diagnostics.csv"));
  CHECK(fs::exists(out / "timing.json"));
  fs::remove_all(dir);
}

TEST_CASE("verify-lemma is reproducible for a fixed seed") {
  const fs::path a = fs::temp_directory_path() / "hydro_cli_lemma_a";
  const fs::path b = fs::temp_directory_path() / "hydro_cli_lemma_b";
  for (const auto& d : {a, b}) {
    fs::remove_all(d);
    REQUIRE(cli({"verify-lemma", "--seed", "3", "--samples", "4", "--out", d.string()}) == 0);
  }
  CHECK(read(a / "lemma.json") == read(b / "lemma.json"));
  CHECK(read(a / "manifest.json") == read(b / "manifest.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}
