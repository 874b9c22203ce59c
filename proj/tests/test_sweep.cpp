#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "hydro/errors.hpp"
#include "hydro/sweep.hpp"

using namespace hydro;
namespace fs = std::filesystem;

namespace {

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hydro_sweep_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("fit_rate recovers an exact power law") {
  std::vector<std::pair<double, double>> pts;
  for (double l : {0.1, 0.05, 0.025, 0.0125}) pts.emplace_back(l, 3.0 * std::pow(l, 0.75));
  const RateFit f = fit_rate(pts);
  CHECK(f.slope == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
}

TEST_CASE("fit_rate rejects nonpositive errors and too few points") {
  try {
    (void)fit_rate({{0.1, 1.0}, {0.05, 0.0}});
    FAIL("expected NonPositiveError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveError);
  }
  CHECK_THROWS_AS(fit_rate({{0.1, 1.0}}), Error);
}

TEST_CASE("empty result gives a header-only CSV and an inconclusive summary") {
  const fs::path dir = scratch("empty");
  SweepResult r;
  r.beta = r.gamma = 4.0;
  r.predicted_slope = 1.0;
  emit_report(r, dir);
  const std::string csv = read(dir / "records.csv");
  CHECK(count(csv, "\n") == 1);
  const auto j = nlohmann::json::parse(read(dir / "summary.json"));
  CHECK(j["status"] == "inconclusive");
  const std::string svg = read(dir / "rate.svg");
  CHECK(count(svg, "<line") == 2);
  CHECK(count(svg, "<circle") == 0);
  fs::remove_all(dir);
}

TEST_CASE("four-point report") {
  const fs::path dir = scratch("four");
  SweepResult r;
  r.beta = r.gamma = 4.0;
  r.predicted_slope = 1.0;
  for (double l : {0.1, 0.05, 0.025, 0.0125}) {
    SweepRecord rec;
    rec.lambda = l;
    rec.error = 2.0 * l;
    rec.norms.sup_L2 = rec.error * rec.error;
    r.records.push_back(rec);
  }
  r.fitted_slope = 1.0;
  emit_report(r, dir);
  CHECK(count(read(dir / "records.csv"), "\n") == 5);
  const auto j = nlohmann::json::parse(read(dir / "summary.json"));
  CHECK(j["status"] == "pass");
  CHECK(j["strictly_decreasing"] == true);
  const std::string svg = read(dir / "rate.svg");
  CHECK(count(svg, "<line") == 2);
  CHECK(count(svg, "<circle") == 4);
  CHECK(count(svg, "<polyline") == 0);
  CHECK(count(svg, "<path") == 0);
  fs::remove_all(dir);
}

TEST_CASE("sweep band and monotonicity helpers") {
  SweepResult r;
  r.predicted_slope = 0.5;
  CHECK_FALSE(r.slope_within_band());
  r.fitted_slope = 0.64;
  CHECK(r.slope_within_band());
  r.fitted_slope = 0.66;
  CHECK_FALSE(r.slope_within_band());
  r.records = {{0.1, false, "", {}, 1.0, {}}, {0.05, false, "", {}, 1.0, {}}};
  CHECK_FALSE(r.strictly_decreasing());
}

TEST_CASE("small sweep runs both systems and is thread-count independent") {
  SolverParams p;
  p.grid = Grid::cube(8);
  p.dt = 5e-3;
  const InitialData d = default_benchmark_data(1.0, p.grid);
  SweepOptions one;
  one.series_every = 1;
  SweepOptions many = one;
  many.threads = 3;
  const SweepResult a = run_sweep({0.4, 0.2, 0.1}, p, d, 0.05, one);
  const SweepResult b = run_sweep({0.4, 0.2, 0.1}, p, d, 0.05, many);
  REQUIRE(a.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_FALSE(a.records[i].failed);
    CHECK(a.records[i].error == b.records[i].error);
    CHECK(a.records[i].series.size() == 11);
  }
  CHECK(a.fitted_slope.has_value());
  CHECK(a.predicted_slope == 1.0);
  CHECK(a.records[0].lambda == 0.4);

  CHECK_THROWS_AS(run_sweep({0.1, 0.2}, p, d, 0.05), Error);
}

TEST_CASE("failed points are recorded, not dropped") {
  SolverParams p;
  p.grid = Grid::cube(8);
  p.dt = 0.5;  // far beyond any stability limit
  const InitialData d = default_benchmark_data(50.0, p.grid);
  const SweepResult r = run_sweep({0.5, 0.25}, p, d, 20.0);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].failed);
  CHECK_FALSE(r.records[0].failure.empty());
  CHECK_FALSE(r.fitted_slope.has_value());
}
