#include "hydro/initial_data.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "hydro/errors.hpp"
#include "hydro/spectral_ops.hpp"

namespace hydro {
namespace {

constexpr double kCompatibilityTolerance = 1e-10;

const char* field_name(RecipeField f) {
  switch (f) {
    case RecipeField::V1: return "v1";
    case RecipeField::V2: return "v2";
    case RecipeField::Rho: return "rho";
  }
  return "?";
}

bool resolvable(int mode, int n) { return 3 * std::abs(mode) <= n; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

InitialData make_initial(const Recipe& recipe, const Grid& grid) {
  InitialData data{{SpectralField(grid, Parity::EvenInZ),
                    SpectralField(grid, Parity::EvenInZ)},
                   SpectralField(grid, Parity::OddInZ),
                   SpectralField(grid, Parity::OddInZ)};

  for (const ModeSpec& mode : recipe) {
    const std::string where = std::string("mode ") + field_name(mode.field) + " (" +
                              std::to_string(mode.nx) + ", " + std::to_string(mode.ny) +
                              ", " + std::to_string(mode.m) + ")";
    if (mode.m < 0) {
      throw Error(ErrorCode::InvalidArgument, where + ": m must be nonnegative");
    }
    if (!resolvable(mode.nx, grid.nx()) || !resolvable(mode.ny, grid.ny()) ||
        !resolvable(mode.m, grid.nz())) {
      throw Error(ErrorCode::InvalidArgument,
                  where + ": above the 2/3 dealiasing cutoff of the grid");
    }
    const bool is_rho = mode.field == RecipeField::Rho;
    const ZBasis wanted = is_rho ? ZBasis::Sin : ZBasis::Cos;
    const ZBasis basis = mode.basis.value_or(wanted);
    if (basis != wanted) {
      throw Error(ErrorCode::ParityViolation,
                  where + (is_rho ? ": rho must be odd in z (sine basis)"
                                  : ": velocity must be even in z (cosine basis)"));
    }
    if (is_rho && mode.m == 0) {
      throw Error(ErrorCode::ParityViolation,
                  where + ": rho mode with m = 0 has no odd part");
    }
    SpectralField& target = mode.field == RecipeField::V1   ? data.v0[0]
                            : mode.field == RecipeField::V2 ? data.v0[1]
                                                            : data.rho0;
    target.add_separable(mode.nx, mode.ny, mode.m, mode.amplitude, mode.phase,
                         basis == ZBasis::Sin);
  }

  const SpectralField div = divergence_h(data.v0[0], data.v0[1]);
  double worst = 0.0;
  for (int ix = 0; ix < grid.nx(); ++ix)
    for (int iy = 0; iy < grid.ny(); ++iy) worst = std::max(worst, std::abs(div.at(ix, iy, 0)));
  if (worst > kCompatibilityTolerance) {
    std::ostringstream msg;
    msg << "initial velocity violates the barotropic constraint: vertical mean of "
           "div_h v0 reaches "
        << worst;
    throw Error(ErrorCode::CompatibilityViolation, msg.str());
  }

  data.w0 = vertical_integral_from_bottom(-1.0 * div, kCompatibilityTolerance);
  return data;
}

Recipe canonical_recipe(double amplitude) {
  if (!(amplitude > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "benchmark amplitude must be positive");
  }
  constexpr double half_pi = std::numbers::pi / 2;
  const double a = amplitude;
  // v1 = cos(2 pi x) cos(pi z) + 0.5 sin(2 pi y) + 0.25 cos(2 pi (x + y) + 0.3) cos(2 pi z)
  // v2 = 0.8 cos(2 pi y + 0.5) cos(pi z) + 0.4 cos(2 pi x) + 0.3 cos(2 pi (x - y) + 1.1) cos(2 pi z)
  // rho = 0.5 cos(2 pi x) sin(pi z) + 0.3 sin(2 pi y) sin(2 pi z) + 0.2 cos(2 pi (x + y)) sin(pi z)
  return {
      {RecipeField::V1, 1, 0, 1, 1.0 * a, 0.0, std::nullopt},
      {RecipeField::V1, 0, 1, 0, 0.5 * a, -half_pi, std::nullopt},
      {RecipeField::V1, 1, 1, 2, 0.25 * a, 0.3, std::nullopt},
      {RecipeField::V2, 0, 1, 1, 0.8 * a, 0.5, std::nullopt},
      {RecipeField::V2, 1, 0, 0, 0.4 * a, 0.0, std::nullopt},
      {RecipeField::V2, 1, -1, 2, 0.3 * a, 1.1, std::nullopt},
      {RecipeField::Rho, 1, 0, 1, 0.5 * a, 0.0, std::nullopt},
      {RecipeField::Rho, 0, 1, 2, 0.3 * a, -half_pi, std::nullopt},
      {RecipeField::Rho, 1, 1, 1, 0.2 * a, 0.0, std::nullopt},
  };
}

InitialData default_benchmark_data(double amplitude, const Grid& grid) {
  return make_initial(canonical_recipe(amplitude), grid);
}

Recipe parse_recipe(std::istream& in, const std::string& source) {
  Recipe recipe;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'mode = <field> <nx> <ny> <m> <amplitude> <phase> [cos|sin]'");
    const std::string key = trim(line.substr(0, eq));
    if (key != "mode") fail("unknown key '" + key + "'");

    std::istringstream tokens(line.substr(eq + 1));
    std::string field;
    ModeSpec spec;
    if (!(tokens >> field >> spec.nx >> spec.ny >> spec.m >> spec.amplitude >> spec.phase)) {
      fail("malformed mode entry");
    }
    if (field == "v1") spec.field = RecipeField::V1;
    else if (field == "v2") spec.field = RecipeField::V2;
    else if (field == "rho") spec.field = RecipeField::Rho;
    else fail("unknown field '" + field + "' (expected v1, v2 or rho)");

    std::string basis;
    if (tokens >> basis) {
      if (basis == "cos") spec.basis = ZBasis::Cos;
      else if (basis == "sin") spec.basis = ZBasis::Sin;
      else fail("unknown z basis '" + basis + "'");
    }
    std::string extra;
    if (tokens >> extra) fail("trailing token '" + extra + "'");
    recipe.push_back(spec);
  }
  return recipe;
}

Recipe load_recipe(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open recipe " + path.string());
  return parse_recipe(in, path.string());
}

std::string format_recipe(const Recipe& recipe) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const ModeSpec& m : recipe) {
    out << "mode = " << field_name(m.field) << ' ' << m.nx << ' ' << m.ny << ' ' << m.m
        << ' ' << m.amplitude << ' ' << m.phase;
    if (m.basis) out << (*m.basis == ZBasis::Cos ? " cos" : " sin");
    out << '\n';
  }
  return out.str();
}

}  // namespace hydro
