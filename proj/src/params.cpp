#include "hydro/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hydro/errors.hpp"

namespace hydro {

double SolverParams::eta() const { return std::min({2.0, beta - 2.0, gamma - 2.0}); }

double SolverParams::vertical_viscosity() const { return std::pow(lambda, beta - 2.0); }

double SolverParams::vertical_diffusivity() const { return std::pow(lambda, gamma - 2.0); }

long SolverParams::steps() const { return std::lround(t_end / dt); }

void SolverParams::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::ValidationError, "invalid '" + field + "': " + why);
  };
  if (!(lambda > 0.0 && lambda <= 1.0)) fail("lambda", "must lie in (0, 1]");
  if (!(beta > 2.0) || !std::isfinite(beta)) fail("beta", "must exceed 2");
  if (!(gamma > 2.0) || !std::isfinite(gamma)) fail("gamma", "must exceed 2");
  if (!std::isfinite(f0)) fail("f0", "must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt", "must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end", "must be nonnegative");
  if (grid.empty()) fail("grid", "not set");
}

}  // namespace hydro
