#pragma once

#include "hydro/grid.hpp"

namespace hydro {

/// Everything the two systems need. Horizontal viscosity and diffusivity are
/// fixed to one; vertical ones are lambda^(beta-2) and lambda^(gamma-2).
struct SolverParams {
  double lambda = 1.0;  ///< aspect ratio, in (0, 1]
  double beta = 4.0;    ///< vertical viscosity exponent, > 2
  double gamma = 4.0;   ///< vertical diffusivity exponent, > 2
  double f0 = 0.0;      ///< Coriolis parameter
  double dt = 1e-3;
  double t_end = 0.0;
  Grid grid = Grid::cube(16);
  bool dealias = true;

  /// Convergence exponent min{2, beta - 2, gamma - 2}.
  double eta() const;
  /// Buoyancy frequency N = 1/lambda; reported only, the scaled equations
  /// already absorbed it.
  double buoyancy_frequency() const { return 1.0 / lambda; }
  double vertical_viscosity() const;    ///< lambda^(beta-2)
  double vertical_diffusivity() const;  ///< lambda^(gamma-2)

  /// Number of steps to reach t_end (t_end / dt rounded to nearest).
  long steps() const;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

}  // namespace hydro
