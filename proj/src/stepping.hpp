// Internal helpers shared by the two time steppers.
#pragma once

#include <cmath>
#include <vector>

#include "hydro/params.hpp"
#include "hydro/spectral_ops.hpp"
#include "hydro/state.hpp"

namespace hydro::detail {

/// Separable decay factor exp(-(kx^2 + ky^2 + c kz^2) t) stored per axis.
struct DecayFactor {
  std::vector<double> x, y, z;

  DecayFactor(const Grid& grid, double vertical_coeff, double t);

  void apply(SpectralField& f) const;
};

/// Velocity components sampled on the collocation grid.
struct PhysicalVelocity {
  PhysicalField u1, u2, w;
};

PhysicalVelocity velocity_on_grid(const HorizontalVelocity& v, const SpectralField& w);

/// (u . grad) q with the product formed on the grid; dealiased when asked.
SpectralField advect(const PhysicalVelocity& u, const SpectralField& q, bool dealias);

/// Throws BlowUp if any field norm is non-finite or exceeds the bound.
void check_bounded(std::initializer_list<const SpectralField*> fields, double time);

/// Advective step bound: dt <= 0.5 dx / max(1, |u|_inf).
void check_cfl(const HorizontalVelocity& v, const SpectralField& w, double dt);

/// Largest physical-space magnitude of div_h v + d_z w.
double divergence_residual(const HorizontalVelocity& v, const SpectralField& w);

/// Restores parity class, exact realness and the 2/3 truncation.
void clean(SpectralField& f, Parity parity, bool dealias);

}  // namespace hydro::detail
