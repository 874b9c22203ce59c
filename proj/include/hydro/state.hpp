#pragma once

#include <array>

#include "hydro/spectral_field.hpp"

namespace hydro {

using HorizontalVelocity = std::array<SpectralField, 2>;

/// Snapshot of the scaled Boussinesq system: v, p even in z; w, rho odd.
struct FlowState {
  HorizontalVelocity v;
  SpectralField w;
  SpectralField rho;
  SpectralField p;
  double time = 0.0;

  const Grid& grid() const { return rho.grid(); }
};

/// Snapshot of the hydrostatic (primitive) system. w is diagnostic; p is the
/// full hydrostatic pressure p_surface + int_{-1}^z rho, and p_surface is
/// z-independent.
struct HydroState {
  HorizontalVelocity v;
  SpectralField w;
  SpectralField rho;
  SpectralField p;
  SpectralField p_surface;
  double time = 0.0;

  const Grid& grid() const { return rho.grid(); }
};

}  // namespace hydro
