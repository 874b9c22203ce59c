#pragma once

#include <vector>

#include "hydro/boussinesq.hpp"
#include "hydro/initial_data.hpp"
#include "hydro/params.hpp"
#include "hydro/state.hpp"

namespace hydro {

/// Explicit tendencies of the hydrostatic system before any pressure term:
/// advection, rotation, and the stratification term -w in the rho-equation.
struct PrimitiveTendency {
  HorizontalVelocity v;
  SpectralField rho;
};

PrimitiveTendency rhs_explicit(const HydroState& state, const SolverParams& params);

/// w = -int_{-1}^z div_h v. Throws BarotropicViolation if the vertical mean of
/// div_h v exceeds 1e-10 for some horizontal mode.
SpectralField diagnose_w(const HorizontalVelocity& v);

struct HydrostaticPressure {
  SpectralField p;          ///< p_surface + int_{-1}^z rho
  SpectralField p_surface;  ///< z-independent, zero mean
};

/// Baroclinic part int_{-1}^z rho plus the surface pressure solving
/// Delta_h p_s = div_h <forcing - grad_h int rho>, with <.> the z-average, so
/// that forcing - grad_h p keeps the barotropic constraint.
HydrostaticPressure hydrostatic_pressure(const SpectralField& rho,
                                         const HorizontalVelocity& forcing);

/// Max over horizontal modes of |vertical mean of div_h v|.
double barotropic_residual(const HorizontalVelocity& v);

/// Removes the horizontally divergent part of the z-mean of v.
void project_barotropic(HorizontalVelocity& v);

HydroState initial_hydro_state(const InitialData& initial, const SolverParams& params);

/// One integrating-factor midpoint step with horizontal-only diffusion;
/// w and p are re-diagnosed. Throws BlowUp.
HydroState step_primitive(const HydroState& state, const SolverParams& params);

double divergence_residual(const HydroState& state);

struct PrimitiveTrajectory {
  std::vector<HydroState> snapshots;
  std::vector<long> snapshot_steps;
  std::vector<StepRecord> records;
  EnergyBudget budget;
};

/// lambda, beta and gamma do not enter the dynamics; they are carried for
/// reporting parity with the Boussinesq runner.
PrimitiveTrajectory run_primitive(const InitialData& initial, const SolverParams& params,
                                  const RunOptions& options = {});

}  // namespace hydro
