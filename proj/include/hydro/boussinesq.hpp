#pragma once

#include <vector>

#include "hydro/diagnostics.hpp"
#include "hydro/initial_data.hpp"
#include "hydro/params.hpp"
#include "hydro/state.hpp"

namespace hydro {

/// Explicit tendencies of the scaled Boussinesq system, w-equation divided by
/// lambda^2. Pressure and linear diffusion are excluded.
struct BoussinesqTendency {
  HorizontalVelocity v;
  SpectralField w;
  SpectralField rho;
};

/// Advection (dealiased products), rotation -f0 k x v, buoyancy rho/lambda^2
/// in the w-equation and the stratification sink -w in the rho-equation.
BoussinesqTendency rhs_explicit(const FlowState& state, const SolverParams& params);

/// Solves (Delta_h + lambda^-2 d_zz) p = source per mode with p(0,0,0) = 0.
/// Throws ZeroMeanViolation if the source mean exceeds 1e-12.
SpectralField pressure_solve_anisotropic(const SpectralField& source, double lambda);
SpectralField pressure_solve_anisotropic(const SpectralField& source,
                                         const SolverParams& params);
/// (Delta_h + lambda^-2 d_zz) f
SpectralField anisotropic_laplacian(const SpectralField& f, double lambda);

/// Removes the pressure gradient that makes the tendency divergence-free and
/// returns that pressure.
SpectralField project_tendency(BoussinesqTendency& tendency, double lambda);

/// Orthogonal (energy-weighted) projection of (v, w) onto div_h v + d_z w = 0.
void project_divergence_free(HorizontalVelocity& v, SpectralField& w, double lambda);

/// State at t = 0: w from the initial data, p from the projected tendency.
FlowState initial_flow_state(const InitialData& initial, const SolverParams& params);

/// One integrating-factor midpoint step followed by projection onto the
/// divergence-free, parity-respecting subspace. Throws BlowUp.
FlowState step_boussinesq(const FlowState& state, const SolverParams& params);

/// Max |div_h v + d_z w| on the collocation grid.
double divergence_residual(const FlowState& state);

struct RunOptions {
  /// Snapshot every n steps; 0 keeps only the initial and final states.
  long snapshot_every = 0;
  Quadrature quadrature = Quadrature::ExponentialMean;
  bool check_cfl = true;
};

/// Per-step diagnostic row.
struct StepRecord {
  long step = 0;
  double time = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double violation = 0.0;
  double residual = 0.0;
  double dzv_L4 = 0.0;
  double divergence = 0.0;
  double barotropic = 0.0;
  double parity_fraction = 0.0;
};

struct BoussinesqTrajectory {
  std::vector<FlowState> snapshots;
  std::vector<long> snapshot_steps;
  std::vector<StepRecord> records;
  EnergyBudget budget;
};

/// Runs to params.t_end. Deterministic; throws CflViolation or BlowUp.
BoussinesqTrajectory run_boussinesq(const InitialData& initial,
                                    const SolverParams& params,
                                    const RunOptions& options = {});

}  // namespace hydro
