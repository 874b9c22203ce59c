#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hydro/params.hpp"
#include "hydro/state.hpp"

namespace hydro {

// ---------------------------------------------------------------------------
// Energy budget

/// How the dissipation integral is accumulated between two samples.
///
/// Trapezoid is the plain rule. ExponentialMean integrates each Fourier mode's
/// dissipation as if its energy varied geometrically between the samples
/// (logarithmic mean), which is exact for the integrating-factor treatment of
/// linear diffusion and second order otherwise.
enum class Quadrature { Trapezoid, ExponentialMean };

struct EnergyBudget {
  double time = 0.0;
  double energy = 0.0;          ///< E(t)
  double dissipation = 0.0;     ///< D(t), accumulated
  double initial_energy = 0.0;  ///< E(0)
  double residual = 0.0;        ///< E + D - E(0), signed
  double violation = 0.0;       ///< max(0, residual) at the latest sample
  double max_violation = 0.0;   ///< running max of violation
  double max_abs_residual = 0.0;
  long samples = 0;
  Quadrature quadrature = Quadrature::ExponentialMean;

  std::vector<double> modal_energy;  ///< previous sample, per component mode
};

/// E = 1/2 (|v|^2 + lambda^2 |w|^2 + |rho|^2)
double energy(const FlowState& state, const SolverParams& params);
/// E = 1/2 (|v|^2 + |rho|^2)
double energy(const HydroState& state);
/// Instantaneous dissipation rate, the integrand of D.
double dissipation_rate(const FlowState& state, const SolverParams& params);
double dissipation_rate(const HydroState& state);

/// The first call initialises E(0); later calls accumulate D over dt.
EnergyBudget energy_budget_update(EnergyBudget acc, const FlowState& state,
                                  const SolverParams& params, double dt);
EnergyBudget energy_budget_update(EnergyBudget acc, const HydroState& state,
                                  const SolverParams& params, double dt);

// ---------------------------------------------------------------------------
// Difference norms between the two systems

/// Weighted integrands of the difference bundle at one instant.
struct DiffTerms {
  double l2 = 0.0;         ///< |V|^2 + lambda^2 |W|^2 + |Gamma|^2
  double grad_h_V = 0.0;   ///< |grad_h V|^2
  double dz_V = 0.0;       ///< lambda^(beta-2) |d_z V|^2
  double grad_h_W = 0.0;   ///< lambda^2 |grad_h W|^2
  double grad_h_G = 0.0;   ///< |grad_h Gamma|^2
  double dz_W = 0.0;       ///< lambda^beta |d_z W|^2
  double dz_G = 0.0;       ///< lambda^(gamma-2) |d_z Gamma|^2
};

/// Running sup of the L2 part and trapezoid-accumulated time integrals of the
/// six weighted dissipation terms; optionally the same bundle in H1.
struct DiffNorms {
  double time = 0.0;
  double sup_L2 = 0.0;
  DiffTerms integral;  ///< l2 member unused

  bool with_h1 = false;
  double sup_H1 = 0.0;
  DiffTerms integral_h1;

  long samples = 0;
  DiffTerms last;
  DiffTerms last_h1;

  double dissipation_total() const;
  /// sup_L2 + all six integrals.
  double total() const;
  /// sqrt(total()).
  double error() const;
  double total_h1() const;
};

/// Instantaneous weighted terms of (V, W, Gamma) = B - P; h1 multiplies every
/// mode by (1 + |k|^2).
DiffTerms diff_terms(const FlowState& b, const HydroState& p, const SolverParams& params,
                     bool h1 = false);

/// Throws GridMismatch when the states live on different grids.
DiffNorms diff_norms_update(DiffNorms acc, const FlowState& b, const HydroState& p,
                            const SolverParams& params, double dt);

// ---------------------------------------------------------------------------
// Anisotropic Ladyzhenskaya-type inequality probe

/// LHS / RHS* with
///   LHS  = int_M (int |phi| dz)(int |psi chi| dz) dx dy          (quadrature)
///   RHS* = |phi|^1/2 (|phi|^1/2 + |grad_h phi|^1/2)
///          |psi|^1/2 (|psi|^1/2 + |grad_h psi|^1/2) |chi|
/// Returns 0 when both vanish; throws DegenerateInput when only RHS* does.
double ladyzhenskaya_ratio(const SpectralField& phi, const SpectralField& psi,
                           const SpectralField& chi);

/// Real band-limited random field given as a mode list, so the same function
/// can be sampled on different grids.
struct RandomModeField {
  struct Term {
    int nx, ny, m;
    double amplitude, phase;
  };
  std::vector<Term> terms;

  SpectralField realize(const Grid& grid) const;
};

/// Draws modes with |nx|, |ny|, |m| <= band and amplitudes decaying like
/// 1 / (1 + |n|^2).
RandomModeField random_band_limited(std::mt19937_64& rng, int band);

struct LemmaProbe {
  std::vector<double> coarse_ratios;
  std::vector<double> fine_ratios;
  double coarse_max = 0.0;
  double fine_max = 0.0;
  /// |fine_max - coarse_max| / coarse_max
  double relative_change = 0.0;
};

LemmaProbe probe_ladyzhenskaya(std::uint64_t seed, int samples, int coarse_n, int fine_n,
                               int band = 3);

}  // namespace hydro
