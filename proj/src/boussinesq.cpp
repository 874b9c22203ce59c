#include "hydro/boussinesq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hydro/errors.hpp"
#include "hydro/spectral_ops.hpp"
#include "stepping.hpp"

namespace hydro {
namespace {

constexpr double kMeanTolerance = 1e-12;

SpectralField negated(SpectralField f) { return f *= -1.0; }

// E_half (u + h n)
SpectralField predictor(const SpectralField& u, const SpectralField& n, double h,
                        const detail::DecayFactor& half) {
  SpectralField out = u;
  out.axpy(h, n);
  half.apply(out);
  return out;
}

// E_full u + dt E_half n
SpectralField corrector(const SpectralField& u, const SpectralField& n, double dt,
                        const detail::DecayFactor& full,
                        const detail::DecayFactor& half) {
  SpectralField a = u;
  full.apply(a);
  SpectralField b = n;
  half.apply(b);
  a.axpy(dt, b);
  a.set_parity(u.parity());
  return a;
}

// Per-mode inverse of -(kh^2 + kz^2 / lambda^2); zero where the symbol vanishes.
template <typename Fn>
void for_each_symbol(const Grid& g, double lambda, Fn fn) {
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  const auto& kz = g.kz();
  const double inv_l2 = 1.0 / (lambda * lambda);
  std::size_t n = 0;
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      for (int iz = 0; iz < g.nz(); ++iz, ++n) fn(n, -(kh2 + kz[iz] * kz[iz] * inv_l2));
    }
}

}  // namespace

BoussinesqTendency rhs_explicit(const FlowState& state, const SolverParams& params) {
  const detail::PhysicalVelocity u = detail::velocity_on_grid(state.v, state.w);
  const bool da = params.dealias;
  BoussinesqTendency t{{negated(detail::advect(u, state.v[0], da)),
                        negated(detail::advect(u, state.v[1], da))},
                       negated(detail::advect(u, state.w, da)),
                       negated(detail::advect(u, state.rho, da))};
  // -f0 k x v = f0 (v2, -v1)
  t.v[0].axpy(params.f0, state.v[1]);
  t.v[1].axpy(-params.f0, state.v[0]);
  t.w.axpy(1.0 / (params.lambda * params.lambda), state.rho);
  t.rho.axpy(-1.0, state.w);
  return t;
}

SpectralField pressure_solve_anisotropic(const SpectralField& source, double lambda) {
  const double mean = std::abs(source.at(0, 0, 0));
  if (mean > kMeanTolerance) {
    throw Error(ErrorCode::ZeroMeanViolation,
                "pressure source has nonzero mean " + std::to_string(mean));
  }
  SpectralField p(source.grid(), source.parity());
  auto in = source.coeffs();
  auto out = p.coeffs();
  for_each_symbol(source.grid(), lambda, [&](std::size_t n, double symbol) {
    out[n] = symbol == 0.0 ? Complex{} : in[n] / symbol;
  });
  return p;
}

SpectralField pressure_solve_anisotropic(const SpectralField& source,
                                         const SolverParams& params) {
  return pressure_solve_anisotropic(source, params.lambda);
}

SpectralField anisotropic_laplacian(const SpectralField& f, double lambda) {
  SpectralField out(f.grid(), f.parity());
  auto in = f.coeffs();
  auto res = out.coeffs();
  for_each_symbol(f.grid(), lambda,
                  [&](std::size_t n, double symbol) { res[n] = symbol * in[n]; });
  return out;
}

SpectralField project_tendency(BoussinesqTendency& t, double lambda) {
  SpectralField source = divergence_h(t.v[0], t.v[1]);
  source += ddz(t.w);
  SpectralField p = pressure_solve_anisotropic(source, lambda);
  t.v[0] -= ddx(p);
  t.v[1] -= ddy(p);
  t.w.axpy(-1.0 / (lambda * lambda), ddz(p));
  t.w.set_parity(Parity::OddInZ);
  return p;
}

void project_divergence_free(HorizontalVelocity& v, SpectralField& w, double lambda) {
  SpectralField source = divergence_h(v[0], v[1]);
  source += ddz(w);
  source.at(0, 0, 0) = Complex{};
  const SpectralField phi = pressure_solve_anisotropic(source, lambda);
  v[0] -= ddx(phi);
  v[1] -= ddy(phi);
  const Parity wp = w.parity();
  w.axpy(-1.0 / (lambda * lambda), ddz(phi));
  w.set_parity(wp);
}

FlowState initial_flow_state(const InitialData& initial, const SolverParams& params) {
  if (!(initial.grid() == params.grid)) {
    throw Error(ErrorCode::GridMismatch, "initial data grid differs from solver grid");
  }
  FlowState s{initial.v0, initial.w0, initial.rho0, SpectralField(params.grid, Parity::EvenInZ),
              0.0};
  BoussinesqTendency t = rhs_explicit(s, params);
  s.p = project_tendency(t, params.lambda);
  return s;
}

FlowState step_boussinesq(const FlowState& state, const SolverParams& params) {
  const Grid& g = state.grid();
  const double dt = params.dt;
  const double nu_z = params.vertical_viscosity();
  const double kappa_z = params.vertical_diffusivity();
  const detail::DecayFactor v_half(g, nu_z, 0.5 * dt), v_full(g, nu_z, dt);
  const detail::DecayFactor r_half(g, kappa_z, 0.5 * dt), r_full(g, kappa_z, dt);

  BoussinesqTendency n0 = rhs_explicit(state, params);
  project_tendency(n0, params.lambda);

  FlowState mid{{predictor(state.v[0], n0.v[0], 0.5 * dt, v_half),
                 predictor(state.v[1], n0.v[1], 0.5 * dt, v_half)},
                predictor(state.w, n0.w, 0.5 * dt, v_half),
                predictor(state.rho, n0.rho, 0.5 * dt, r_half),
                state.p,
                state.time + 0.5 * dt};

  BoussinesqTendency n1 = rhs_explicit(mid, params);
  SpectralField p = project_tendency(n1, params.lambda);

  FlowState next{{corrector(state.v[0], n1.v[0], dt, v_full, v_half),
                  corrector(state.v[1], n1.v[1], dt, v_full, v_half)},
                 corrector(state.w, n1.w, dt, v_full, v_half),
                 corrector(state.rho, n1.rho, dt, r_full, r_half),
                 std::move(p),
                 state.time + dt};

  project_divergence_free(next.v, next.w, params.lambda);
  detail::clean(next.v[0], Parity::EvenInZ, params.dealias);
  detail::clean(next.v[1], Parity::EvenInZ, params.dealias);
  detail::clean(next.w, Parity::OddInZ, params.dealias);
  detail::clean(next.rho, Parity::OddInZ, params.dealias);
  detail::clean(next.p, Parity::EvenInZ, false);
  next.p.at(0, 0, 0) = Complex{};

  detail::check_bounded({&next.v[0], &next.v[1], &next.w, &next.rho}, next.time);
  return next;
}

double divergence_residual(const FlowState& state) {
  return detail::divergence_residual(state.v, state.w);
}

BoussinesqTrajectory run_boussinesq(const InitialData& initial, const SolverParams& params,
                                    const RunOptions& options) {
  params.validate();
  FlowState state = initial_flow_state(initial, params);
  if (options.check_cfl) detail::check_cfl(state.v, state.w, params.dt);

  BoussinesqTrajectory traj;
  traj.budget.quadrature = options.quadrature;
  auto record = [&](long step) {
    traj.budget = energy_budget_update(std::move(traj.budget), state, params, params.dt);
    StepRecord r;
    r.step = step;
    r.time = state.time;
    r.energy = traj.budget.energy;
    r.dissipation = traj.budget.dissipation;
    r.violation = traj.budget.violation;
    r.residual = traj.budget.residual;
    r.dzv_L4 = norm_L4(ddz(state.v[0]), ddz(state.v[1]));
    r.divergence = divergence_residual(state);
    r.parity_fraction = std::max({parity_violation_fraction(state.v[0]),
                                  parity_violation_fraction(state.v[1]),
                                  parity_violation_fraction(state.w),
                                  parity_violation_fraction(state.rho)});
    traj.records.push_back(r);
  };

  const long steps = params.steps();
  record(0);
  traj.snapshots.push_back(state);
  traj.snapshot_steps.push_back(0);
  for (long n = 1; n <= steps; ++n) {
    state = step_boussinesq(state, params);
    record(n);
    const bool cadence = options.snapshot_every > 0 && n % options.snapshot_every == 0;
    if (cadence || n == steps) {
      traj.snapshots.push_back(state);
      traj.snapshot_steps.push_back(n);
    }
  }
  return traj;
}

}  // namespace hydro
