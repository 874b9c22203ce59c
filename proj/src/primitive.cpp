#include "hydro/primitive.hpp"

#include <algorithm>
#include <cmath>

#include "hydro/errors.hpp"
#include "hydro/spectral_ops.hpp"
#include "stepping.hpp"

namespace hydro {
namespace {

constexpr double kBarotropicTolerance = 1e-10;

SpectralField negated(SpectralField f) { return f *= -1.0; }

SpectralField predictor(const SpectralField& u, const SpectralField& n, double h,
                        const detail::DecayFactor& half) {
  SpectralField out = u;
  out.axpy(h, n);
  half.apply(out);
  out.set_parity(u.parity());
  return out;
}

SpectralField corrector(const SpectralField& u, const SpectralField& n, double dt,
                        const detail::DecayFactor& full, const detail::DecayFactor& half) {
  SpectralField a = u;
  full.apply(a);
  SpectralField b = n;
  half.apply(b);
  a.axpy(dt, b);
  a.set_parity(u.parity());
  return a;
}

// Full tendency including -grad_h p; returns the pressure used.
HydrostaticPressure full_tendency(const HydroState& s, const SolverParams& params,
                                  PrimitiveTendency& t) {
  t = rhs_explicit(s, params);
  HydrostaticPressure hp = hydrostatic_pressure(s.rho, t.v);
  t.v[0] -= ddx(hp.p);
  t.v[1] -= ddy(hp.p);
  return hp;
}

}  // namespace

PrimitiveTendency rhs_explicit(const HydroState& state, const SolverParams& params) {
  const detail::PhysicalVelocity u = detail::velocity_on_grid(state.v, state.w);
  const bool da = params.dealias;
  PrimitiveTendency t{{negated(detail::advect(u, state.v[0], da)),
                       negated(detail::advect(u, state.v[1], da))},
                      negated(detail::advect(u, state.rho, da))};
  t.v[0].axpy(params.f0, state.v[1]);
  t.v[1].axpy(-params.f0, state.v[0]);
  t.rho.axpy(-1.0, state.w);
  return t;
}

SpectralField diagnose_w(const HorizontalVelocity& v) {
  SpectralField div = divergence_h(v[0], v[1]);
  div *= -1.0;
  try {
    return vertical_integral_from_bottom(div, kBarotropicTolerance);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonZeroVerticalMean) throw;
    throw Error(ErrorCode::BarotropicViolation,
                std::string("barotropic constraint violated: ") + e.what());
  }
}

HydrostaticPressure hydrostatic_pressure(const SpectralField& rho,
                                         const HorizontalVelocity& forcing) {
  const Grid& g = rho.grid();
  // rho is odd, so its z-mean vanishes and the antiderivative is periodic.
  SpectralField baroclinic =
      vertical_integral_from_bottom(project_parity(rho, Parity::OddInZ));

  const SpectralField f1 = forcing[0] - ddx(baroclinic);
  const SpectralField f2 = forcing[1] - ddy(baroclinic);
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  SpectralField surface(g, Parity::EvenInZ);
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      if (kh2 == 0.0) continue;
      // div_h of the z-mean, divided by the symbol -kh^2 of Delta_h.
      const Complex div = Complex(0.0, kx[ix]) * f1.at(ix, iy, 0) +
                          Complex(0.0, ky[iy]) * f2.at(ix, iy, 0);
      surface.at(ix, iy, 0) = div / -kh2;
    }

  HydrostaticPressure out{std::move(baroclinic), std::move(surface)};
  out.p += out.p_surface;
  out.p.set_parity(Parity::EvenInZ);
  return out;
}

double barotropic_residual(const HorizontalVelocity& v) {
  const SpectralField div = divergence_h(v[0], v[1]);
  const Grid& g = div.grid();
  double worst = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) worst = std::max(worst, std::abs(div.at(ix, iy, 0)));
  return worst;
}

void project_barotropic(HorizontalVelocity& v) {
  const Grid& g = v[0].grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      if (kh2 == 0.0) continue;
      Complex& a = v[0].at(ix, iy, 0);
      Complex& b = v[1].at(ix, iy, 0);
      const Complex along = (kx[ix] * a + ky[iy] * b) / kh2;
      a -= kx[ix] * along;
      b -= ky[iy] * along;
    }
}

HydroState initial_hydro_state(const InitialData& initial, const SolverParams& params) {
  if (!(initial.grid() == params.grid)) {
    throw Error(ErrorCode::GridMismatch, "initial data grid differs from solver grid");
  }
  HydroState s{initial.v0, diagnose_w(initial.v0), initial.rho0,
               SpectralField(params.grid, Parity::EvenInZ),
               SpectralField(params.grid, Parity::EvenInZ), 0.0};
  PrimitiveTendency t;
  HydrostaticPressure hp = full_tendency(s, params, t);
  s.p = std::move(hp.p);
  s.p_surface = std::move(hp.p_surface);
  return s;
}

HydroState step_primitive(const HydroState& state, const SolverParams& params) {
  const Grid& g = state.grid();
  const double dt = params.dt;
  const detail::DecayFactor half(g, 0.0, 0.5 * dt), full(g, 0.0, dt);

  PrimitiveTendency n0;
  full_tendency(state, params, n0);

  HydroState mid;
  mid.v = {predictor(state.v[0], n0.v[0], 0.5 * dt, half),
           predictor(state.v[1], n0.v[1], 0.5 * dt, half)};
  mid.rho = predictor(state.rho, n0.rho, 0.5 * dt, half);
  mid.w = diagnose_w(mid.v);
  mid.time = state.time + 0.5 * dt;

  PrimitiveTendency n1;
  HydrostaticPressure hp = full_tendency(mid, params, n1);

  HydroState next;
  next.v = {corrector(state.v[0], n1.v[0], dt, full, half),
            corrector(state.v[1], n1.v[1], dt, full, half)};
  next.rho = corrector(state.rho, n1.rho, dt, full, half);
  project_barotropic(next.v);
  detail::clean(next.v[0], Parity::EvenInZ, params.dealias);
  detail::clean(next.v[1], Parity::EvenInZ, params.dealias);
  detail::clean(next.rho, Parity::OddInZ, params.dealias);
  next.w = diagnose_w(next.v);
  detail::clean(next.w, Parity::OddInZ, params.dealias);
  next.p = std::move(hp.p);
  next.p_surface = std::move(hp.p_surface);
  next.time = state.time + dt;

  detail::check_bounded({&next.v[0], &next.v[1], &next.rho}, next.time);
  return next;
}

double divergence_residual(const HydroState& state) {
  return detail::divergence_residual(state.v, state.w);
}

PrimitiveTrajectory run_primitive(const InitialData& initial, const SolverParams& params,
                                  const RunOptions& options) {
  params.validate();
  HydroState state = initial_hydro_state(initial, params);
  if (options.check_cfl) detail::check_cfl(state.v, state.w, params.dt);

  PrimitiveTrajectory traj;
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
    r.barotropic = barotropic_residual(state.v);
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
    state = step_primitive(state, params);
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
