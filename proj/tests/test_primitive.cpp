#include <doctest.h>

#include <cmath>
#include <random>

#include "hydro/errors.hpp"
#include "hydro/primitive.hpp"
#include "hydro/spectral_ops.hpp"
#include "oracles.hpp"

using namespace hydro;
using oracle::pi;

namespace {

SolverParams params_at(int n) {
  SolverParams p;
  p.grid = Grid::cube(n);
  p.lambda = 0.1;
  return p;
}

std::vector<Complex> project(const Grid& g, const std::vector<double>& values) {
  auto c = oracle::direct_dft(g, values);
  oracle::truncate_two_thirds(g, c);
  return c;
}

}  // namespace

TEST_CASE("explicit tendency matches the physical-space oracle at 8^3") {
  const Grid g = Grid::cube(8);
  std::mt19937_64 rng(17);
  const auto v1 = oracle::random_terms(rng, Parity::EvenInZ, 2, 5);
  const auto v2 = oracle::random_terms(rng, Parity::EvenInZ, 2, 5);
  const auto w = oracle::random_terms(rng, Parity::OddInZ, 2, 5);
  const auto rho = oracle::random_terms(rng, Parity::OddInZ, 2, 5);
  SolverParams p = params_at(8);
  p.f0 = -1.5;
  const HydroState s{{oracle::spectral(v1, g), oracle::spectral(v2, g)},
                     oracle::spectral(w, g), oracle::spectral(rho, g),
                     SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ), 0.0};
  const PrimitiveTendency t = rhs_explicit(s, p);

  const auto u1 = v1.sample(g), u2 = v2.sample(g), uw = w.sample(g);
  auto adv = [&](const oracle::TermField& q) {
    const auto qx = q.sample(g, 1, 0, 0), qy = q.sample(g, 0, 1, 0), qz = q.sample(g, 0, 0, 1);
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = u1[i] * qx[i] + u2[i] * qy[i] + uw[i] * qz[i];
    return out;
  };
  const auto a1 = adv(v1), a2 = adv(v2), ar = adv(rho);
  std::vector<double> e1(g.size()), e2(g.size()), er(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    e1[i] = -a1[i] + p.f0 * u2[i];
    e2[i] = -a2[i] - p.f0 * u1[i];
    er[i] = -ar[i] - uw[i];
  }
  CHECK(oracle::max_diff(t.v[0], project(g, e1)) < 1e-10);
  CHECK(oracle::max_diff(t.v[1], project(g, e2)) < 1e-10);
  CHECK(oracle::max_diff(t.rho, project(g, er)) < 1e-10);
}

TEST_CASE("diagnose_w") {
  const Grid g = Grid::cube(8);
  HorizontalVelocity v{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)};
  v[0].add_separable(1, 0, 1, 1.0, 0.0, false);
  const SpectralField w = diagnose_w(v);
  oracle::TermField expect{{{1, 0, 1, 2.0, -pi / 2, true}}, Parity::OddInZ};
  CHECK(oracle::max_diff(to_physical(w).values, expect.sample(g)) < 1e-12);
  CHECK(w.parity() == Parity::OddInZ);

  HorizontalVelocity rot{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)};
  rot[0].add_separable(0, 1, 2, 1.0, 0.0, false);
  CHECK(diagnose_w(rot).max_abs_coeff() < 1e-15);

  HorizontalVelocity bad{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)};
  bad[0].add_separable(1, 0, 0, 1.0, 0.0, false);
  try {
    (void)diagnose_w(bad);
    FAIL("expected BarotropicViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BarotropicViolation);
  }
}

TEST_CASE("hydrostatic pressure") {
  const Grid g = Grid::cube(16);
  HorizontalVelocity zero{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)};
  SpectralField rho(g, Parity::OddInZ);
  auto none = hydrostatic_pressure(rho, zero);
  CHECK(none.p.is_zero());
  CHECK(none.p_surface.is_zero());

  // rho = sin(pi z): int_{-1}^z = -(1 + cos(pi z)) / pi
  rho.add_separable(0, 0, 1, 1.0, 0.0, true);
  const auto hp = hydrostatic_pressure(rho, zero);
  oracle::TermField base{{{0, 0, 1, -1.0 / pi, 0.0, false}, {0, 0, 0, -1.0 / pi, 0.0, false}}, Parity::EvenInZ};
  CHECK(oracle::max_diff(to_physical(hp.p).values, base.sample(g)) < 1e-12);
  SpectralField dz = ddz(hp.p);
  dz -= rho;
  CHECK(dz.max_abs_coeff() < 1e-12);

  // single-mode forcing: Delta_h p_s reproduces div_h of the z-mean source
  std::mt19937_64 rng(5);
  const auto r = oracle::random_terms(rng, Parity::OddInZ, 3, 6);
  const auto f1 = oracle::random_terms(rng, Parity::EvenInZ, 3, 6);
  const auto f2 = oracle::random_terms(rng, Parity::EvenInZ, 3, 6);
  const HorizontalVelocity forcing{oracle::spectral(f1, g), oracle::spectral(f2, g)};
  const auto full = hydrostatic_pressure(oracle::spectral(r, g), forcing);
  SpectralField dzs = ddz(full.p_surface);
  CHECK(dzs.max_abs_coeff() < 1e-15);
  CHECK(std::abs(full.p_surface.at(0, 0, 0)) < 1e-15);
  // forcing - grad_h p has a barotropically admissible z-mean
  HorizontalVelocity rest{forcing[0] - ddx(full.p), forcing[1] - ddy(full.p)};
  CHECK(barotropic_residual(rest) < 1e-10);
  SpectralField dz2 = ddz(full.p);
  dz2 -= oracle::spectral(r, g);
  CHECK(dz2.max_abs_coeff() < 1e-12);
}

TEST_CASE("barotropic projection removes the divergent z-mean") {
  const Grid g = Grid::cube(16);
  std::mt19937_64 rng(9);
  HorizontalVelocity v{oracle::spectral(oracle::random_terms(rng, Parity::EvenInZ, 4, 10), g),
                       oracle::spectral(oracle::random_terms(rng, Parity::EvenInZ, 4, 10), g)};
  CHECK(barotropic_residual(v) > 1e-3);
  project_barotropic(v);
  CHECK(barotropic_residual(v) < 1e-12);
}

TEST_CASE("z-independent shear decays by exp(-kh^2 t)") {
  SolverParams p = params_at(16);
  p.dt = 0.01;
  const InitialData d = make_initial({{RecipeField::V1, 0, 1, 0, 1.0, -pi / 2, {}}}, p.grid);
  HydroState s = initial_hydro_state(d, p);
  const Complex c0 = s.v[0].mode(0, 1, 0);
  for (int i = 0; i < 4; ++i) s = step_primitive(s, p);
  CHECK(std::abs(s.v[0].mode(0, 1, 0) - c0 * std::exp(-4 * pi * pi * 4 * p.dt)) < 1e-14);
}

TEST_CASE("zero state stays zero") {
  SolverParams p = params_at(8);
  const Grid& g = p.grid;
  HydroState s{{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)},
               SpectralField(g, Parity::OddInZ), SpectralField(g, Parity::OddInZ),
               SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ), 0.0};
  const HydroState n = step_primitive(s, p);
  CHECK(n.v[0].is_zero());
  CHECK(n.rho.is_zero());
  CHECK(n.w.is_zero());
}

TEST_CASE("steps keep the barotropic and diagnostic constraints") {
  SolverParams p = params_at(16);
  p.f0 = 10.0;
  const InitialData d = default_benchmark_data(1.0, p.grid);
  HydroState s = initial_hydro_state(d, p);
  for (int i = 0; i < 20; ++i) {
    s = step_primitive(s, p);
    CHECK(barotropic_residual(s.v) < 1e-9);
    CHECK(divergence_residual(s) < 1e-10);
    CHECK(parity_violation_fraction(s.rho) < 1e-12);
  }
}

TEST_CASE("run_primitive: t_end = 0 and determinism") {
  SolverParams p = params_at(16);
  const InitialData d = default_benchmark_data(1.0, p.grid);
  CHECK(run_primitive(d, p).snapshots.size() == 1);
  p.t_end = 0.01;
  const auto a = run_primitive(d, p);
  const auto b = run_primitive(d, p);
  const auto& x = a.snapshots.back().v[1].coeffs();
  const auto& y = b.snapshots.back().v[1].coeffs();
  CHECK(std::equal(x.begin(), x.end(), y.begin()));
  CHECK(a.records.back().dzv_L4 > 0.0);
}
