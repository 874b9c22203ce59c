#include <doctest.h>

#include <cmath>
#include <random>

#include "hydro/boussinesq.hpp"
#include "hydro/diagnostics.hpp"
#include "hydro/errors.hpp"
#include "hydro/primitive.hpp"
#include "hydro/spectral_ops.hpp"
#include "oracles.hpp"

using namespace hydro;
using oracle::pi;

namespace {

FlowState zero_flow(const Grid& g) {
  return {{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)},
          SpectralField(g, Parity::OddInZ), SpectralField(g, Parity::OddInZ),
          SpectralField(g, Parity::EvenInZ), 0.0};
}

HydroState zero_hydro(const Grid& g) {
  return {{SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ)},
          SpectralField(g, Parity::OddInZ), SpectralField(g, Parity::OddInZ),
          SpectralField(g, Parity::EvenInZ), SpectralField(g, Parity::EvenInZ), 0.0};
}

FlowState random_flow(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FlowState s = zero_flow(g);
  s.v[0] = oracle::spectral(oracle::random_terms(rng, Parity::EvenInZ, 3, 6), g);
  s.v[1] = oracle::spectral(oracle::random_terms(rng, Parity::EvenInZ, 3, 6), g);
  s.w = oracle::spectral(oracle::random_terms(rng, Parity::OddInZ, 3, 6), g);
  s.rho = oracle::spectral(oracle::random_terms(rng, Parity::OddInZ, 3, 6), g);
  return s;
}

}  // namespace

TEST_CASE("zero state has zero energy and dissipation") {
  SolverParams p;
  p.grid = Grid::cube(8);
  const FlowState s = zero_flow(p.grid);
  CHECK(energy(s, p) == 0.0);
  CHECK(dissipation_rate(s, p) == 0.0);
  EnergyBudget b = energy_budget_update({}, s, p, p.dt);
  b = energy_budget_update(std::move(b), s, p, p.dt);
  CHECK(b.energy == 0.0);
  CHECK(b.dissipation == 0.0);
  CHECK(b.violation == 0.0);
}

TEST_CASE("energy and dissipation match their closed forms") {
  SolverParams p;
  p.grid = Grid::cube(16);
  p.lambda = 0.5;
  p.beta = 3.0;
  p.gamma = 5.0;
  FlowState s = zero_flow(p.grid);
  s.v[0].add_separable(1, 0, 1, 1.0, 0.0, false);  // |.|^2 = 1/2
  s.w.add_separable(1, 0, 1, 2.0, 0.0, true);      // |.|^2 = 2
  s.rho.add_separable(0, 1, 2, 1.0, 0.0, true);    // |.|^2 = 1/2
  const double l = p.lambda;
  CHECK(energy(s, p) == doctest::Approx(0.5 * (0.5 + l * l * 2.0 + 0.5)));
  const double kh1 = 4 * pi * pi, kz1 = pi * pi, kz2 = 4 * pi * pi;
  const double d = kh1 * 0.5 + std::pow(l, p.beta - 2) * kz1 * 0.5 + l * l * kh1 * 2.0 +
                   std::pow(l, p.beta) * kz1 * 2.0 + kh1 * 0.5 + std::pow(l, p.gamma - 2) * kz2 * 0.5;
  CHECK(dissipation_rate(s, p) == doctest::Approx(d));

  HydroState h = zero_hydro(p.grid);
  h.v[0] = s.v[0];
  h.rho = s.rho;
  CHECK(energy(h) == doctest::Approx(0.5));
  CHECK(dissipation_rate(h) == doctest::Approx(kh1 * 0.5 + kh1 * 0.5));
}

TEST_CASE("diffusion-only mode: E + D = E(0)") {
  SolverParams p;
  p.grid = Grid::cube(16);
  p.lambda = 0.3;
  p.t_end = 0.1;
  const InitialData d = make_initial({{RecipeField::V1, 0, 1, 1, 1.0, -pi / 2, {}}}, p.grid);
  for (Quadrature q : {Quadrature::ExponentialMean, Quadrature::Trapezoid}) {
    RunOptions o;
    o.quadrature = q;
    const auto traj = run_boussinesq(d, p, o);
    if (q == Quadrature::ExponentialMean) {
      CHECK(traj.budget.max_abs_residual < 1e-13);
      CHECK(traj.budget.max_violation < 1e-14);
    } else {
      // The plain rule over-counts the dissipation of a decaying exponential.
      CHECK(traj.budget.residual > 0.0);
      CHECK(traj.budget.max_abs_residual < 1e-3);
    }
  }
  const auto prim = run_primitive(d, p);
  CHECK(prim.budget.max_abs_residual < 1e-13);
}

TEST_CASE("difference norms of a state against itself vanish") {
  SolverParams p;
  p.grid = Grid::cube(8);
  const FlowState b = random_flow(p.grid, 1);
  HydroState h = zero_hydro(p.grid);
  h.v = b.v;
  h.w = b.w;
  h.rho = b.rho;
  DiffNorms n;
  n.with_h1 = true;
  n = diff_norms_update(n, b, h, p, p.dt);
  n = diff_norms_update(n, b, h, p, p.dt);
  CHECK(n.total() == 0.0);
  CHECK(n.total_h1() == 0.0);
  CHECK(n.error() == 0.0);
}

TEST_CASE("single-mode perturbation gives sup_L2 = delta^2 / 2") {
  SolverParams p;
  p.grid = Grid::cube(8);
  const double delta = 0.01;
  FlowState b = zero_flow(p.grid);
  b.v[0].add_separable(1, 0, 1, delta, 0.0, false);
  const DiffNorms n = diff_norms_update({}, b, zero_hydro(p.grid), p, p.dt);
  CHECK(n.sup_L2 == doctest::Approx(delta * delta / 2).epsilon(1e-13));
}

TEST_CASE("trapezoid accumulation and monotone sup") {
  SolverParams p;
  p.grid = Grid::cube(8);
  FlowState b = zero_flow(p.grid);
  const HydroState h = zero_hydro(p.grid);
  b.v[0].add_separable(1, 0, 0, 1.0, 0.0, false);
  DiffNorms n = diff_norms_update({}, b, h, p, 0.1);
  const double g0 = n.last.grad_h_V;
  b.v[0] *= 0.5;
  n = diff_norms_update(n, b, h, p, 0.1);
  CHECK(n.integral.grad_h_V == doctest::Approx(0.1 * (g0 + 0.25 * g0) / 2));
  CHECK(n.sup_L2 == doctest::Approx(1.0));
  FlowState other = b;
  other.rho = SpectralField(Grid::cube(10), Parity::OddInZ);
  other.v = {SpectralField(Grid::cube(10)), SpectralField(Grid::cube(10))};
  other.w = SpectralField(Grid::cube(10));
  CHECK_THROWS_AS(diff_norms_update(n, other, h, p, 0.1), Error);
}

TEST_CASE("weighted entries scale with their lambda prefactors") {
  SolverParams p;
  p.grid = Grid::cube(16);
  p.lambda = 0.2;
  p.beta = 3.5;
  p.gamma = 4.5;
  const FlowState b = random_flow(p.grid, 3);
  const HydroState h = zero_hydro(p.grid);
  SolverParams q = p;
  q.lambda = p.lambda / 2;
  const DiffTerms a = diff_terms(b, h, p);
  const DiffTerms c = diff_terms(b, h, q);
  CHECK(c.grad_h_V == a.grad_h_V);
  CHECK(c.grad_h_G == a.grad_h_G);
  CHECK(c.grad_h_W == doctest::Approx(a.grad_h_W / 4).epsilon(1e-14));
  CHECK(c.dz_V == doctest::Approx(a.dz_V * std::pow(2.0, -(p.beta - 2))).epsilon(1e-14));
  CHECK(c.dz_W == doctest::Approx(a.dz_W * std::pow(2.0, -p.beta)).epsilon(1e-14));
  CHECK(c.dz_G == doctest::Approx(a.dz_G * std::pow(2.0, -(p.gamma - 2))).epsilon(1e-14));
}

TEST_CASE("Ladyzhenskaya ratio of constants is sqrt(2)") {
  const Grid g = Grid::cube(8);
  SpectralField one(g);
  one.mode(0, 0, 0) = 1.0;
  CHECK(ladyzhenskaya_ratio(one, one, one) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const SpectralField zero(g);
  CHECK(ladyzhenskaya_ratio(zero, one, one) == 0.0);
  CHECK(ladyzhenskaya_ratio(one, one, zero) == 0.0);
}

TEST_CASE("Ladyzhenskaya ratio against a quadrature oracle") {
  const Grid g = Grid::cube(16);
  std::mt19937_64 rng(12);
  const auto a = oracle::random_terms(rng, Parity::None, 3, 4);
  const auto b = oracle::random_terms(rng, Parity::None, 3, 4);
  const auto c = oracle::random_terms(rng, Parity::None, 3, 4);
  const auto pa = a.sample(g), pb = b.sample(g), pc = c.sample(g);
  const auto ax = a.sample(g, 1, 0, 0), ay = a.sample(g, 0, 1, 0);
  const auto bx = b.sample(g, 1, 0, 0), by = b.sample(g, 0, 1, 0);
  double lhs = 0.0, na = 0.0, nb = 0.0, nc = 0.0, ga = 0.0, gb = 0.0;
  const double cell = 2.0 / g.size();
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j) {
      double ia = 0.0, ibc = 0.0;
      for (int k = 0; k < g.nz(); ++k) {
        const auto n = g.index(i, j, k);
        ia += std::abs(pa[n]) * 2.0 / g.nz();
        ibc += std::abs(pb[n] * pc[n]) * 2.0 / g.nz();
        na += pa[n] * pa[n] * cell;
        nb += pb[n] * pb[n] * cell;
        nc += pc[n] * pc[n] * cell;
        ga += (ax[n] * ax[n] + ay[n] * ay[n]) * cell;
        gb += (bx[n] * bx[n] + by[n] * by[n]) * cell;
      }
      lhs += ia * ibc / (g.nx() * g.ny());
    }
  const double rhs = std::pow(na, 0.25) * (std::pow(na, 0.25) + std::pow(ga, 0.25)) *
                     std::pow(nb, 0.25) * (std::pow(nb, 0.25) + std::pow(gb, 0.25)) * std::sqrt(nc);
  CHECK(ladyzhenskaya_ratio(oracle::spectral(a, g), oracle::spectral(b, g), oracle::spectral(c, g)) ==
        doctest::Approx(lhs / rhs).epsilon(1e-10));
}

TEST_CASE("random band-limited fields are seeded and grid independent") {
  std::mt19937_64 r1(42), r2(42);
  const RandomModeField a = random_band_limited(r1, 3);
  const RandomModeField b = random_band_limited(r2, 3);
  REQUIRE(a.terms.size() == b.terms.size());
  const SpectralField c = a.realize(Grid::cube(16));
  const SpectralField f = a.realize(Grid::cube(32));
  CHECK(norm_L2(c) == doctest::Approx(norm_L2(f)).epsilon(1e-12));
  CHECK(c.hermitian_defect() < 1e-14);
  const LemmaProbe p1 = probe_ladyzhenskaya(7, 5, 16, 32);
  const LemmaProbe p2 = probe_ladyzhenskaya(7, 5, 16, 32);
  CHECK(p1.coarse_max == p2.coarse_max);
  CHECK(p1.fine_max == p2.fine_max);
  CHECK(p1.coarse_ratios.size() == 5);
}
