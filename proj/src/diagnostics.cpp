#include "hydro/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hydro/errors.hpp"
#include "hydro/spectral_ops.hpp"

namespace hydro {
namespace {

// One energy-carrying field: energy weight * |f|^2 / 2, dissipation rate
// weight * (|grad_h f|^2 + vertical * |d_z f|^2).
struct Component {
  const SpectralField* field;
  double weight;
  double vertical;
};

double log_mean(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double r = b / a;
  if (std::abs(r - 1.0) < 1e-6) {
    // (b - a) / ln(b/a) ~ a (1 + x/2 - x^2/12), x = r - 1
    const double x = r - 1.0;
    return a * (1.0 + x / 2.0 - x * x / 12.0);
  }
  return (b - a) / std::log(r);
}

EnergyBudget update_budget(EnergyBudget acc, const std::vector<Component>& parts,
                           double time, double dt) {
  const Grid& g = parts.front().field->grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  const auto& kz = g.kz();
  const std::size_t per = g.size();
  const double half_vol = 0.5 * Grid::volume();

  std::vector<double> modal(parts.size() * per);
  double e = 0.0;
  double dissipated = 0.0;
  const bool first = acc.samples == 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto coeffs = parts[c].field->coeffs();
    std::size_t n = 0;
    for (int ix = 0; ix < g.nx(); ++ix)
      for (int iy = 0; iy < g.ny(); ++iy) {
        const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
        for (int iz = 0; iz < g.nz(); ++iz, ++n) {
          const std::size_t slot = c * per + n;
          const double em = parts[c].weight * half_vol * std::norm(coeffs[n]);
          modal[slot] = em;
          e += em;
          if (first) continue;
          // d/dt of mode energy under diffusion alone is -2 k^2 e.
          const double rate = 2.0 * (kh2 + parts[c].vertical * kz[iz] * kz[iz]);
          const double prev = acc.modal_energy[slot];
          const double mean = acc.quadrature == Quadrature::Trapezoid
                                  ? 0.5 * (prev + em)
                                  : log_mean(prev, em);
          dissipated += rate * mean * dt;
        }
      }
  }

  if (first) acc.initial_energy = e;
  acc.energy = e;
  acc.dissipation += dissipated;
  acc.time = time;
  acc.residual = acc.energy + acc.dissipation - acc.initial_energy;
  acc.violation = std::max(0.0, acc.residual);
  acc.max_violation = std::max(acc.max_violation, acc.violation);
  acc.max_abs_residual = std::max(acc.max_abs_residual, std::abs(acc.residual));
  acc.modal_energy = std::move(modal);
  ++acc.samples;
  return acc;
}

std::vector<Component> components(const FlowState& s, const SolverParams& p) {
  const double nu = p.vertical_viscosity();
  return {{&s.v[0], 1.0, nu},
          {&s.v[1], 1.0, nu},
          {&s.w, p.lambda * p.lambda, nu},
          {&s.rho, 1.0, p.vertical_diffusivity()}};
}

std::vector<Component> components(const HydroState& s) {
  return {{&s.v[0], 1.0, 0.0}, {&s.v[1], 1.0, 0.0}, {&s.rho, 1.0, 0.0}};
}

double total_energy(const std::vector<Component>& parts) {
  double e = 0.0;
  for (const auto& c : parts) e += 0.5 * c.weight * norm_L2_squared(*c.field);
  return e;
}

double total_rate(const std::vector<Component>& parts) {
  double d = 0.0;
  for (const auto& c : parts) {
    d += c.weight * (grad_h_squared(*c.field) + c.vertical * dz_squared(*c.field));
  }
  return d;
}

// vol * sum_k weight(kh^2, kz^2) |c_k|^2
template <typename Weight>
double weighted_sum(const SpectralField& f, Weight weight) {
  const Grid& g = f.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  const auto& kz = g.kz();
  const auto c = f.coeffs();
  double sum = 0.0;
  std::size_t n = 0;
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      for (int iz = 0; iz < g.nz(); ++iz, ++n) {
        sum += weight(kh2, kz[iz] * kz[iz]) * std::norm(c[n]);
      }
    }
  return Grid::volume() * sum;
}

DiffTerms trapezoid(const DiffTerms& a, const DiffTerms& b, double dt) {
  const double h = 0.5 * dt;
  return {0.0,
          h * (a.grad_h_V + b.grad_h_V),
          h * (a.dz_V + b.dz_V),
          h * (a.grad_h_W + b.grad_h_W),
          h * (a.grad_h_G + b.grad_h_G),
          h * (a.dz_W + b.dz_W),
          h * (a.dz_G + b.dz_G)};
}

void accumulate(DiffTerms& acc, const DiffTerms& inc) {
  acc.grad_h_V += inc.grad_h_V;
  acc.dz_V += inc.dz_V;
  acc.grad_h_W += inc.grad_h_W;
  acc.grad_h_G += inc.grad_h_G;
  acc.dz_W += inc.dz_W;
  acc.dz_G += inc.dz_G;
}

double sum_integrals(const DiffTerms& t) {
  return t.grad_h_V + t.dz_V + t.grad_h_W + t.grad_h_G + t.dz_W + t.dz_G;
}

}  // namespace

double energy(const FlowState& state, const SolverParams& params) {
  return total_energy(components(state, params));
}

double energy(const HydroState& state) { return total_energy(components(state)); }

double dissipation_rate(const FlowState& state, const SolverParams& params) {
  return total_rate(components(state, params));
}

double dissipation_rate(const HydroState& state) { return total_rate(components(state)); }

EnergyBudget energy_budget_update(EnergyBudget acc, const FlowState& state,
                                  const SolverParams& params, double dt) {
  return update_budget(std::move(acc), components(state, params), state.time, dt);
}

EnergyBudget energy_budget_update(EnergyBudget acc, const HydroState& state,
                                  const SolverParams&, double dt) {
  return update_budget(std::move(acc), components(state), state.time, dt);
}

double DiffNorms::dissipation_total() const { return sum_integrals(integral); }

double DiffNorms::total() const { return sup_L2 + dissipation_total(); }

double DiffNorms::error() const { return std::sqrt(total()); }

double DiffNorms::total_h1() const { return sup_H1 + sum_integrals(integral_h1); }

DiffTerms diff_terms(const FlowState& b, const HydroState& p, const SolverParams& params,
                     bool h1) {
  if (!(b.grid() == p.grid())) {
    throw Error(ErrorCode::GridMismatch, "difference norms of states on different grids");
  }
  const SpectralField V1 = b.v[0] - p.v[0];
  const SpectralField V2 = b.v[1] - p.v[1];
  const SpectralField W = b.w - p.w;
  const SpectralField G = b.rho - p.rho;

  const double l2 = params.lambda * params.lambda;
  const double nu = std::pow(params.lambda, params.beta - 2.0);
  const double nu_w = std::pow(params.lambda, params.beta);
  const double kappa = std::pow(params.lambda, params.gamma - 2.0);

  auto s = [h1](double kh2, double kz2) { return h1 ? 1.0 + kh2 + kz2 : 1.0; };
  auto mass = [&](double kh2, double kz2) { return s(kh2, kz2); };
  auto horiz = [&](double kh2, double kz2) { return s(kh2, kz2) * kh2; };
  auto vert = [&](double kh2, double kz2) { return s(kh2, kz2) * kz2; };

  DiffTerms t;
  t.l2 = weighted_sum(V1, mass) + weighted_sum(V2, mass) + l2 * weighted_sum(W, mass) +
         weighted_sum(G, mass);
  t.grad_h_V = weighted_sum(V1, horiz) + weighted_sum(V2, horiz);
  t.dz_V = nu * (weighted_sum(V1, vert) + weighted_sum(V2, vert));
  t.grad_h_W = l2 * weighted_sum(W, horiz);
  t.grad_h_G = weighted_sum(G, horiz);
  t.dz_W = nu_w * weighted_sum(W, vert);
  t.dz_G = kappa * weighted_sum(G, vert);
  return t;
}

DiffNorms diff_norms_update(DiffNorms acc, const FlowState& b, const HydroState& p,
                            const SolverParams& params, double dt) {
  const DiffTerms now = diff_terms(b, p, params, false);
  acc.sup_L2 = std::max(acc.sup_L2, now.l2);
  if (acc.samples > 0) accumulate(acc.integral, trapezoid(acc.last, now, dt));
  acc.last = now;

  if (acc.with_h1) {
    const DiffTerms now_h1 = diff_terms(b, p, params, true);
    acc.sup_H1 = std::max(acc.sup_H1, now_h1.l2);
    if (acc.samples > 0) accumulate(acc.integral_h1, trapezoid(acc.last_h1, now_h1, dt));
    acc.last_h1 = now_h1;
  }
  acc.time = b.time;
  ++acc.samples;
  return acc;
}

double ladyzhenskaya_ratio(const SpectralField& phi, const SpectralField& psi,
                           const SpectralField& chi) {
  const Grid& g = phi.grid();
  if (!(psi.grid() == g) || !(chi.grid() == g)) {
    throw Error(ErrorCode::GridMismatch, "ladyzhenskaya_ratio: fields on different grids");
  }
  const PhysicalField a = to_physical(phi);
  const PhysicalField b = to_physical(psi);
  const PhysicalField c = to_physical(chi);
  const double dz = 2.0 / g.nz();
  const double dxdy = 1.0 / (static_cast<double>(g.nx()) * g.ny());

  double lhs = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      double col_a = 0.0;
      double col_bc = 0.0;
      for (int iz = 0; iz < g.nz(); ++iz) {
        const std::size_t n = g.index(ix, iy, iz);
        col_a += std::abs(a.values[n]);
        col_bc += std::abs(b.values[n] * c.values[n]);
      }
      lhs += (col_a * dz) * (col_bc * dz);
    }
  lhs *= dxdy;

  const double phi2 = norm_L2(phi);
  const double psi2 = norm_L2(psi);
  const double rhs = std::sqrt(phi2) * (std::sqrt(phi2) + std::pow(grad_h_squared(phi), 0.25)) *
                     std::sqrt(psi2) * (std::sqrt(psi2) + std::pow(grad_h_squared(psi), 0.25)) *
                     norm_L2(chi);
  if (rhs == 0.0) {
    if (lhs == 0.0) return 0.0;
    throw Error(ErrorCode::DegenerateInput, "ladyzhenskaya_ratio: right-hand side vanishes");
  }
  return lhs / rhs;
}

SpectralField RandomModeField::realize(const Grid& grid) const {
  SpectralField f(grid, Parity::None);
  for (const Term& t : terms) f.add_cosine(t.nx, t.ny, t.m, t.amplitude, t.phase);
  return f;
}

RandomModeField random_band_limited(std::mt19937_64& rng, int band) {
  // Explicit mapping to [0, 1) so the stream is identical across standard
  // library implementations.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  RandomModeField field;
  for (int nx = -band; nx <= band; ++nx)
    for (int ny = -band; ny <= band; ++ny)
      for (int m = 0; m <= band; ++m) {
        const double decay = 1.0 / (1.0 + nx * nx + ny * ny + m * m);
        const double amplitude = (2.0 * uniform() - 1.0) * decay;
        const double phase = 2.0 * std::numbers::pi * uniform();
        field.terms.push_back({nx, ny, m, amplitude, phase});
      }
  return field;
}

LemmaProbe probe_ladyzhenskaya(std::uint64_t seed, int samples, int coarse_n, int fine_n,
                               int band) {
  const Grid coarse = Grid::cube(coarse_n);
  const Grid fine = Grid::cube(fine_n);
  std::mt19937_64 rng(seed);
  LemmaProbe probe;
  for (int s = 0; s < samples; ++s) {
    const RandomModeField phi = random_band_limited(rng, band);
    const RandomModeField psi = random_band_limited(rng, band);
    const RandomModeField chi = random_band_limited(rng, band);
    probe.coarse_ratios.push_back(
        ladyzhenskaya_ratio(phi.realize(coarse), psi.realize(coarse), chi.realize(coarse)));
    probe.fine_ratios.push_back(
        ladyzhenskaya_ratio(phi.realize(fine), psi.realize(fine), chi.realize(fine)));
  }
  if (samples > 0) {
    probe.coarse_max = *std::max_element(probe.coarse_ratios.begin(), probe.coarse_ratios.end());
    probe.fine_max = *std::max_element(probe.fine_ratios.begin(), probe.fine_ratios.end());
    probe.relative_change = std::abs(probe.fine_max - probe.coarse_max) / probe.coarse_max;
  }
  return probe;
}

}  // namespace hydro
