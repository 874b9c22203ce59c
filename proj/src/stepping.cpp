#include "stepping.hpp"

#include <algorithm>
#include <sstream>

#include "hydro/errors.hpp"

namespace hydro::detail {
namespace {

constexpr double kBlowUpBound = 1e8;

std::vector<double> axis_decay(const std::vector<double>& k, double coeff, double t) {
  std::vector<double> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = std::exp(-coeff * k[i] * k[i] * t);
  return out;
}

}  // namespace

DecayFactor::DecayFactor(const Grid& grid, double vertical_coeff, double t)
    : x(axis_decay(grid.kx(), 1.0, t)),
      y(axis_decay(grid.ky(), 1.0, t)),
      z(axis_decay(grid.kz(), vertical_coeff, t)) {}

void DecayFactor::apply(SpectralField& f) const {
  auto c = f.coeffs();
  std::size_t n = 0;
  for (std::size_t ix = 0; ix < x.size(); ++ix)
    for (std::size_t iy = 0; iy < y.size(); ++iy) {
      const double fxy = x[ix] * y[iy];
      for (std::size_t iz = 0; iz < z.size(); ++iz, ++n) c[n] *= fxy * z[iz];
    }
}

PhysicalVelocity velocity_on_grid(const HorizontalVelocity& v, const SpectralField& w) {
  return {to_physical(v[0]), to_physical(v[1]), to_physical(w)};
}

SpectralField advect(const PhysicalVelocity& u, const SpectralField& q, bool dealias) {
  const PhysicalField qx = to_physical(ddx(q));
  const PhysicalField qy = to_physical(ddy(q));
  const PhysicalField qz = to_physical(ddz(q));
  PhysicalField prod(q.grid());
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    prod.values[i] = u.u1.values[i] * qx.values[i] + u.u2.values[i] * qy.values[i] +
                     u.w.values[i] * qz.values[i];
  }
  // Advection by a (v even, w odd) velocity preserves the parity of q.
  SpectralField out = to_spectral(prod, q.parity());
  if (dealias) dealias_in_place(out);
  return out;
}

void check_bounded(std::initializer_list<const SpectralField*> fields, double time) {
  for (const SpectralField* f : fields) {
    const double n = norm_L2(*f);
    if (!std::isfinite(n) || n > kBlowUpBound) {
      std::ostringstream msg;
      msg << "solution blew up at t = " << time << " (field norm " << n
          << "); reduce dt to satisfy the advective CFL bound";
      throw Error(ErrorCode::BlowUp, msg.str());
    }
  }
}

void check_cfl(const HorizontalVelocity& v, const SpectralField& w, double dt) {
  const PhysicalVelocity u = velocity_on_grid(v, w);
  double umax = 0.0;
  for (std::size_t i = 0; i < u.u1.values.size(); ++i) {
    const double s = std::hypot(u.u1.values[i], u.u2.values[i], u.w.values[i]);
    umax = std::max(umax, s);
  }
  const double bound = 0.5 * v[0].grid().min_spacing() / std::max(1.0, umax);
  if (dt > bound) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the advective bound 0.5 dx / max(1, |u|) = " << bound;
    throw Error(ErrorCode::CflViolation, msg.str());
  }
}

double divergence_residual(const HorizontalVelocity& v, const SpectralField& w) {
  SpectralField div = divergence_h(v[0], v[1]);
  div += ddz(w);
  return max_abs(div);
}

void clean(SpectralField& f, Parity parity, bool dealias) {
  f = project_parity(f, parity);
  enforce_real(f);
  if (dealias) dealias_in_place(f);
}

}  // namespace hydro::detail
