#include "hydro/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hydro/errors.hpp"
#include "hydro/fft.hpp"

namespace hydro {
namespace {

constexpr Complex kI{0.0, 1.0};

// Applies out(ix,iy,iz) = mult(ix,iy,iz) * in(ix,iy,iz).
template <typename Multiplier>
SpectralField apply_multiplier(const SpectralField& f, Parity parity,
                               Multiplier mult) {
  const Grid& g = f.grid();
  SpectralField out(g, parity);
  auto in = f.coeffs();
  auto res = out.coeffs();
  std::size_t n = 0;
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int iz = 0; iz < g.nz(); ++iz, ++n) res[n] = mult(ix, iy, iz) * in[n];
  return out;
}

bool keep_mode(int mode, int n) { return 3 * std::abs(mode) <= n; }

}  // namespace

PhysicalField to_physical(const SpectralField& f) {
  const Grid& g = f.grid();
  std::vector<Complex> buf(f.coeffs().begin(), f.coeffs().end());
  fft::backward(g, buf);
  PhysicalField out(g);
  for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
  return out;
}

SpectralField to_spectral(const PhysicalField& f, Parity parity) {
  const Grid& g = f.grid;
  std::vector<Complex> buf(f.values.begin(), f.values.end());
  fft::forward(g, buf);
  SpectralField out(g, parity);
  const double scale = 1.0 / static_cast<double>(g.size());
  auto c = out.coeffs();
  for (std::size_t i = 0; i < buf.size(); ++i) c[i] = buf[i] * scale;
  return out;
}

SpectralField transform_roundtrip(const SpectralField& f) {
  return to_spectral(to_physical(f), f.parity());
}

SpectralField ddx(const SpectralField& f) {
  const auto& k = f.grid().kx();
  return apply_multiplier(f, f.parity(),
                          [&](int ix, int, int) { return kI * k[ix]; });
}

SpectralField ddy(const SpectralField& f) {
  const auto& k = f.grid().ky();
  return apply_multiplier(f, f.parity(),
                          [&](int, int iy, int) { return kI * k[iy]; });
}

SpectralField ddz(const SpectralField& f) {
  const auto& k = f.grid().kz();
  return apply_multiplier(f, flip(f.parity()),
                          [&](int, int, int iz) { return kI * k[iz]; });
}

SpectralField laplacian_h(const SpectralField& f) {
  const auto& kx = f.grid().kx();
  const auto& ky = f.grid().ky();
  return apply_multiplier(f, f.parity(), [&](int ix, int iy, int) {
    return Complex(-(kx[ix] * kx[ix] + ky[iy] * ky[iy]), 0.0);
  });
}

SpectralField divergence_h(const SpectralField& f1, const SpectralField& f2) {
  return ddx(f1) += ddy(f2);
}

SpectralField project_parity(const SpectralField& f, Parity parity) {
  if (parity == Parity::None) {
    throw Error(ErrorCode::InvalidArgument, "project_parity needs a parity class");
  }
  const Grid& g = f.grid();
  const double sign = parity == Parity::EvenInZ ? 1.0 : -1.0;
  SpectralField out(g, parity);
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int iz = 0; iz < g.nz(); ++iz) {
        out.at(ix, iy, iz) =
            0.5 * (f.at(ix, iy, iz) + sign * f.at(ix, iy, g.mirror_z(iz)));
      }
  return out;
}

void enforce_real(SpectralField& f) {
  const Grid& g = f.grid();
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int iz = 0; iz < g.nz(); ++iz) {
        Complex& a = f.at(ix, iy, iz);
        Complex& b = f.at(g.mirror_x(ix), g.mirror_y(iy), g.mirror_z(iz));
        if (&a == &b) {
          a = Complex(a.real(), 0.0);
        } else if (&a < &b) {
          const Complex avg = 0.5 * (a + std::conj(b));
          a = avg;
          b = std::conj(avg);
        }
      }
}

double parity_violation_fraction(const SpectralField& f) {
  if (f.parity() == Parity::None) return 0.0;
  const double total = norm_L2_squared(f);
  if (total == 0.0) return 0.0;
  const double wrong = norm_L2_squared(project_parity(f, flip(f.parity())));
  return wrong / total;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

void dealias_in_place(SpectralField& f) {
  const Grid& g = f.grid();
  const auto& mx = g.modes_x();
  const auto& my = g.modes_y();
  const auto& mz = g.modes_z();
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int iz = 0; iz < g.nz(); ++iz) {
        if (!keep_mode(mx[ix], g.nx()) || !keep_mode(my[iy], g.ny()) ||
            !keep_mode(mz[iz], g.nz())) {
          f.at(ix, iy, iz) = Complex{};
        }
      }
}

bool is_dealiased(const SpectralField& f) {
  const SpectralField truncated = dealias(f);
  return std::equal(f.coeffs().begin(), f.coeffs().end(),
                    truncated.coeffs().begin());
}

PhysicalField multiply(const PhysicalField& a, const PhysicalField& b) {
  if (!(a.grid == b.grid)) {
    throw Error(ErrorCode::GridMismatch, "product of fields on different grids");
  }
  PhysicalField out(a.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = a.values[i] * b.values[i];
  }
  return out;
}

SpectralField vertical_integral_from_bottom(const SpectralField& f,
                                            double tolerance) {
  const Grid& g = f.grid();
  const auto& kz = g.kz();
  SpectralField out(g, flip(f.parity()));
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const Complex mean = f.at(ix, iy, 0);
      if (std::abs(mean) > tolerance) {
        throw Error(ErrorCode::NonZeroVerticalMean,
                    "vertical integral: horizontal mode (" +
                        std::to_string(g.modes_x()[ix]) + ", " +
                        std::to_string(g.modes_y()[iy]) +
                        ") has nonzero z-mean " + std::to_string(std::abs(mean)));
      }
      // Antiderivative c_m e^{i pi m z} / (i pi m), shifted so F(-1) = 0;
      // e^{-i pi m} = (-1)^m.
      Complex at_bottom{};
      for (int iz = 1; iz < g.nz(); ++iz) {
        if (kz[iz] == 0.0) continue;
        const Complex anti = f.at(ix, iy, iz) / (kI * kz[iz]);
        out.at(ix, iy, iz) = anti;
        at_bottom += (g.modes_z()[iz] % 2 == 0) ? anti : -anti;
      }
      out.at(ix, iy, 0) = -at_bottom;
    }
  return out;
}

SpectralField vertical_mean(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g, Parity::EvenInZ);
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) out.at(ix, iy, 0) = f.at(ix, iy, 0);
  return out;
}

double norm_L2_squared(const SpectralField& f) {
  double sum = 0.0;
  for (const auto& c : f.coeffs()) sum += std::norm(c);
  return Grid::volume() * sum;
}

double norm_L2(const SpectralField& f) { return std::sqrt(norm_L2_squared(f)); }

double inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) {
    throw Error(ErrorCode::GridMismatch, "inner product on different grids");
  }
  double sum = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] * std::conj(b[i])).real();
  return Grid::volume() * sum;
}

double norm_L4(const SpectralField& f) {
  const PhysicalField p = to_physical(f);
  double sum = 0.0;
  for (double v : p.values) sum += v * v * v * v;
  return std::pow(Grid::volume() * sum / static_cast<double>(p.values.size()), 0.25);
}

double norm_L4(const SpectralField& f1, const SpectralField& f2) {
  const PhysicalField a = to_physical(f1);
  const PhysicalField b = to_physical(f2);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double m2 = a.values[i] * a.values[i] + b.values[i] * b.values[i];
    sum += m2 * m2;
  }
  return std::pow(Grid::volume() * sum / static_cast<double>(a.values.size()), 0.25);
}

double grad_h_squared(const SpectralField& f) {
  const Grid& g = f.grid();
  const auto& kx = g.kx();
  const auto& ky = g.ky();
  double sum = 0.0;
  std::size_t n = 0;
  auto c = f.coeffs();
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) {
      const double kh2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
      for (int iz = 0; iz < g.nz(); ++iz, ++n) sum += kh2 * std::norm(c[n]);
    }
  return Grid::volume() * sum;
}

double dz_squared(const SpectralField& f) {
  const Grid& g = f.grid();
  const auto& kz = g.kz();
  double sum = 0.0;
  std::size_t n = 0;
  auto c = f.coeffs();
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int iz = 0; iz < g.nz(); ++iz, ++n) sum += kz[iz] * kz[iz] * std::norm(c[n]);
  return Grid::volume() * sum;
}

double norm_H1(const SpectralField& f) {
  return std::sqrt(norm_L2_squared(f) + grad_h_squared(f) + dz_squared(f));
}

double max_abs(const PhysicalField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const SpectralField& f) { return max_abs(to_physical(f)); }

}  // namespace hydro
