#include "hydro/grid.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "hydro/errors.hpp"

namespace hydro {
namespace {

std::vector<int> fft_modes(int n) {
  std::vector<int> modes(n);
  for (int i = 0; i < n; ++i) modes[i] = i < n / 2 ? i : i - n;
  return modes;
}

std::vector<double> derivative_wavenumbers(const std::vector<int>& modes,
                                           double base) {
  const int n = static_cast<int>(modes.size());
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = i == n / 2 ? 0.0 : base * modes[i];
  return k;
}

void check_axis(int n, const char* name) {
  if (n < 8 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("grid size ") + name + " = " + std::to_string(n) +
                    " must be even and at least 8");
  }
}

}  // namespace

Grid::Grid(int nx, int ny, int nz) : nx_(nx), ny_(ny), nz_(nz) {
  check_axis(nx, "nx");
  check_axis(ny, "ny");
  check_axis(nz, "nz");
  constexpr double pi = std::numbers::pi;
  Tables t;
  t.mode_x = fft_modes(nx);
  t.mode_y = fft_modes(ny);
  t.mode_z = fft_modes(nz);
  t.kx = derivative_wavenumbers(t.mode_x, 2.0 * pi);
  t.ky = derivative_wavenumbers(t.mode_y, 2.0 * pi);
  t.kz = derivative_wavenumbers(t.mode_z, pi);
  tables_ = std::make_shared<const Tables>(std::move(t));
}

double Grid::min_spacing() const {
  return std::min({1.0 / nx_, 1.0 / ny_, 2.0 / nz_});
}

}  // namespace hydro
