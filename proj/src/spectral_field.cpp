#include "hydro/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hydro/errors.hpp"

namespace hydro {

std::string_view to_string(Parity parity) {
  switch (parity) {
    case Parity::EvenInZ: return "even";
    case Parity::OddInZ: return "odd";
    case Parity::None: return "none";
  }
  return "none";
}

Parity flip(Parity parity) {
  switch (parity) {
    case Parity::EvenInZ: return Parity::OddInZ;
    case Parity::OddInZ: return Parity::EvenInZ;
    case Parity::None: return Parity::None;
  }
  return Parity::None;
}

SpectralField::SpectralField(Grid grid, Parity parity)
    : grid_(std::move(grid)), coeffs_(grid_.size()), parity_(parity) {}

void SpectralField::add_cosine(int nx, int ny, int m, double amplitude,
                               double phase) {
  // cos(theta) = (e^{i theta} + e^{-i theta}) / 2
  const Complex half = 0.5 * amplitude * std::polar(1.0, phase);
  mode(nx, ny, m) += half;
  mode(-nx, -ny, -m) += std::conj(half);
}

void SpectralField::add_separable(int nx, int ny, int m, double amplitude,
                                  double phase, bool sine_in_z) {
  // cos(a) cos(b) = [cos(a+b) + cos(a-b)] / 2
  // cos(a) sin(b) = [sin(a+b) - sin(a-b)] / 2, sin(t) = cos(t - pi/2)
  constexpr double half_pi = std::numbers::pi / 2;
  if (!sine_in_z) {
    add_cosine(nx, ny, m, 0.5 * amplitude, phase);
    add_cosine(nx, ny, -m, 0.5 * amplitude, phase);
  } else {
    add_cosine(nx, ny, m, 0.5 * amplitude, phase - half_pi);
    add_cosine(nx, ny, -m, -0.5 * amplitude, phase - half_pi);
  }
}

void SpectralField::check_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) {
    throw Error(ErrorCode::GridMismatch, "fields live on different grids");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  return axpy(1.0, other);
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  return axpy(-1.0, other);
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  check_same_grid(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  if (parity_ != other.parity_) parity_ = Parity::None;
  return *this;
}

void SpectralField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

bool SpectralField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const {
  const double scale = max_abs_coeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int ix = 0; ix < grid_.nx(); ++ix)
    for (int iy = 0; iy < grid_.ny(); ++iy)
      for (int iz = 0; iz < grid_.nz(); ++iz) {
        const Complex mirrored = at(grid_.mirror_x(ix), grid_.mirror_y(iy),
                                    grid_.mirror_z(iz));
        worst = std::max(worst, std::abs(at(ix, iy, iz) - std::conj(mirrored)));
      }
  return worst / scale;
}

double SpectralField::parity_defect() const {
  if (parity_ == Parity::None) return 0.0;
  const double scale = max_abs_coeff();
  if (scale == 0.0) return 0.0;
  const double sign = parity_ == Parity::EvenInZ ? 1.0 : -1.0;
  double worst = 0.0;
  for (int ix = 0; ix < grid_.nx(); ++ix)
    for (int iy = 0; iy < grid_.ny(); ++iy)
      for (int iz = 0; iz < grid_.nz(); ++iz) {
        const Complex diff = at(ix, iy, iz) - sign * at(ix, iy, grid_.mirror_z(iz));
        worst = std::max(worst, std::abs(diff));
      }
  return worst / scale;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

}  // namespace hydro
