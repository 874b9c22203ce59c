#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "hydro/grid.hpp"

namespace hydro {

using Complex = std::complex<double>;

/// Symmetry class with respect to z -> -z.
enum class Parity { EvenInZ, OddInZ, None };

std::string_view to_string(Parity parity);
Parity flip(Parity parity);

/// Fourier coefficients of a real periodic scalar, f = sum c_k exp(i k.x).
/// Coefficients are stored row-major in (x, y, z) spectral index order.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(Grid grid, Parity parity = Parity::None);

  const Grid& grid() const { return grid_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity parity) { parity_ = parity; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex& at(int ix, int iy, int iz) { return coeffs_[grid_.index(ix, iy, iz)]; }
  const Complex& at(int ix, int iy, int iz) const {
    return coeffs_[grid_.index(ix, iy, iz)];
  }

  /// Coefficient addressed by integer modes (n_x, n_y, m).
  Complex& mode(int nx, int ny, int m) {
    return at(grid_.index_x(nx), grid_.index_y(ny), grid_.index_z(m));
  }
  const Complex& mode(int nx, int ny, int m) const {
    return at(grid_.index_x(nx), grid_.index_y(ny), grid_.index_z(m));
  }

  /// Adds amplitude * cos(2 pi (nx x + ny y) + pi m z + phase).
  void add_cosine(int nx, int ny, int m, double amplitude, double phase = 0.0);

  /// Adds amplitude * cos(2 pi (nx x + ny y) + phase) * Z(pi m z) with Z = cos
  /// or sin; the building block of parity-respecting recipes.
  void add_separable(int nx, int ny, int m, double amplitude, double phase,
                     bool sine_in_z);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  void set_zero();
  bool is_zero() const;
  double max_abs_coeff() const;

  /// Largest |c(k) - conj(c(-k))| relative to the largest coefficient.
  double hermitian_defect() const;
  /// Largest |c(nx,ny,m) -/+ c(nx,ny,-m)| relative to the largest coefficient,
  /// for the declared parity; zero when parity is None.
  double parity_defect() const;

 private:
  void check_same_grid(const SpectralField& other) const;

  Grid grid_;
  std::vector<Complex> coeffs_;
  Parity parity_ = Parity::None;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Point values of a real field on the collocation grid.
struct PhysicalField {
  Grid grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(Grid g) : grid(std::move(g)), values(grid.size(), 0.0) {}

  double& at(int ix, int iy, int iz) { return values[grid.index(ix, iy, iz)]; }
  double at(int ix, int iy, int iz) const {
    return values[grid.index(ix, iy, iz)];
  }
};

}  // namespace hydro
