#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace hydro {

/// Uniform periodic grid on (0,1) x (0,1) x (-1,1).
///
/// Physical samples sit at x_i = i/nx, y_j = j/ny and z_k = 2k/nz (taken mod 2,
/// so the point set coincides with -1 + 2k/nz). Spectral index i along an axis
/// maps to the integer mode in FFT order: 0, 1, ..., n/2-1, -n/2, ..., -1.
/// Horizontal wavenumbers are 2*pi*n, the vertical one is pi*m.
///
/// Copies share the immutable wavenumber tables.
class Grid {
 public:
  Grid() = default;
  Grid(int nx, int ny, int nz);

  static Grid cube(int n) { return Grid(n, n, n); }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  std::size_t size() const {
    return static_cast<std::size_t>(nx_) * ny_ * nz_;
  }
  bool empty() const { return size() == 0; }

  std::size_t index(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(ix) * ny_ + iy) * nz_ + iz;
  }

  /// Integer modes per axis in FFT order.
  const std::vector<int>& modes_x() const { return tables_->mode_x; }
  const std::vector<int>& modes_y() const { return tables_->mode_y; }
  const std::vector<int>& modes_z() const { return tables_->mode_z; }

  /// Wavenumbers used by differential operators. The Nyquist entry is zero so
  /// that derivatives of real fields stay real.
  const std::vector<double>& kx() const { return tables_->kx; }
  const std::vector<double>& ky() const { return tables_->ky; }
  const std::vector<double>& kz() const { return tables_->kz; }

  /// Spectral index holding the mode -n along each axis.
  int mirror_x(int ix) const { return ix == 0 ? 0 : nx_ - ix; }
  int mirror_y(int iy) const { return iy == 0 ? 0 : ny_ - iy; }
  int mirror_z(int iz) const { return iz == 0 ? 0 : nz_ - iz; }

  /// Spectral index for an integer mode (any integer, wrapped into range).
  int index_x(int mode) const { return wrap(mode, nx_); }
  int index_y(int mode) const { return wrap(mode, ny_); }
  int index_z(int mode) const { return wrap(mode, nz_); }

  double x(int ix) const { return static_cast<double>(ix) / nx_; }
  double y(int iy) const { return static_cast<double>(iy) / ny_; }
  double z(int iz) const { return 2.0 * iz / nz_; }

  static constexpr double volume() { return 2.0; }

  /// Smallest grid spacing over the three axes.
  double min_spacing() const;

  bool operator==(const Grid& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_ && nz_ == other.nz_;
  }

 private:
  struct Tables {
    std::vector<int> mode_x, mode_y, mode_z;
    std::vector<double> kx, ky, kz;
  };

  static int wrap(int mode, int n) { return ((mode % n) + n) % n; }

  int nx_ = 0;
  int ny_ = 0;
  int nz_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace hydro
