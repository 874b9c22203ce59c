#pragma once

#include <complex>
#include <span>

#include "hydro/grid.hpp"

namespace hydro::fft {

/// Unnormalised in-place 3D transforms over a grid-sized complex buffer.
/// Plans are created once per grid shape and shared; execution is thread-safe.
void forward(const Grid& grid, std::span<std::complex<double>> data);
void backward(const Grid& grid, std::span<std::complex<double>> data);

}  // namespace hydro::fft
