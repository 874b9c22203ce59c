#pragma once

#include "hydro/spectral_field.hpp"

namespace hydro {

// Transforms. Coefficients are normalised so that a field equal to 1 has a
// unit (0,0,0) coefficient.
PhysicalField to_physical(const SpectralField& f);
SpectralField to_spectral(const PhysicalField& f, Parity parity = Parity::None);

/// Forward-then-inverse transform; exposed for testing.
SpectralField transform_roundtrip(const SpectralField& f);

// Differential operators (exact per-mode multipliers).
SpectralField ddx(const SpectralField& f);
SpectralField ddy(const SpectralField& f);
SpectralField ddz(const SpectralField& f);
SpectralField laplacian_h(const SpectralField& f);
/// d/dx f1 + d/dy f2
SpectralField divergence_h(const SpectralField& f1, const SpectralField& f2);

/// Orthogonal L2 projection onto the even (cosine) or odd (sine) subspace in z.
SpectralField project_parity(const SpectralField& f, Parity parity);

/// Replaces every coefficient by the average with conj of its mirror, so the
/// field is exactly real in physical space.
void enforce_real(SpectralField& f);

/// Fraction of L2 energy outside the declared parity class (0 if None).
double parity_violation_fraction(const SpectralField& f);

/// 2/3-rule truncation: zero modes with 3|n| > n_axis on any axis.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);
bool is_dealiased(const SpectralField& f);

/// Pointwise product of two fields evaluated on the collocation grid.
PhysicalField multiply(const PhysicalField& a, const PhysicalField& b);

/// Antiderivative in z anchored at the bottom: F(x,y,-1) = 0 and dF/dz = f.
///
/// Requires a vanishing z-mean for every horizontal mode (the antiderivative
/// is otherwise not periodic); throws NonZeroVerticalMean if any m = 0
/// coefficient exceeds `tolerance`. Residual m = 0 content below the
/// tolerance and the z-Nyquist plane are dropped. Parity flips.
SpectralField vertical_integral_from_bottom(const SpectralField& f,
                                            double tolerance = 1e-10);

/// z-average over (-1,1), returned as a z-independent field.
SpectralField vertical_mean(const SpectralField& f);

// Norms over the box (volume 2).
double norm_L2(const SpectralField& f);
double norm_L2_squared(const SpectralField& f);
/// Integral of f * g by Parseval.
double inner_product(const SpectralField& f, const SpectralField& g);
/// L4 by rectangle-rule quadrature on the collocation grid.
double norm_L4(const SpectralField& f);
/// L4 of |(f1, f2)| for a horizontal vector field.
double norm_L4(const SpectralField& f1, const SpectralField& f2);
double norm_H1(const SpectralField& f);
/// ||grad_h f||_2^2
double grad_h_squared(const SpectralField& f);
/// ||d f / dz||_2^2
double dz_squared(const SpectralField& f);
/// Max |f| over the collocation points.
double max_abs(const SpectralField& f);
double max_abs(const PhysicalField& f);

}  // namespace hydro
