#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hydro/spectral_field.hpp"
#include "hydro/state.hpp"

namespace hydro {

enum class RecipeField { V1, V2, Rho };
enum class ZBasis { Cos, Sin };

/// amplitude * cos(2 pi (nx x + ny y) + phase) * Z(pi m z).
/// Z defaults to cos for velocity components and sin for rho.
struct ModeSpec {
  RecipeField field = RecipeField::V1;
  int nx = 0;
  int ny = 0;
  int m = 0;
  double amplitude = 0.0;
  double phase = 0.0;
  std::optional<ZBasis> basis;

  bool operator==(const ModeSpec&) const = default;
};

using Recipe = std::vector<ModeSpec>;

/// Admissible initial data: v0 even, rho0 odd, w0 = -int_{-1}^z div_h v0.
struct InitialData {
  HorizontalVelocity v0;
  SpectralField rho0;
  SpectralField w0;

  const Grid& grid() const { return rho0.grid(); }
};

/// Builds and validates initial data. Rejects (never repairs) recipes that
/// break z-parity (ParityViolation) or the barotropic constraint
/// int div_h v0 dz = 0 (CompatibilityViolation).
InitialData make_initial(const Recipe& recipe, const Grid& grid);

/// Canonical benchmark recipe; see docs/formats.md for the mode table.
Recipe canonical_recipe(double amplitude = 1.0);
InitialData default_benchmark_data(double amplitude, const Grid& grid);

Recipe parse_recipe(std::istream& in, const std::string& source = "<recipe>");
Recipe load_recipe(const std::filesystem::path& path);
std::string format_recipe(const Recipe& recipe);

}  // namespace hydro
