#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydro/diagnostics.hpp"
#include "hydro/initial_data.hpp"
#include "hydro/params.hpp"

namespace hydro {

/// One row of a per-lambda time series.
struct SweepSample {
  double time = 0.0;
  double energy = 0.0;       ///< Boussinesq E(t)
  double dissipation = 0.0;  ///< Boussinesq D(t)
  double violation = 0.0;
  DiffNorms norms;           ///< accumulated up to time
  double dzv_L4 = 0.0;       ///< |d_z v|_4 of the hydrostatic solution
};

struct SweepRecord {
  double lambda = 0.0;
  bool failed = false;
  std::string failure;
  DiffNorms norms;
  /// sqrt(sup_L2 + sum of the six dissipation integrals)
  double error = 0.0;
  std::vector<SweepSample> series;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Max |log E - fit| over the points.
  double residual = 0.0;
};

struct SweepResult {
  std::vector<SweepRecord> records;  ///< lambda descending
  double beta = 0.0;
  double gamma = 0.0;
  double t_end = 0.0;
  double predicted_slope = 0.0;      ///< eta / 2
  std::optional<double> fitted_slope;
  double residual = 0.0;

  /// Accepted band: |fitted - predicted| <= 0.3 * predicted.
  static constexpr double kRelativeBand = 0.3;
  bool slope_within_band() const;
  /// error strictly decreases as lambda decreases along the sweep.
  bool strictly_decreasing() const;
};

/// Ordinary least squares of log E against log lambda. Needs at least two
/// pairs; throws NonPositiveError if any E <= 0.
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

struct SweepOptions {
  /// Number of lambda points evaluated concurrently; results do not depend on it.
  int threads = 1;
  bool with_h1 = false;
  /// Keep a time series row every n steps (0: none).
  long series_every = 0;
};

/// Runs both systems from the same data for every lambda (grid, dt, beta,
/// gamma and f0 from the template) and fits the observed rate.
SweepResult run_sweep(const std::vector<double>& lambdas, const SolverParams& params_template,
                      const InitialData& initial, double t_end,
                      const SweepOptions& options = {});

/// Writes records.csv, summary.json and rate.svg into dir, plus
/// diagnostics_<i>.csv for records that carry a series.
void emit_report(const SweepResult& result, const std::filesystem::path& dir);

/// The SVG alone: two <line> elements (fit, predicted slope) plus one
/// <circle> per successful point.
std::string render_rate_svg(const SweepResult& result);

}  // namespace hydro
