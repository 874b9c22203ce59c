#include "hydro/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hydro/boussinesq.hpp"
#include "hydro/errors.hpp"
#include "hydro/primitive.hpp"
#include "hydro/spectral_ops.hpp"
#include "stepping.hpp"

namespace hydro {
namespace {

SweepRecord run_point(double lambda, const SolverParams& tmpl, const InitialData& initial,
                      double t_end, const SweepOptions& options) {
  SweepRecord rec;
  rec.lambda = lambda;
  SolverParams params = tmpl;
  params.lambda = lambda;
  params.t_end = t_end;
  try {
    params.validate();
    FlowState b = initial_flow_state(initial, params);
    HydroState p = initial_hydro_state(initial, params);
    detail::check_cfl(b.v, b.w, params.dt);
    DiffNorms norms;
    norms.with_h1 = options.with_h1;
    EnergyBudget budget;

    auto sample = [&](long n) {
      norms = diff_norms_update(std::move(norms), b, p, params, params.dt);
      budget = energy_budget_update(std::move(budget), b, params, params.dt);
      if (options.series_every > 0 && n % options.series_every == 0) {
        rec.series.push_back({b.time, budget.energy, budget.dissipation, budget.violation,
                              norms, norm_L4(ddz(p.v[0]), ddz(p.v[1]))});
      }
    };

    const long steps = params.steps();
    sample(0);
    for (long n = 1; n <= steps; ++n) {
      b = step_boussinesq(b, params);
      p = step_primitive(p, params);
      sample(n);
    }
    rec.norms = norms;
    rec.error = norms.error();
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.failure = e.what();
    if (const auto* err = dynamic_cast<const Error*>(&e);
        err && err->code() == ErrorCode::BlowUp) {
      rec.failure += " (reduce dt for this lambda)";
    }
  }
  return rec;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

bool SweepResult::slope_within_band() const {
  return fitted_slope.has_value() &&
         std::abs(*fitted_slope - predicted_slope) <= kRelativeBand * predicted_slope;
}

bool SweepResult::strictly_decreasing() const {
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].failed || records[i - 1].failed) return false;
    if (!(records[i].error < records[i - 1].error)) return false;
  }
  return true;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit_rate needs at least two points");
  }
  std::vector<double> x, y;
  for (const auto& [lambda, err] : pairs) {
    if (!(err > 0.0)) {
      throw Error(ErrorCode::NonPositiveError,
                  "fit_rate: nonpositive error " + fmt(err) + " at lambda = " + fmt(lambda));
    }
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "fit_rate: lambda must be positive");
    }
    x.push_back(std::log(lambda));
    y.push_back(std::log(err));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "fit_rate: all lambdas coincide");
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
  }
  return fit;
}

SweepResult run_sweep(const std::vector<double>& lambdas, const SolverParams& params_template,
                      const InitialData& initial, double t_end, const SweepOptions& options) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0 && lambdas[i] < 1.0)) {
      throw Error(ErrorCode::ValidationError, "invalid 'lambdas': values must lie in (0, 1)");
    }
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
      throw Error(ErrorCode::ValidationError, "invalid 'lambdas': must be strictly decreasing");
    }
  }

  SweepResult result;
  result.beta = params_template.beta;
  result.gamma = params_template.gamma;
  result.t_end = t_end;
  result.predicted_slope = params_template.eta() / 2.0;
  result.records.resize(lambdas.size());

  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(lambdas.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      result.records[i] = run_point(lambdas[i], params_template, initial, t_end, options);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < lambdas.size(); i = next++) {
          result.records[i] = run_point(lambdas[i], params_template, initial, t_end, options);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<std::pair<double, double>> pairs;
  for (const auto& r : result.records) {
    if (!r.failed && r.error > 0.0) pairs.emplace_back(r.lambda, r.error);
  }
  if (pairs.size() >= 2) {
    const RateFit fit = fit_rate(pairs);
    result.fitted_slope = fit.slope;
    result.residual = fit.residual;
  }
  return result;
}

std::string render_rate_svg(const SweepResult& result) {
  constexpr double width = 480, height = 360, margin = 50;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : result.records) {
    if (!r.failed && r.error > 0.0) pts.emplace_back(std::log10(r.lambda), std::log10(r.error));
  }

  double x0 = -2, x1 = 0, y0 = -4, y1 = 0;
  if (!pts.empty()) {
    x0 = x1 = pts.front().first;
    y0 = y1 = pts.front().second;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    const double px = std::max(0.1, 0.1 * (x1 - x0));
    const double py = std::max(0.1, 0.1 * (y1 - y0));
    x0 -= px;
    x1 += px;
    y0 -= py;
    y1 += py;
  }
  auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
      << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">log10 lambda</text>\n";
  svg << "<text x=\"14\" y=\"" << height / 2 << "\" transform=\"rotate(-90 14 " << height / 2
      << ")\" text-anchor=\"middle\">log10 E</text>\n";

  // Both lines pass through the centroid of the points; without points they
  // are drawn through the centre of the frame.
  double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  if (!pts.empty()) {
    cx = cy = 0.0;
    for (const auto& [x, y] : pts) {
      cx += x;
      cy += y;
    }
    cx /= pts.size();
    cy /= pts.size();
  }
  const double fit_slope = result.fitted_slope.value_or(0.0);
  auto line = [&](double slope, const char* colour, const char* dash, const char* id) {
    svg << "<line id=\"" << id << "\" x1=\"" << sx(x0) << "\" y1=\"" << sy(cy + slope * (x0 - cx))
        << "\" x2=\"" << sx(x1) << "\" y2=\"" << sy(cy + slope * (x1 - cx)) << "\" stroke=\""
        << colour << "\"" << dash << "/>\n";
  };
  line(fit_slope, "#c0392b", "", "fit");
  line(result.predicted_slope, "#2c3e50", " stroke-dasharray=\"6 4\"", "predicted");
  for (const auto& [x, y] : pts) {
    svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
  }
  svg << "<text x=\"" << margin + 8 << "\" y=\"" << margin + 18 << "\">fit slope "
      << (result.fitted_slope ? fmt(*result.fitted_slope).substr(0, 6) : std::string("n/a"))
      << ", predicted " << result.predicted_slope << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_report(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  auto open = [](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << std::setprecision(17);
    return out;
  };

  {
    std::ofstream csv = open(dir / "records.csv");
    csv << "lambda,status,error,sup_L2,int_grad_h_V,int_dz_V,int_grad_h_W,int_grad_h_Gamma,"
           "int_dz_W,int_dz_Gamma\n";
    for (const auto& r : result.records) {
      const DiffTerms& t = r.norms.integral;
      csv << r.lambda << ',' << (r.failed ? "failed" : "ok") << ',' << r.error << ','
          << r.norms.sup_L2 << ',' << t.grad_h_V << ',' << t.dz_V << ',' << t.grad_h_W << ','
          << t.grad_h_G << ',' << t.dz_W << ',' << t.dz_G << '\n';
    }
    if (!csv) throw Error(ErrorCode::IoError, "write failed for records.csv");
  }

  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    if (r.series.empty()) continue;
    std::ofstream csv = open(dir / ("diagnostics_" + std::to_string(i) + ".csv"));
    csv << "time,E,D,violation,sup_L2,int_grad_h_V,int_dz_V,int_grad_h_W,int_grad_h_Gamma,"
           "int_dz_W,int_dz_Gamma,dzv_L4\n";
    for (const auto& s : r.series) {
      const DiffTerms& t = s.norms.integral;
      csv << s.time << ',' << s.energy << ',' << s.dissipation << ',' << s.violation << ','
          << s.norms.sup_L2 << ',' << t.grad_h_V << ',' << t.dz_V << ',' << t.grad_h_W << ','
          << t.grad_h_G << ',' << t.dz_W << ',' << t.dz_G << ',' << s.dzv_L4 << '\n';
    }
  }

  nlohmann::ordered_json summary;
  summary["beta"] = result.beta;
  summary["gamma"] = result.gamma;
  summary["eta"] = 2.0 * result.predicted_slope;
  summary["t_end"] = result.t_end;
  summary["predicted_slope"] = result.predicted_slope;
  summary["relative_band"] = SweepResult::kRelativeBand;
  if (result.fitted_slope) {
    summary["fitted_slope"] = *result.fitted_slope;
    summary["fit_residual"] = result.residual;
    summary["slope_within_band"] = result.slope_within_band();
    summary["strictly_decreasing"] = result.strictly_decreasing();
    summary["status"] = result.slope_within_band() ? "pass" : "fail";
  } else {
    summary["fitted_slope"] = nullptr;
    summary["status"] = "inconclusive";
  }
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    nlohmann::ordered_json p;
    p["lambda"] = r.lambda;
    p["status"] = r.failed ? "failed" : "ok";
    if (r.failed) p["failure"] = r.failure;
    else p["error"] = r.error;
    points.push_back(p);
  }
  summary["points"] = points;
  {
    std::ofstream out = open(dir / "summary.json");
    out << summary.dump(2) << '\n';
  }
  {
    std::ofstream out = open(dir / "rate.svg");
    out << render_rate_svg(result);
  }
}

}  // namespace hydro
