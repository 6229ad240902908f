#include "ruinsim/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>

#include "ruinsim/analysis.hpp"

namespace ruinsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointContext {
  double heavy_tail = kNaN;
  double z_new = kNaN;
  double z_pk = kNaN;
  double bound_lo = kNaN;
  double bound_hi = kNaN;
};

PointContext point_context(const RuinModel& model, double u, int n) {
  PointContext ctx;
  ctx.heavy_tail = heavy_tail_approx(model, u);
  ctx.z_new = z_n(Series::kNew, model, u, n);
  ctx.z_pk = z_n(Series::kPk, model, u, n);
  const ErrorBounds b = error_bounds(model, u, n);
  const double centre = explicit_part(Series::kNew, model, u) + ctx.z_new;
  ctx.bound_lo = centre + b.lower;
  ctx.bound_hi = centre + b.upper;
  return ctx;
}

std::vector<EstimatorKind> ordered_kinds(std::vector<EstimatorKind> kinds) {
  std::sort(kinds.begin(), kinds.end(),
            [](EstimatorKind a, EstimatorKind b) { return kind_rank(a) < kind_rank(b); });
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  return kinds;
}

ResultRow make_row(const ExperimentConfig& config, const RuinModel& model, double u,
                   EstimatorKind kind, const PointContext& ctx, const RunSettings& settings) {
  ResultRow row;
  row.u = u;
  row.series = series_name(kind.series);
  row.method = method_name(kind.method);
  row.n = config.sim.n;
  row.reps = config.sim.reps;
  row.seed = config.sim.seed;
  row.heavy_tail_approx = ctx.heavy_tail;
  row.z_n = kind.series == Series::kNew ? ctx.z_new : ctx.z_pk;
  row.bound_lo = ctx.bound_lo;
  row.bound_hi = ctx.bound_hi;

  RunOptions opts;
  opts.u = u;
  opts.n = config.sim.n;
  opts.reps = config.sim.reps;
  opts.seed = config.sim.seed;
  opts.workers = settings.workers;

  const auto start = std::chrono::steady_clock::now();
  try {
    const EstimatorResult r = run_estimator(kind, model, opts);
    const EstimatorResult psi = assemble_psi(kind.series, model, u, r);
    row.estimate = r.estimate;
    row.psi_hat = psi.estimate;
    row.std_err = r.std_err;
    row.ci_lo = psi.ci_lo;
    row.ci_hi = psi.ci_hi;
    row.beta_hat = r.beta_hat;
    row.corr_hat = r.corr_hat;
  } catch (const std::exception& e) {
    std::cerr << "ruinsim: " << kind_name(kind) << " at u=" << format_double(u)
              << " failed: " << e.what() << "\n";
    row.estimate = row.psi_hat = row.std_err = kNaN;
    row.ci_lo = row.ci_hi = row.beta_hat = row.corr_hat = kNaN;
  }
  if (settings.record_timing) {
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
  }
  return row;
}

}  // namespace

ResultRow run_single(const ExperimentConfig& config, const RuinModel& model, double u,
                     EstimatorKind kind, const RunSettings& settings) {
  return make_row(config, model, u, kind, point_context(model, u, config.sim.n), settings);
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RunSettings& settings) {
  validate(config);
  const RuinModel model(to_model_params(config.model));
  const std::vector<EstimatorKind> kinds = ordered_kinds(config.estimators);
  std::vector<double> grid = config.sim.u_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<ResultRow> rows;
  rows.reserve(grid.size() * kinds.size());
  for (double u : grid) {
    PointContext ctx;
    try {
      ctx = point_context(model, u, config.sim.n);
    } catch (const std::exception& e) {
      std::cerr << "ruinsim: analytic columns at u=" << format_double(u)
                << " failed: " << e.what() << "\n";
    }
    for (EstimatorKind kind : kinds) rows.push_back(make_row(config, model, u, kind, ctx, settings));
  }
  return rows;
}

std::vector<ConstantsRow> constants_report(const ExperimentConfig& config,
                                           const std::vector<int>& n_list) {
  const DerivedRates rates = derive_rates(to_model_params(config.model));
  std::vector<ConstantsRow> rows;
  for (int n : n_list) {
    const VarianceConstants c = variance_constants(rates, n);
    rows.push_back({n, c.ratio_new, c.ratio_pk, c.cross_cv, c.cross_raw});
  }
  return rows;
}

}  // namespace ruinsim
