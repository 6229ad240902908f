#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ruinsim/harness/config.hpp"

namespace ruinsim {

struct ResultRow {
  double u = 0.0;
  std::string series;
  std::string method;
  int n = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;  // of R(u) or R°(u)
  double psi_hat = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;  // psi scale
  double ci_hi = 0.0;
  double beta_hat = 0.0;
  double corr_hat = 0.0;
  double heavy_tail_approx = 0.0;
  double z_n = 0.0;       // control mean of the row's series
  double bound_lo = 0.0;  // psi scale, discard-series bounds
  double bound_hi = 0.0;
  double wall_ms = 0.0;
};

struct RunSettings {
  int workers = 1;
  bool record_timing = false;
};

/// One row per (u, estimator), u ascending then estimator order. A failing
/// estimator leaves NaN in its row and a note on stderr; the run goes on.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, const RunSettings& settings);

/// Single (u, estimator) row.
ResultRow run_single(const ExperimentConfig& config, const RuinModel& model, double u,
                     EstimatorKind kind, const RunSettings& settings);

const std::vector<std::string>& result_columns();
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv_file(const std::string& path, const std::vector<ResultRow>& rows);
/// %.17g
std::string format_double(double x);

struct ConstantsRow {
  int n = 0;
  double ratio_new = 0.0;
  double ratio_pk = 0.0;
  double cross_cv = 0.0;
  double cross_raw = 0.0;
};
std::vector<ConstantsRow> constants_report(const ExperimentConfig& config,
                                           const std::vector<int>& n_list);
void write_constants_csv(std::ostream& out, const std::vector<ConstantsRow>& rows);

}  // namespace ruinsim
