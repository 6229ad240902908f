#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ruinsim/analysis.hpp"
#include "ruinsim/model/model.hpp"
#include "ruinsim/rng.hpp"

namespace ruinsim {

enum class Method { kCrude, kCvMax, kAk, kAkCv };

struct EstimatorKind {
  Series series = Series::kNew;
  Method method = Method::kCrude;

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;
};

/// All kinds in reporting order: new series first, then PK; within a series
/// crude, cv_max, ak, ak_cv.
const std::vector<EstimatorKind>& all_estimator_kinds();
int kind_rank(EstimatorKind kind);

std::string series_name(Series s);
std::string method_name(Method m);
/// "new.crude", "pk.ak_cv", ...
std::string kind_name(EstimatorKind kind);
/// Inverse of kind_name; throws DomainError on unknown names.
EstimatorKind parse_kind(const std::string& name);

/// Replicate values Y with an optional paired control Z of known mean EZ.
struct SampleBatch {
  std::vector<double> y;
  std::optional<std::vector<double>> z;
  std::optional<double> ez;
  /// Coefficient used when Z has zero sample spread and no regression
  /// slope can be fitted.
  double fallback_beta = 0.0;
};

struct EstimatorResult {
  double estimate = 0.0;
  double std_err = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double beta_hat = 0.0;
  double corr_hat = 0.0;
  std::int64_t reps = 0;
  EstimatorKind kind;
};

/// Regression control-variate combination:
///   estimate = mean(Y) + beta (mean(Z) - EZ),  beta = -S_yz / S_zz.
/// Without a control this is the plain sample mean.
EstimatorResult cv_combine(const SampleBatch& batch);

struct RunOptions {
  double u = 0.0;
  int n = 100;              // truncation order for cv_max
  std::int64_t reps = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Fills the Y (and Z, if asked) values of every replication, in index
/// order, with replication i drawing only from rng_substream(seed, i).
using ReplicateFn = std::function<std::pair<double, double>(RngStream&)>;
void run_replications(const RunOptions& opts, const ReplicateFn& fn, std::vector<double>* y,
                      std::vector<double>* z);

/// Estimators of R(u) (new series) or R°(u) (PK series).
EstimatorResult crude(Series series, const RuinModel& model, const RunOptions& opts);
EstimatorResult cv_max(Series series, const RuinModel& model, const RunOptions& opts);
EstimatorResult ak(Series series, const RuinModel& model, const RunOptions& opts,
                   bool with_count_cv);
EstimatorResult run_estimator(EstimatorKind kind, const RuinModel& model,
                              const RunOptions& opts);

/// One conditional Monte Carlo draw, without the q^2 (rho^2) scaling:
///   value   = (N + 2) * Fbar(max(X_1..X_{N+1}) v (u - base - S_{N+1}))
///   control = (N + 2) * Fbar(u)
/// where N is the geometric count (or fixed_count when given), the X's are
/// summands D (new) or C_e (PK) and base is M_d^(0) (new) or 0 (PK).
struct AkDraw {
  double value = 0.0;
  double control = 0.0;
  std::uint64_t count = 0;
};
AkDraw ak_draw(Series series, const RuinModel& model, double u, RngStream& rng,
               std::optional<std::uint64_t> fixed_count = std::nullopt);

/// Adds the exact explicit part to an estimate of R(u), giving psi(u).
EstimatorResult assemble_psi(Series series, const RuinModel& model, double u,
                             const EstimatorResult& result_r);

}  // namespace ruinsim
