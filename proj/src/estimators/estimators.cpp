#include "ruinsim/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ruinsim/errors.hpp"
#include "ruinsim/simd/batch_stats.hpp"

namespace ruinsim {
namespace {

constexpr double kZ95 = 1.96;

EstimatorResult finish(double estimate, double variance, std::size_t reps) {
  EstimatorResult res;
  res.estimate = estimate;
  res.reps = static_cast<std::int64_t>(reps);
  res.std_err = std::sqrt(std::max(variance, 0.0) / static_cast<double>(reps));
  res.ci_lo = estimate - kZ95 * res.std_err;
  res.ci_hi = estimate + kZ95 * res.std_err;
  return res;
}

double scale_of(Series series, const DerivedRates& r) {
  const double base = series == Series::kNew ? r.series_ratio : r.rho;
  return base * base;
}

SampleBatch simulate(const RunOptions& opts, const ReplicateFn& fn, bool with_control) {
  SampleBatch batch;
  if (with_control) {
    batch.z.emplace();
    run_replications(opts, fn, &batch.y, &*batch.z);
  } else {
    run_replications(opts, fn, &batch.y, nullptr);
  }
  return batch;
}

void check_u(double u) {
  if (!(u >= 0.0)) throw DomainError("u must be >= 0");
}

}  // namespace

const std::vector<EstimatorKind>& all_estimator_kinds() {
  static const std::vector<EstimatorKind> kinds = [] {
    std::vector<EstimatorKind> k;
    for (Series s : {Series::kNew, Series::kPk})
      for (Method m : {Method::kCrude, Method::kCvMax, Method::kAk, Method::kAkCv})
        k.push_back({s, m});
    return k;
  }();
  return kinds;
}

int kind_rank(EstimatorKind kind) {
  return static_cast<int>(kind.series) * 4 + static_cast<int>(kind.method);
}

std::string series_name(Series s) { return s == Series::kNew ? "new" : "pk"; }

std::string method_name(Method m) {
  switch (m) {
    case Method::kCrude:
      return "crude";
    case Method::kCvMax:
      return "cv_max";
    case Method::kAk:
      return "ak";
    case Method::kAkCv:
      return "ak_cv";
  }
  return "?";
}

std::string kind_name(EstimatorKind kind) {
  return series_name(kind.series) + "." + method_name(kind.method);
}

EstimatorKind parse_kind(const std::string& name) {
  for (const EstimatorKind& k : all_estimator_kinds()) {
    if (kind_name(k) == name) return k;
  }
  throw DomainError("unknown estimator '" + name + "'");
}

EstimatorResult cv_combine(const SampleBatch& batch) {
  const std::size_t reps = batch.y.size();
  if (!batch.z) {
    if (reps < 1) throw InsufficientSampleError("empty sample");
    const simd::SeriesMoments m = simd::series_moments(batch.y);
    const double var = reps > 1 ? m.sxx / static_cast<double>(reps - 1) : 0.0;
    return finish(m.mean, var, reps);
  }
  if (batch.z->size() != reps) throw DomainError("Y and Z must have equal length");
  if (reps < 2) throw InsufficientSampleError("control variate needs at least 2 replications");
  if (!batch.ez) throw DomainError("control variate needs its exact mean");

  const simd::PairedMoments m = simd::paired_moments(batch.y, *batch.z);
  const double beta = m.szz > 0.0 ? -m.syz / m.szz : batch.fallback_beta;
  const double estimate = m.mean_y + beta * (m.mean_z - *batch.ez);
  const double resid_ss = m.syy + 2.0 * beta * m.syz + beta * beta * m.szz;
  EstimatorResult res = finish(estimate, resid_ss / static_cast<double>(reps - 1), reps);
  res.beta_hat = beta;
  if (m.syy > 0.0 && m.szz > 0.0) {
    res.corr_hat = std::clamp(m.syz / std::sqrt(m.syy * m.szz), -1.0, 1.0);
  }
  return res;
}

EstimatorResult crude(Series series, const RuinModel& model, const RunOptions& opts) {
  check_u(opts.u);
  const double scale = scale_of(series, model.rates());
  const double u = opts.u;
  ReplicateFn fn;
  if (series == Series::kNew) {
    fn = [&model, scale, u](RngStream& rng) {
      const SeriesDraw d = model.sample_v_new(rng);
      return std::pair{d.value > u ? scale : 0.0, 0.0};
    };
  } else {
    fn = [&model, scale, u](RngStream& rng) {
      const SeriesDraw d = model.sample_v_pk(rng);
      return std::pair{d.value > u ? scale : 0.0, 0.0};
    };
  }
  EstimatorResult res = cv_combine(simulate(opts, fn, false));
  res.kind = {series, Method::kCrude};
  return res;
}

EstimatorResult cv_max(Series series, const RuinModel& model, const RunOptions& opts) {
  check_u(opts.u);
  if (opts.n < 2) throw DomainError("cv_max needs truncation order n >= 2");
  const double scale = scale_of(series, model.rates());
  const double u = opts.u;
  // Count limit: N + 2 <= n.
  const auto limit = static_cast<std::uint64_t>(opts.n - 2);
  ReplicateFn fn = [&model, series, scale, u, limit](RngStream& rng) {
    const SeriesDraw d =
        series == Series::kNew ? model.sample_v_new(rng) : model.sample_v_pk(rng);
    const double y = d.value > u ? scale : 0.0;
    const double z = (d.max_component > u && d.count <= limit) ? scale : 0.0;
    return std::pair{y, z};
  };
  SampleBatch batch = simulate(opts, fn, true);
  batch.ez = z_n(series, model, u, opts.n);
  // With no spread in Z (no control hits) the large-u optimum beta -> -1.
  batch.fallback_beta = -1.0;
  EstimatorResult res = cv_combine(batch);
  res.kind = {series, Method::kCvMax};
  return res;
}

AkDraw ak_draw(Series series, const RuinModel& model, double u, RngStream& rng,
               std::optional<std::uint64_t> fixed_count) {
  AkDraw d;
  const bool is_new = series == Series::kNew;
  if (fixed_count) {
    d.count = *fixed_count;
  } else {
    d.count = is_new ? model.new_count_law().sample(rng) : model.pk_count_law().sample(rng);
  }
  const double base = is_new ? model.sample_discard_maximum(rng) : 0.0;
  double sum = 0.0;
  double largest = 0.0;
  for (std::uint64_t k = 0; k <= d.count; ++k) {
    const double x = is_new ? model.sample_summand(rng) : model.sample_mixture_excess(rng);
    sum += x;
    largest = std::max(largest, x);
  }
  const double arg = std::max(largest, u - base - sum);
  const double terms = static_cast<double>(d.count + 2);
  if (is_new) {
    d.value = terms * model.summand_tail_fast(arg);
    d.control = terms * model.summand_tail_fast(u);
  } else {
    d.value = terms * model.mixture_excess_ccdf(arg);
    d.control = terms * model.mixture_excess_ccdf(u);
  }
  return d;
}

EstimatorResult ak(Series series, const RuinModel& model, const RunOptions& opts,
                   bool with_count_cv) {
  check_u(opts.u);
  const DerivedRates& r = model.rates();
  const double scale = scale_of(series, r);
  const double u = opts.u;
  ReplicateFn fn = [&model, series, scale, u](RngStream& rng) {
    const AkDraw d = ak_draw(series, model, u, rng);
    return std::pair{scale * d.value, scale * d.control};
  };
  SampleBatch batch = simulate(opts, fn, with_count_cv);
  if (with_count_cv) {
    const bool is_new = series == Series::kNew;
    const double mean_count = is_new ? r.heavy_load / (1.0 - r.rho) : r.rho / (1.0 - r.rho);
    const double tail = is_new ? model.summand_tail_fast(u) : model.mixture_excess_ccdf(u);
    batch.ez = scale * (mean_count + 2.0) * tail;
  }
  EstimatorResult res = cv_combine(batch);
  res.kind = {series, with_count_cv ? Method::kAkCv : Method::kAk};
  return res;
}

EstimatorResult run_estimator(EstimatorKind kind, const RuinModel& model,
                              const RunOptions& opts) {
  switch (kind.method) {
    case Method::kCrude:
      return crude(kind.series, model, opts);
    case Method::kCvMax:
      return cv_max(kind.series, model, opts);
    case Method::kAk:
      return ak(kind.series, model, opts, false);
    case Method::kAkCv:
      return ak(kind.series, model, opts, true);
  }
  throw DomainError("unknown estimator method");
}

EstimatorResult assemble_psi(Series series, const RuinModel& model, double u,
                             const EstimatorResult& result_r) {
  if (result_r.kind.series != series) throw DomainError("assemble_psi: series mismatch");
  const double shift = explicit_part(series, model, u);
  EstimatorResult res = result_r;
  res.estimate += shift;
  res.ci_lo += shift;
  res.ci_hi += shift;
  return res;
}

}  // namespace ruinsim
