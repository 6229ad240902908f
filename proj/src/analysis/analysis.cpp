#include "ruinsim/analysis.hpp"

#include <cmath>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

void require_order(int n, int min_n, const char* what) {
  if (n < min_n) throw DomainError(std::string(what) + ": truncation order too small");
}

// r * sum_{k=2}^n w^k (1 - F^k), with 1 - F^k evaluated from the tail so
// it keeps relative accuracy when F is close to 1.
double geometric_max_sum(double weight, double ratio, double tail, int n) {
  const double log_cdf = std::log1p(-tail);
  double acc = 0.0;
  double pw = ratio;
  for (int k = 2; k <= n; ++k) {
    pw *= ratio;
    const double miss = tail >= 1.0 ? 1.0 : -std::expm1(static_cast<double>(k) * log_cdf);
    acc += pw * miss;
  }
  return weight * acc;
}

}  // namespace

double z_n(Series series, const RuinModel& model, double u, int n) {
  require_order(n, 1, "z_n");
  if (u < 0.0) throw DomainError("z_n needs u >= 0");
  const DerivedRates& r = model.rates();
  if (series == Series::kNew) {
    return geometric_max_sum(r.geometric_success, r.series_ratio,
                             model.params().heavy.excess_ccdf(u), n);
  }
  return geometric_max_sum(1.0 - r.rho, r.rho, model.mixture_excess_ccdf(u), n);
}

ErrorBounds error_bounds(const RuinModel& model, double u, int n) {
  require_order(n, 2, "error_bounds");
  if (u < 0.0) throw DomainError("error_bounds needs u >= 0");
  const double q = model.rates().series_ratio;
  const double qn1 = std::pow(q, n + 1);
  const double qf = q * model.params().heavy.excess_cdf(u);
  ErrorBounds b;
  b.lower = qn1 * model.leading_pair_tail(u);
  b.upper = qn1 + (1.0 - q) * qf * qf * (1.0 - std::pow(qf, n - 1)) / (1.0 - qf);
  return b;
}

double tail_factor(const DerivedRates& rates, int n) {
  require_order(n, 1, "tail_factor");
  const double q = rates.series_ratio;
  const double nn = static_cast<double>(n);
  return 1.0 - (nn + 1.0) * std::pow(q, n) + nn * std::pow(q, n + 1);
}

double heavy_tail_approx(const RuinModel& model, double u) {
  if (u < 0.0) throw DomainError("heavy_tail_approx needs u >= 0");
  const DerivedRates& r = model.rates();
  return r.heavy_load / (1.0 - r.rho) * model.params().heavy.excess_ccdf(u);
}

double psi_n_asymptote(const RuinModel& model, double u, int n) {
  return tail_factor(model.rates(), n) * heavy_tail_approx(model, u);
}

double explicit_part(Series series, const RuinModel& model, double u) {
  if (u < 0.0) throw DomainError("explicit_part needs u >= 0");
  const DerivedRates& r = model.rates();
  if (series == Series::kNew) {
    return r.geometric_success *
           (model.psi_discard(u) + r.series_ratio * model.leading_pair_tail(u));
  }
  return (1.0 - r.rho) * r.rho * model.mixture_excess_ccdf(u);
}

VarianceConstants variance_constants(const DerivedRates& rates, int n) {
  require_order(n, 1, "variance_constants");
  const double q = rates.series_ratio;
  const double r = rates.geometric_success;
  const double rho = rates.rho;
  const double nn = static_cast<double>(n);
  const double new_growth = 1.0 + nn * r;
  const double pk_growth = 1.0 + nn * (1.0 - rho);
  VarianceConstants c;
  c.ratio_new = std::pow(q, n - 1) * new_growth / (1.0 + r);
  c.ratio_pk = std::pow(rho, n - 1) * pk_growth / (2.0 - rho);
  c.cross_cv = std::pow(q / rho, n + 2) * new_growth / pk_growth;
  c.cross_raw = std::pow(q / rho, n - 1) * new_growth / pk_growth * (2.0 - rho) / (1.0 + r);
  return c;
}

double asym_var_new(const RuinModel& model, int n, double u, long long reps) {
  require_order(n, 1, "asym_var_new");
  if (reps < 1) throw DomainError("asym_var_new needs reps >= 1");
  const DerivedRates& rt = model.rates();
  const double q = rt.series_ratio;
  const double r = rt.geometric_success;
  return std::pow(q, n + 3) * (1.0 + n * r) / r * model.params().heavy.excess_ccdf(u) /
         static_cast<double>(reps);
}

double asym_var_pk(const RuinModel& model, int n, double u, long long reps) {
  require_order(n, 1, "asym_var_pk");
  if (reps < 1) throw DomainError("asym_var_pk needs reps >= 1");
  const DerivedRates& rt = model.rates();
  const double rho = rt.rho;
  return std::pow(rho, n + 3) * (1.0 + n * (1.0 - rho)) / (1.0 - rho) * (rt.heavy_load / rho) *
         model.params().heavy.excess_ccdf(u) / static_cast<double>(reps);
}

}  // namespace ruinsim
