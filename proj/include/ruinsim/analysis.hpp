#pragma once

#include "ruinsim/model/model.hpp"

namespace ruinsim {

enum class Series { kNew, kPk };

/// Expected value of the max-type control of order n. New series:
/// r * sum_{k=2}^n q^k (1 - F_He(u)^k); PK series: the same with
/// (1 - rho, rho, F_Ce).
double z_n(Series series, const RuinModel& model, double u, int n);

struct ErrorBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bracket for R(u) - z_n(u) in the discard series (n >= 2).
ErrorBounds error_bounds(const RuinModel& model, double u, int n);

/// 1 - (n+1) q^n + n q^{n+1}: the factor by which the order-n approximation
/// undershoots the heavy-tail asymptote.
double tail_factor(const DerivedRates& rates, int n);
double psi_n_asymptote(const RuinModel& model, double u, int n);

/// heavy_load / (1 - rho) * P(H_e > u).
double heavy_tail_approx(const RuinModel& model, double u);

/// Explicit (non-simulated) part of psi for each series:
/// new: r psi_d(u) + r q G1(u); PK: (1 - rho) rho P(C_e > u).
double explicit_part(Series series, const RuinModel& model, double u);

/// Large-u variance constants of the max-type control variate.
struct VarianceConstants {
  double ratio_new = 0.0;   // Var(cv new) / Var(crude new)
  double ratio_pk = 0.0;    // Var(cv pk) / Var(crude pk)
  double cross_cv = 0.0;    // Var(cv new) / Var(cv pk)
  double cross_raw = 0.0;   // Var(crude new) / Var(crude pk) after rescaling
};

VarianceConstants variance_constants(const DerivedRates& rates, int n);

/// Asymptotic variance of the control-variate estimator of R(u) with R
/// replications, as a function of u via P(H_e > u).
double asym_var_new(const RuinModel& model, int n, double u, long long reps);
double asym_var_pk(const RuinModel& model, int n, double u, long long reps);

}  // namespace ruinsim
