// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ruinsim/analysis.hpp"
#include "ruinsim/estimators.hpp"
#include "ruinsim/harness/config.hpp"
#include "ruinsim/harness/experiment.hpp"
#include "ruinsim/numerics/expint.hpp"
#include "ruinsim/numerics/matrix.hpp"

namespace {

using namespace ruinsim;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

ModelParams fig2_params() {
  ModelParams p;
  p.rho = 0.99;
  p.epsilon = 0.1;
  p.light = PhaseType::exponential(3.0);
  p.heavy = ShiftedPareto(2.0, 1.0);
  return p;
}

RunOptions run_opts(double u, std::int64_t reps, std::uint64_t seed) {
  RunOptions o;
  o.u = u;
  o.n = 100;
  o.reps = reps;
  o.seed = seed;
  o.workers = resolve_workers(1);
  return o;
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

Outcome c1_constants() {
  const auto t0 = std::chrono::steady_clock::now();
  const VarianceConstants c = variance_constants(derive_rates(fig2_params()), 100);
  const double us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = round2(c.ratio_new) == 0.09 && round2(c.ratio_pk) == 0.73 &&
                  round2(c.cross_cv) == 0.12;
  return {ok, fmt("ratio_new=%.4f ratio_pk=%.4f cross_cv=%.4f (%.0f us)", c.ratio_new,
                  c.ratio_pk, c.cross_cv, us)};
}

Outcome c2_boundary() {
  const RuinModel m(fig2_params());
  const double q = m.rates().series_ratio;
  const EstimatorResult rn = crude(Series::kNew, m, run_opts(0.0, 10000, 2));
  const EstimatorResult rp = crude(Series::kPk, m, run_opts(0.0, 10000, 2));
  const double pn = assemble_psi(Series::kNew, m, 0.0, rn).estimate;
  const double pp = assemble_psi(Series::kPk, m, 0.0, rp).estimate;
  const double rho = m.rates().rho;
  const bool ok = rn.estimate == q * q && rn.std_err == 0.0 && rp.estimate == rho * rho &&
                  rp.std_err == 0.0 && std::fabs(pn - 0.99) <= 1e-12 &&
                  std::fabs(pp - 0.99) <= 1e-12;
  return {ok, fmt("R_new=%.17g (se %g) R_pk=%.17g (se %g) psi_new-rho=%.2e psi_pk-rho=%.2e",
                  rn.estimate, rn.std_err, rp.estimate, rp.std_err, pn - 0.99, pp - 0.99)};
}

Outcome c3_bounds() {
  const RuinModel m(fig2_params());
  const double q = m.rates().series_ratio;
  const int n = 100;
  const ErrorBounds b = error_bounds(m, 0.0, n);
  const double qn1 = std::pow(q, n + 1);
  const double gap = z_n(Series::kNew, m, 0.0, n) + qn1 - q * q;
  const bool ok = std::fabs(b.lower - qn1) <= 1e-15 && std::fabs(b.upper - qn1) <= 1e-15 &&
                  std::fabs(gap) <= 1e-12;
  return {ok, fmt("lower=%.17g upper=%.17g q^(n+1)=%.17g z_n(0)+q^(n+1)-q^2=%.2e", b.lower,
                  b.upper, qn1, gap)};
}

Outcome c4_closed_forms() {
  const RuinModel m(fig2_params());
  double worst = 0.0;
  for (double u : {0.5, 1.0, 5.0, 10.0}) {
    worst = std::max(worst, std::fabs(m.summand_tail(u) - m.summand_tail_quadrature(u)));
    worst = std::max(worst, std::fabs(m.leading_pair_tail(u) - m.leading_pair_tail_quadrature(u)));
  }
  const bool at_zero = m.summand_tail(0.0) == 1.0 && m.leading_pair_tail(0.0) == 1.0;
  return {m.has_closed_form() && worst <= 1e-6 && at_zero,
          fmt("max |closed - quadrature| = %.2e, ccdf_D(0)=g1(0)=1: %s", worst,
              at_zero ? "yes" : "no")};
}

Outcome c5_exact_model() {
  ModelParams p = fig2_params();
  p.heavy = PhaseType::exponential(1.0);
  const RuinModel m(p);
  const std::vector<PhaseType> parts = {p.light, PhaseType::exponential(1.0)};
  const std::vector<double> w = {1.0 - p.epsilon, p.epsilon};
  const PhaseType claims = PhaseType::mixture(w, parts);
  bool ok = !m.has_closed_form();
  double worst = 0.0;
  std::string where;
  for (double u : {0.0, 1.0, 5.0, 10.0}) {
    const double exact = ph_ruin_probability(m.rates().lambda, claims, u);
    for (const EstimatorKind& k : all_estimator_kinds()) {
      const EstimatorResult r = run_estimator(k, m, run_opts(u, 100000, 5));
      const EstimatorResult psi = assemble_psi(k.series, m, u, r);
      const double z = psi.std_err > 0.0 ? std::fabs(psi.estimate - exact) / psi.std_err
                                         : (std::fabs(psi.estimate - exact) < 1e-12 ? 0.0 : 1e9);
      if (z > worst) {
        worst = z;
        where = fmt("%s at u=%g", kind_name(k).c_str(), u);
      }
      ok = ok && z <= 3.5;
    }
  }
  return {ok, fmt("8 estimators x 4 u, worst |psi_hat - psi| = %.2f stderr (%s)", worst,
                  where.c_str())};
}

Outcome c6_ak_identity() {
  const RuinModel m(fig2_params());
  const int reps = 1000000;
  const double u = 5.0;
  double s_ak = 0.0, ss_ak = 0.0;
  double hits = 0.0;
  for (int i = 0; i < reps; ++i) {
    RngStream rng(606, static_cast<std::uint64_t>(i));
    const double v = ak_draw(Series::kNew, m, u, rng, 0).value;
    s_ak += v;
    ss_ak += v * v;
    RngStream brute(607, static_cast<std::uint64_t>(i));
    const double total =
        m.sample_discard_maximum(brute) + m.sample_summand(brute) + m.sample_summand(brute);
    hits += total > u;
  }
  const double mean_ak = s_ak / reps;
  const double var_ak = (ss_ak / reps - mean_ak * mean_ak) * reps / (reps - 1.0);
  const double p = hits / reps;
  const double se = std::sqrt(var_ak / reps + p * (1 - p) / reps);
  const double z = std::fabs(mean_ak - p) / se;
  return {z <= 3.5, fmt("AK mean %.6f vs brute %.6f, |diff| = %.2f combined stderr", mean_ak, p, z)};
}

Outcome c7_variance_reduction() {
  const RuinModel m(fig2_params());
  const RunOptions o = run_opts(1e4, 100000, 7);
  const EstimatorResult cr = crude(Series::kNew, m, o);
  const EstimatorResult cn = cv_max(Series::kNew, m, o);
  const EstimatorResult cp = cv_max(Series::kPk, m, o);
  const double v_cr = cr.std_err * cr.std_err;
  const double v_cn = cn.std_err * cn.std_err;
  const double v_cp = cp.std_err * cp.std_err;
  const double r1 = v_cn / v_cr;
  const double r2 = v_cn / v_cp;
  return {r1 < 0.5 && r2 < 0.6,
          fmt("Var(cv new)/Var(crude new)=%.3f (<0.5, asymptote 0.093); "
              "Var(cv new)/Var(cv pk)=%.3f (<0.6, asymptote 0.120)",
              r1, r2)};
}

Outcome c8_correlation() {
  const RuinModel m(fig2_params());
  bool ok = true;
  std::string detail;
  for (double u : {10.0, 100.0, 1000.0, 10000.0}) {
    const EstimatorResult a = cv_max(Series::kNew, m, run_opts(u, 10000, 8));
    const EstimatorResult b = cv_max(Series::kPk, m, run_opts(u, 10000, 8));
    ok = ok && a.corr_hat > b.corr_hat;
    detail += fmt("u=%g: %.3f vs %.3f; ", u, a.corr_hat, b.corr_hat);
  }
  return {ok, "corr new vs pk: " + detail};
}

Outcome c9_heavy_tail() {
  const RuinModel m(fig2_params());
  const double u = 1e6;
  const EstimatorResult r = cv_max(Series::kNew, m, run_opts(u, 10000, 9));
  const double psi = assemble_psi(Series::kNew, m, u, r).estimate;
  const double ratio = psi / heavy_tail_approx(m, u);
  return {ratio >= 0.7 && ratio <= 1.3,
          fmt("psi_hat/approx = %.4f (psi_hat=%.4e, approx=%.4e, beta=%.3f)", ratio, psi,
              heavy_tail_approx(m, u), r.beta_hat)};
}

Outcome c10_determinism() {
  bool ok = true;
  std::string detail;
  for (const std::string name : {"fig1", "fig2", "fig3", "fig4"}) {
    for (const ExperimentConfig& c : builtin_preset(name)) {
      std::ostringstream one, many;
      write_csv(one, run_experiment(c, {1, false}));
      write_csv(many, run_experiment(c, {8, false}));
      const bool same = one.str() == many.str();
      ok = ok && same;
      detail += c.name + (same ? " identical; " : " DIFFERS; ");
    }
  }
  return {ok, "1 vs 8 workers: " + detail};
}

double ei_oracle(double xd) {
  using mp50 = boost::multiprecision::cpp_bin_float_50;
  const mp50 x = xd;
  mp50 term = 1, sum = 0;
  for (int k = 1; k < 2000; ++k) {
    term *= x / k;
    const mp50 add = term / k;
    sum += add;
    if (add < sum * mp50("1e-45")) break;
  }
  return static_cast<double>(boost::math::constants::euler<mp50>() + log(x) + sum);
}

Outcome c11_special_functions() {
  double worst_ei = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = 1e-3 * std::pow(5e4, i / 2000.0);  // log grid over [1e-3, 50]
    const double want = ei_oracle(x);
    worst_ei = std::max(worst_ei, std::fabs(expi(x) - want) / std::fabs(want));
  }
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_exp = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    SquareMatrix a(3);
    for (int i = 0; i < 3; ++i) {
      double off = 0.0;
      for (int j = 0; j < 3; ++j)
        if (i != j) off += (a(i, j) = unif(gen));
      a(i, i) = -(off + unif(gen));
    }
    const double s = 3.0 * unif(gen), t = 3.0 * unif(gen);
    worst_exp = std::max(worst_exp, (mat_exp(a, s + t) - mat_exp(a, s) * mat_exp(a, t)).norm_inf());
  }
  return {worst_ei <= 1e-10 && worst_exp <= 1e-10,
          fmt("expi max rel err %.2e on [1e-3, 50]; semigroup max err %.2e", worst_ei, worst_exp)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"analytic constants", c1_constants},
      {"boundary exactness at u=0", c2_boundary},
      {"error-bound degeneracy at u=0", c3_bounds},
      {"closed forms vs quadrature", c4_closed_forms},
      {"exact hyperexponential oracle", c5_exact_model},
      {"AK conditional identity", c6_ak_identity},
      {"variance reduction", c7_variance_reduction},
      {"correlation ordering", c8_correlation},
      {"heavy-tail asymptote", c9_heavy_tail},
      {"determinism across workers", c10_determinism},
      {"special functions", c11_special_functions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
