#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ruinsim/errors.hpp"
#include "ruinsim/model/model.hpp"
#include "stat_helpers.hpp"

namespace ruinsim {
namespace {

ModelParams fig2_params() {
  ModelParams p;
  p.rho = 0.99;
  p.epsilon = 0.1;
  p.light = PhaseType::exponential(3.0);
  p.heavy = ShiftedPareto(2.0, 1.0);
  return p;
}

ModelParams pareto_params(double a, double eps, double rho) {
  ModelParams p;
  p.rho = rho;
  p.epsilon = eps;
  p.light = PhaseType::exponential(3.0);
  p.heavy = ShiftedPareto(a, 1.0);
  return p;
}

TEST(DeriveRates, Fig2Parameters) {
  const DerivedRates r = derive_rates(fig2_params());
  EXPECT_NEAR(r.lambda, 2.475, 1e-14);
  EXPECT_NEAR(r.rho_discard, 0.7425, 1e-14);
  EXPECT_NEAR(r.heavy_load, 0.2475, 1e-14);
  EXPECT_NEAR(r.rho, 0.99, 1e-15);
  EXPECT_NEAR(r.series_ratio, 0.2475 / 0.2575, 1e-14);
  EXPECT_NEAR(r.series_ratio, 0.96116505, 1e-8);
  EXPECT_NEAR(r.geometric_success, 0.03883495, 1e-8);
  EXPECT_NEAR(r.series_ratio + r.geometric_success, 1.0, 1e-15);
  ASSERT_EQ(r.ladder_initial.size(), 1u);
  EXPECT_NEAR(r.ladder_initial[0], 0.7425, 1e-14);
  EXPECT_NEAR(r.ladder_generator(0, 0), -3.0 * 0.2575, 1e-14);
}

TEST(DeriveRates, LambdaGivenDirectly) {
  ModelParams p = fig2_params();
  p.rho.reset();
  p.lambda = 1.0;
  const DerivedRates r = derive_rates(p);
  EXPECT_NEAR(r.rho, 0.9 / 3.0 + 0.1, 1e-15);
}

TEST(DeriveRates, Errors) {
  ModelParams both = fig2_params();
  both.lambda = 1.0;
  EXPECT_THROW(derive_rates(both), ValidationError);
  ModelParams neither = fig2_params();
  neither.rho.reset();
  EXPECT_THROW(derive_rates(neither), ValidationError);
  ModelParams unstable = fig2_params();
  unstable.rho = 1.0;
  EXPECT_THROW(derive_rates(unstable), ValidationError);
  ModelParams big_lambda = fig2_params();
  big_lambda.rho.reset();
  big_lambda.lambda = 2.5;  // rho = 1
  EXPECT_THROW(derive_rates(big_lambda), ValidationError);
  ModelParams bad_eps = fig2_params();
  bad_eps.epsilon = 1.0;
  EXPECT_THROW(derive_rates(bad_eps), ValidationError);
  EXPECT_THROW(ShiftedPareto(1.0, 1.0), ValidationError);  // a <= 1: infinite mean
}

TEST(PsiDiscard, ExponentialClosedForm) {
  const RuinModel m(fig2_params());
  const double rd = 0.7425;
  for (double u : {0.0, 0.5, 2.0, 10.0}) {
    EXPECT_NEAR(m.psi_discard(u), rd * std::exp(-3.0 * (1.0 - rd) * u), 1e-14) << u;
  }
  EXPECT_THROW(m.psi_discard(-1.0), DomainError);
}

TEST(PhRuinProbability, ExponentialClaims) {
  // rho e^{-(mu - lambda) u}
  const PhaseType claims = PhaseType::exponential(2.0);
  for (double u : {0.0, 1.0, 4.0}) {
    EXPECT_NEAR(ph_ruin_probability(1.5, claims, u), 0.75 * std::exp(-0.5 * u), 1e-14);
  }
}

// Random-walk simulation of the discard (light-only) surplus: an oracle for
// the ladder phase-type formula that shares no code with it.
TEST(PsiDiscard, ErlangLightMatchesRandomWalk) {
  ModelParams p;
  p.lambda = 2.0;
  p.epsilon = 0.1;
  p.light = PhaseType::erlang(2, 6.0);  // mean 1/3, rho_d = 0.6
  p.heavy = ShiftedPareto(2.0, 1.0);
  const RuinModel m(p);
  const double lambda_d = 1.8;
  EXPECT_NEAR(m.psi_discard(0.0), 0.6, 1e-13);

  const int paths = 60000;
  for (double u : {0.5, 2.0}) {
    RngStream rng(17, static_cast<std::uint64_t>(u * 10));
    int ruined = 0;
    for (int i = 0; i < paths; ++i) {
      double s = 0.0;
      while (s > -40.0) {
        s += (rng.exponential() + rng.exponential()) / 6.0 - rng.exponential() / lambda_d;
        if (s > u) {
          ++ruined;
          break;
        }
      }
    }
    const double phat = static_cast<double>(ruined) / paths;
    const double se = std::sqrt(phat * (1 - phat) / paths);
    EXPECT_NEAR(m.psi_discard(u), phat, 4.0 * se) << u;
  }
}

TEST(DiscardMaximum, SamplerMatchesLaw) {
  const RuinModel m(fig2_params());
  RngStream rng(21, 0);
  const int n = 100000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = m.sample_discard_maximum(rng);
  for (double t : {0.0, 0.5, 2.0, 5.0}) {
    double hits = 0;
    for (double x : xs) hits += x > t;
    const double p = m.psi_discard(t);
    EXPECT_NEAR(hits / n, p, 4.0 * std::sqrt(p * (1 - p) / n)) << t;
  }
}

struct OracleCase {
  double a, eps, rho, u, ccdf_d, g1;
};

// 40-digit mpmath quadrature of the defining convolutions (independent of
// the Ei-based closed forms).
const OracleCase kOracle[] = {
    {2, 0.1, 0.99, 0.5, 0.86669593867541474182, 0.94891186221305516336},
    {2, 0.1, 0.99, 1.0, 0.73671154253483863127, 0.87242456474365700025},
    {2, 0.1, 0.99, 5.0, 0.22281489141354176495, 0.3085179598037844216},
    {2, 0.1, 0.99, 10.0, 0.10230677989801776579, 0.11881614107269973914},
    {2, 0.1, 0.99, 100.0, 0.0099977259573199242168, 0.010096404670725170923},
    {3, 0.7, 0.9, 0.5, 0.50180188580974111148, 0.55458220153629399075},
    {3, 0.7, 0.9, 5.0, 0.028784947244239397934, 0.029866732408999560376},
    {3, 0.7, 0.9, 100.0, 0.000098193405743561939717, 0.000098357620592585139195},
    {5, 0.1, 0.7, 1.0, 0.34293826052067080812, 0.57539358139913180619},
    {5, 0.1, 0.7, 10.0, 0.00012403431087810088412, 0.00034712574567254324803},
    {5, 0.1, 0.7, 100.0, 9.8529154796361808608e-9, 1.010387461087029768e-8},
};

TEST(ClosedForms, MatchHighPrecisionOracle) {
  for (const auto& c : kOracle) {
    const RuinModel m(pareto_params(c.a, c.eps, c.rho));
    ASSERT_TRUE(m.has_closed_form());
    EXPECT_NEAR(m.summand_tail(c.u), c.ccdf_d, 1e-12 * c.ccdf_d) << c.a << " " << c.u;
    EXPECT_NEAR(m.leading_pair_tail(c.u), c.g1, 1e-12 * c.g1) << c.a << " " << c.u;
  }
}

TEST(ClosedForms, QuadraturePathAgrees) {
  for (double a : {2.0, 3.0, 4.0, 5.0}) {
    const RuinModel m(pareto_params(a, 0.1, 0.99));
    ASSERT_TRUE(m.has_closed_form());
    for (double u : {0.5, 1.0, 5.0, 10.0, 300.0}) {
      EXPECT_NEAR(m.summand_tail(u), m.summand_tail_quadrature(u), 1e-9) << a << " " << u;
      EXPECT_NEAR(m.leading_pair_tail(u), m.leading_pair_tail_quadrature(u), 1e-9)
          << a << " " << u;
    }
    EXPECT_EQ(m.summand_tail(0.0), 1.0);
    EXPECT_EQ(m.leading_pair_tail(0.0), 1.0);
  }
}

TEST(ClosedForms, NotUsedOutsideTheirScope) {
  EXPECT_FALSE(RuinModel(pareto_params(2.5, 0.1, 0.9)).has_closed_form());
  EXPECT_FALSE(RuinModel(pareto_params(6.0, 0.1, 0.9)).has_closed_form());
  ModelParams p = pareto_params(2.0, 0.1, 0.9);
  p.light = PhaseType::erlang(2, 6.0);
  EXPECT_FALSE(RuinModel(p).has_closed_form());
}

TEST(SummandTail, MatchesSampling) {
  // Non-integer shape: generic quadrature path; D sampled directly.
  const RuinModel m(pareto_params(2.5, 0.2, 0.9));
  RngStream rng(5, 5);
  const int n = 100000;
  std::vector<double> d(n), pair(n);
  for (int i = 0; i < n; ++i) {
    d[i] = m.sample_summand(rng);
    pair[i] = d[i] + m.sample_discard_maximum(rng);
  }
  for (double u : {0.5, 3.0}) {
    double hd = 0, hp = 0;
    for (int i = 0; i < n; ++i) {
      hd += d[i] > u;
      hp += pair[i] > u;
    }
    const double pd = m.summand_tail(u);
    const double pp = m.leading_pair_tail(u);
    EXPECT_NEAR(hd / n, pd, 4.0 * std::sqrt(pd * (1 - pd) / n)) << u;
    EXPECT_NEAR(hp / n, pp, 4.0 * std::sqrt(pp * (1 - pp) / n)) << u;
  }
}

TEST(SummandTail, FastPathMatchesQuadrature) {
  const RuinModel m(pareto_params(2.5, 0.1, 0.99));
  ASSERT_FALSE(m.has_closed_form());
  for (double u : {0.0, 0.01, 0.7, 4.2, 55.0, 2000.0, 5e4}) {
    const double want = m.summand_tail_quadrature(u);
    EXPECT_NEAR(m.summand_tail_fast(u), want, 1e-6 * want) << u;
  }
  const RuinModel closed(fig2_params());
  EXPECT_EQ(closed.summand_tail_fast(3.0), closed.summand_tail(3.0));
}

TEST(MixtureExcess, TailAndSampler) {
  const RuinModel m(fig2_params());
  const double w = m.mixture_light_weight();
  EXPECT_NEAR(w, 0.75, 1e-14);
  for (double u : {0.0, 1.0, 10.0}) {
    const double want = w * std::exp(-3.0 * u) + (1 - w) / (1.0 + u);
    EXPECT_NEAR(m.mixture_excess_ccdf(u), want, 1e-15);
  }
  RngStream rng(12, 0);
  std::vector<double> xs(30000);
  for (auto& x : xs) x = m.sample_mixture_excess(rng);
  EXPECT_LT(testing::ks_distance(xs, [&](double x) { return 1.0 - m.mixture_excess_ccdf(x); }),
            testing::dkw_band(xs.size()));
}

TEST(SeriesDraws, StructureAndCounts) {
  const RuinModel m(fig2_params());
  RngStream rng(1, 2);
  const int n = 40000;
  std::vector<double> g(n), k(n);
  for (int i = 0; i < n; ++i) {
    const SeriesDraw a = m.sample_v_new(rng);
    ASSERT_GT(a.value, 0.0);
    ASSERT_LE(a.max_component, a.value);
    g[i] = static_cast<double>(a.count);
    const SeriesDraw b = m.sample_v_pk(rng);
    ASSERT_GT(b.value, 0.0);
    ASSERT_LE(b.max_component, b.value);
    k[i] = static_cast<double>(b.count);
  }
  const auto sg = testing::mean_stat(g);
  const auto sk = testing::mean_stat(k);
  EXPECT_NEAR(sg.mean, 0.2475 / 0.01, 4.0 * sg.std_err);  // q / r = heavy_load / (1 - rho)
  EXPECT_NEAR(sk.mean, 99.0, 4.0 * sk.std_err);
}

}  // namespace
}  // namespace ruinsim
