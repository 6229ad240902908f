#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ruinsim/dists/geometric.hpp"
#include "ruinsim/dists/heavy.hpp"
#include "ruinsim/dists/pareto.hpp"
#include "ruinsim/dists/phase_type.hpp"
#include "ruinsim/errors.hpp"
#include "stat_helpers.hpp"

namespace ruinsim {
namespace {

using testing::dkw_band;
using testing::ks_distance;
using testing::mean_stat;

TEST(PhaseType, ErlangClosedForm) {
  const PhaseType e = PhaseType::erlang(3, 2.0);
  for (double x : {0.0, 0.3, 1.0, 4.0}) {
    const double y = 2.0 * x;
    const double ccdf = std::exp(-y) * (1.0 + y + y * y / 2.0);
    EXPECT_NEAR(e.ccdf(x), ccdf, 1e-13) << x;
    EXPECT_NEAR(e.cdf(x), 1.0 - ccdf, 1e-13) << x;
    EXPECT_NEAR(e.density(x), 2.0 * y * y / 2.0 * std::exp(-y), 1e-13) << x;
  }
  EXPECT_NEAR(e.mean(), 1.5, 1e-14);
  EXPECT_NEAR(e.second_moment(), 3.0 * 4.0 / 4.0, 1e-13);  // k(k+1)/rate^2
}

TEST(PhaseType, ExcessOfExponentialIsItself) {
  const PhaseType ex = PhaseType::exponential(3.0).excess();
  ASSERT_EQ(ex.order(), 1u);
  EXPECT_NEAR(ex.rate(), 3.0, 1e-15);
}

TEST(PhaseType, ExcessOfErlangMatchesIntegratedTail) {
  // Excess ccdf(x) = int_x^inf ccdf / mean.
  const PhaseType e = PhaseType::erlang(2, 1.0);
  const PhaseType ex = e.excess();
  for (double x : {0.0, 0.5, 2.0, 6.0}) {
    const double want = std::exp(-x) * (2.0 + x) / 2.0;
    EXPECT_NEAR(ex.ccdf(x), want, 1e-13);
  }
}

TEST(PhaseType, MixtureMean) {
  const std::vector<PhaseType> parts = {PhaseType::exponential(3.0), PhaseType::exponential(1.0)};
  const std::vector<double> w = {0.9, 0.1};
  const PhaseType m = PhaseType::mixture(w, parts);
  EXPECT_EQ(m.order(), 2u);
  EXPECT_NEAR(m.mean(), 0.9 / 3.0 + 0.1, 1e-15);
  EXPECT_NEAR(m.ccdf(2.0), 0.9 * std::exp(-6.0) + 0.1 * std::exp(-2.0), 1e-15);
}

TEST(PhaseType, SamplerMatchesCdf) {
  const PhaseType e = PhaseType::erlang(3, 2.0);
  RngStream rng(3, 0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = e.sample(rng);
  EXPECT_LT(ks_distance(xs, [&](double x) { return e.cdf(x); }), dkw_band(xs.size()));
}

TEST(PhaseType, ValidationErrors) {
  SquareMatrix t(1);
  t(0, 0) = 1.0;
  EXPECT_THROW(PhaseType({1.0}, t), ValidationError);
  t(0, 0) = -1.0;
  EXPECT_THROW(PhaseType({0.5}, t), ValidationError);
  EXPECT_THROW(PhaseType::exponential(0.0), ValidationError);
}

TEST(DefectivePhaseType, ConvolutionOfExponentialAtoms) {
  // X = atom 0.3 + 0.7 Exp(2); X + X' tail by hand.
  SquareMatrix s(1);
  s(0, 0) = -2.0;
  const DefectivePhaseType x({0.7}, s);
  EXPECT_NEAR(x.atom(), 0.3, 1e-15);
  const DefectivePhaseType xx = x.convolve_self();
  EXPECT_NEAR(xx.atom(), 0.09, 1e-15);
  for (double u : {0.0, 0.4, 3.0}) {
    const double want = 2 * 0.3 * 0.7 * std::exp(-2 * u) + 0.49 * std::exp(-2 * u) * (1 + 2 * u);
    EXPECT_NEAR(xx.ccdf(u), want, 1e-13) << u;
  }
}

TEST(ShiftedPareto, TailsAndMean) {
  const ShiftedPareto p(3.0, 2.0);
  EXPECT_NEAR(p.mean(), 1.0, 1e-15);
  EXPECT_NEAR(p.ccdf(2.0), 0.125, 1e-15);
  EXPECT_NEAR(p.excess_ccdf(2.0), 0.25, 1e-15);
  EXPECT_EQ(p.excess_ccdf(-1.0), 1.0);
  EXPECT_THROW(ShiftedPareto(1.0, 1.0), ValidationError);
  EXPECT_THROW(ShiftedPareto(2.0, 0.0), ValidationError);
}

TEST(ShiftedPareto, ExcessSamplerMatchesCdf) {
  const ShiftedPareto p(2.5, 1.0);
  RngStream rng(8, 1);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = p.excess_sample(rng);
  EXPECT_LT(ks_distance(xs, [&](double x) { return p.excess_cdf(x); }), dkw_band(xs.size()));
  std::vector<double> ys(20000);
  for (auto& y : ys) y = p.sample(rng);
  EXPECT_LT(ks_distance(ys, [&](double y) { return 1.0 - p.ccdf(y); }), dkw_band(ys.size()));
}

TEST(Geometric, PmfAndSampler) {
  const GeometricLaw g(0.25);
  EXPECT_NEAR(g.pmf(0), 0.25, 1e-16);
  EXPECT_NEAR(g.pmf(2), 0.25 * 0.75 * 0.75, 1e-16);
  EXPECT_NEAR(g.mean(), 3.0, 1e-15);
  RngStream rng(4, 4);
  std::vector<double> xs(100000);
  std::vector<int> counts(4, 0);
  for (auto& x : xs) {
    const auto k = g.sample(rng);
    x = static_cast<double>(k);
    if (k < 4) ++counts[k];
  }
  const auto st = mean_stat(xs);
  EXPECT_NEAR(st.mean, 3.0, 4.0 * st.std_err);
  for (int k = 0; k < 4; ++k) {
    const double p = g.pmf(k);
    EXPECT_NEAR(counts[k] / 1e5, p, 4.0 * std::sqrt(p * (1 - p) / 1e5)) << k;
  }
  EXPECT_EQ(GeometricLaw(1.0).sample(rng), 0u);
  EXPECT_THROW(GeometricLaw(0.0), DomainError);
  EXPECT_THROW(GeometricLaw(-0.5), DomainError);
}

TEST(HeavyComponent, ParetoAndPhaseTypeForms) {
  const HeavyComponent hp = ShiftedPareto(2.0, 1.0);
  EXPECT_NEAR(hp.mean(), 1.0, 1e-15);
  EXPECT_NEAR(hp.excess_ccdf(9.0), 0.1, 1e-15);
  ASSERT_NE(hp.pareto(), nullptr);
  const HeavyComponent he = PhaseType::exponential(0.5);
  EXPECT_NEAR(he.mean(), 2.0, 1e-15);
  EXPECT_NEAR(he.excess_ccdf(2.0), std::exp(-1.0), 1e-15);
  ASSERT_NE(he.phase_type(), nullptr);
  EXPECT_EQ(he.pareto(), nullptr);
}

}  // namespace
}  // namespace ruinsim
