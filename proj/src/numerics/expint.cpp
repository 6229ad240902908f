#include "ruinsim/numerics/expint.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

constexpr double kSeriesLimit = 40.0;

// Positive zero of Ei split as hi + lo so that the local expansion keeps full
// relative accuracy right next to the root.
constexpr double kRootHi = 0.3725074107813666;
constexpr double kRootLo = 1.3140183414386028e-17;
constexpr double kRootWindow = 0.08;

// 16-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double series(double x) {
  double term = 1.0;
  double acc = 0.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    const double contrib = term / k;
    acc += contrib;
    if (contrib < acc * 1e-17) break;
  }
  return std::numbers::egamma + std::log(x) + acc;
}

// Ei(x) = integral of e^t/t from the root to x; smooth and short, so a single
// Gauss-Legendre panel is exact to rounding.
double near_root(double x) {
  const double half = 0.5 * (x - kRootHi);
  const double mid = 0.5 * (x + kRootHi);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    const double t1 = mid + half * kGlNodes[i];
    const double t2 = mid - half * kGlNodes[i];
    acc += kGlWeights[i] * (std::exp(t1) / t1 + std::exp(t2) / t2);
  }
  const double slope_at_root = std::exp(kRootHi) / kRootHi;
  return half * acc - kRootLo * slope_at_root;
}

// Asymptotic expansion of e^{-x} Ei(x) ~ (1/x) sum k!/x^k, truncated at the
// smallest term; for x >= 40 that term is below 1e-16 relative.
double asymptotic_scaled(double x) {
  double term = 1.0;
  double acc = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next > term) break;
    term = next;
    acc += term;
    if (term < acc * 1e-17) break;
  }
  return acc / x;
}

}  // namespace

double expi(double x) {
  if (!(x > 0.0)) throw DomainError("expi: argument must be positive");
  if (std::abs(x - kRootHi) < kRootWindow) return near_root(x);
  if (x <= kSeriesLimit) return series(x);
  const double log_value = x + std::log(asymptotic_scaled(x));
  if (log_value >= std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("expi: Ei(x) overflows; use expi_scaled");
  }
  return std::exp(log_value);
}

double expi_scaled(double x) {
  if (!(x > 0.0)) throw DomainError("expi_scaled: argument must be positive");
  if (x <= kSeriesLimit) return std::exp(-x) * expi(x);
  return asymptotic_scaled(x);
}

}  // namespace ruinsim
