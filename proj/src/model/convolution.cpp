#include "ruinsim/model/convolution.hpp"

#include <cmath>

#include "ruinsim/errors.hpp"
#include "ruinsim/numerics/expint.hpp"

namespace ruinsim {
namespace {

// Past this point the asymptotic series is exact to rounding; below it the
// upward recursion from e^{-x} Ei(x) loses at most x^{m-1} ulps.
double asymptotic_threshold(int m) { return 40.0 + 8.0 * (m - 1); }

}  // namespace

double scaled_expint_antiderivative(int m, double x) {
  if (m < 0) throw DomainError("scaled_expint_antiderivative: negative order");
  if (!(x > 0.0)) throw DomainError("scaled_expint_antiderivative: x must be positive");
  if (m == 0) return 1.0;
  if (x >= asymptotic_threshold(m)) {
    // x^{-m} sum_j (m)_j x^{-j}
    double term = 1.0;
    double acc = 1.0;
    for (int j = 0; j < 400; ++j) {
      const double next = term * (m + j) / x;
      if (next > term) break;
      term = next;
      acc += term;
      if (term < acc * 1e-17) break;
    }
    return acc * std::pow(x, -m);
  }
  double f = expi_scaled(x);
  for (int j = 2; j <= m; ++j) f = (f - std::pow(x, -(j - 1))) / (j - 1);
  return f;
}

double scaled_expint_difference(int m, double x) {
  if (m < 1) throw DomainError("scaled_expint_difference: order must be >= 1");
  if (!(x > 0.0)) throw DomainError("scaled_expint_difference: x must be positive");
  if (x >= asymptotic_threshold(m)) {
    // x^{1-m} sum_{j>=1} [(m)_j - (m-1)_j] x^{-j}, using
    // (m)_j - (m-1)_j = (m)_j j / (m + j - 1).
    double rising = 1.0;  // (m)_j / x^j
    double acc = 0.0;
    double prev = INFINITY;
    for (int j = 1; j < 400; ++j) {
      rising *= (m + j - 1) / x;
      const double term = rising * j / (m + j - 1);
      if (term > prev) break;
      acc += term;
      prev = term;
      if (term < acc * 1e-17) break;
    }
    return acc * std::pow(x, 1 - m);
  }
  return x * scaled_expint_antiderivative(m, x) - scaled_expint_antiderivative(m - 1, x);
}

ExpParetoConvolution::ExpParetoConvolution(double rho_d, double decay, double scale,
                                           int tail_index)
    : rho_d_(rho_d), decay_(decay), scale_(scale), tail_index_(tail_index) {
  if (!(rho_d >= 0.0 && rho_d < 1.0)) throw DomainError("rho_d must lie in [0, 1)");
  if (!(decay > 0.0) || !(scale > 0.0)) throw DomainError("decay and scale must be positive");
  if (tail_index < 1 || tail_index > kMaxTailIndex) {
    throw DomainError("closed form needs integer Pareto tail index in [1, 4]");
  }
  k_ = decay_ * scale_;
  k_pow_ = std::pow(k_, tail_index_);
  f_m_k_ = scaled_expint_antiderivative(tail_index_, k_);
  f_m1_k_ = scaled_expint_antiderivative(tail_index_ - 1, k_);
}

ExpParetoConvolution::Pieces ExpParetoConvolution::pieces(double u) const {
  const double w = 1.0 + u / scale_;
  Pieces p;
  p.pareto_tail = std::pow(w, -tail_index_);
  p.light_tail = std::exp(-decay_ * u);
  p.exp_conv = k_pow_ * (scaled_expint_antiderivative(tail_index_, k_ * w) - p.light_tail * f_m_k_);
  return p;
}

double ExpParetoConvolution::summand_tail(double u) const {
  if (u <= 0.0) return 1.0;
  const Pieces p = pieces(u);
  const double atom = 1.0 - rho_d_;
  return atom * p.pareto_tail + rho_d_ * p.exp_conv + rho_d_ * p.light_tail;
}

double ExpParetoConvolution::leading_pair_tail(double u) const {
  if (u <= 0.0) return 1.0;
  const Pieces p = pieces(u);
  const double w = 1.0 + u / scale_;
  // int_0^u c^2 x e^{-cx} T(u - x) dx
  const double erlang_conv =
      k_pow_ * (scaled_expint_difference(tail_index_, k_ * w) -
                p.light_tail * (k_ * w * f_m_k_ - f_m1_k_));
  const double atom = 1.0 - rho_d_;
  const double cross = 2.0 * atom * rho_d_;
  const double both = rho_d_ * rho_d_;
  return atom * atom * p.pareto_tail + cross * p.exp_conv + both * erlang_conv +
         cross * p.light_tail + both * (1.0 + decay_ * u) * p.light_tail;
}

}  // namespace ruinsim
