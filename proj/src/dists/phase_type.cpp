#include "ruinsim/dists/phase_type.hpp"

#include <algorithm>
#include <cmath>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

constexpr double kTol = 1e-12;

Vector exit_vector(const SquareMatrix& s) {
  const std::size_t n = s.order();
  Vector t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = -sum(s.row(i));
    t[i] = std::abs(v) < kTol ? 0.0 : v;
  }
  return t;
}

void check_sub_intensity(const SquareMatrix& s) {
  if (!s.all_finite()) throw ValidationError("generator has non-finite entries");
  const std::size_t n = s.order();
  const double scale = std::max(1.0, s.norm_inf());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s(i, i) < 0.0)) throw ValidationError("generator diagonal must be negative");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && s(i, j) < 0.0) throw ValidationError("generator off-diagonal must be >= 0");
    }
    if (sum(s.row(i)) > kTol * scale) throw ValidationError("generator row sums must be <= 0");
  }
}

std::vector<double> cumulative(std::span<const double> w) {
  std::vector<double> c(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (acc += w[i]);
  return c;
}

std::size_t pick(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

PhaseType::PhaseType(Vector initial, SquareMatrix generator)
    : initial_(std::move(initial)), generator_(std::move(generator)) {
  const std::size_t n = initial_.size();
  if (n == 0 || generator_.order() != n) throw ValidationError("phase-type dimension mismatch");
  if (std::any_of(initial_.begin(), initial_.end(), [](double p) { return !(p >= 0.0); })) {
    throw ValidationError("initial probabilities must be nonnegative");
  }
  if (std::abs(sum(initial_) - 1.0) > kTol) throw ValidationError("initial law must sum to 1");
  check_sub_intensity(generator_);
  exit_ = exit_vector(generator_);

  SquareMatrix neg = generator_ * -1.0;
  Vector occupation;
  try {
    occupation = solve_left(neg, initial_);
  } catch (const DomainError&) {
    throw ValidationError("generator is singular (no absorption)");
  }
  mean_ = sum(occupation);
  if (!(mean_ > 0.0) || !std::isfinite(mean_)) throw ValidationError("phase-type mean not finite");

  initial_cdf_ = cumulative(initial_);
  hold_rate_.resize(n);
  jump_cdf_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    hold_rate_[i] = -generator_(i, i);
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) w[j] = (i == j) ? 0.0 : generator_(i, j);
    w[n] = exit_[i];
    jump_cdf_[i] = cumulative(w);
  }
}

PhaseType PhaseType::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ValidationError("exponential rate must be > 0");
  return PhaseType({1.0}, SquareMatrix{{-rate}});
}

PhaseType PhaseType::erlang(std::size_t stages, double rate) {
  if (stages == 0) throw ValidationError("Erlang needs at least one stage");
  SquareMatrix t(stages);
  for (std::size_t i = 0; i < stages; ++i) {
    t(i, i) = -rate;
    if (i + 1 < stages) t(i, i + 1) = rate;
  }
  Vector pi(stages, 0.0);
  pi[0] = 1.0;
  return PhaseType(std::move(pi), std::move(t));
}

PhaseType PhaseType::mixture(std::span<const double> weights, std::span<const PhaseType> parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw ValidationError("mixture needs one weight per component");
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.order();
  Vector pi(total, 0.0);
  SquareMatrix t(total);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto& p = parts[c];
    for (std::size_t i = 0; i < p.order(); ++i) {
      pi[offset + i] = weights[c] * p.initial()[i];
      for (std::size_t j = 0; j < p.order(); ++j) t(offset + i, offset + j) = p.generator()(i, j);
    }
    offset += p.order();
  }
  return PhaseType(std::move(pi), std::move(t));
}

double PhaseType::density(double x) const {
  if (x < 0.0) return 0.0;
  if (is_exponential()) return rate() * std::exp(-rate() * x);
  return dot(row_times(initial_, mat_exp(generator_, x)), exit_);
}

double PhaseType::ccdf(double x) const {
  if (x <= 0.0) return 1.0;
  if (is_exponential()) return std::exp(-rate() * x);
  return std::clamp(sum(row_times(initial_, mat_exp(generator_, x))), 0.0, 1.0);
}

double PhaseType::cdf(double x) const { return 1.0 - ccdf(x); }

double PhaseType::second_moment() const {
  SquareMatrix neg = generator_ * -1.0;
  const Vector occupation = solve_left(neg, initial_);
  const Vector ones(order(), 1.0);
  const Vector expected_remaining = solve(neg, ones);
  return 2.0 * dot(occupation, expected_remaining);
}

PhaseType PhaseType::excess() const {
  SquareMatrix neg = generator_ * -1.0;
  Vector nu = solve_left(neg, initial_);
  for (auto& v : nu) v /= mean_;
  // Renormalize away rounding so the validation tolerance holds.
  const double s = sum(nu);
  for (auto& v : nu) v = std::max(0.0, v / s);
  return PhaseType(std::move(nu), generator_);
}

double PhaseType::sample(RngStream& rng) const {
  if (is_exponential()) return rng.exponential() / rate();
  const std::size_t n = order();
  std::size_t state = pick(initial_cdf_, rng.uniform());
  double elapsed = 0.0;
  while (state < n) {
    elapsed += rng.exponential() / hold_rate_[state];
    state = pick(jump_cdf_[state], rng.uniform());
  }
  return elapsed;
}

DefectivePhaseType::DefectivePhaseType(Vector alpha, SquareMatrix generator)
    : alpha_(std::move(alpha)), generator_(std::move(generator)) {
  if (alpha_.empty() || generator_.order() != alpha_.size()) {
    throw ValidationError("defective phase-type dimension mismatch");
  }
  if (std::any_of(alpha_.begin(), alpha_.end(), [](double p) { return !(p >= 0.0); })) {
    throw ValidationError("initial masses must be nonnegative");
  }
  const double mass = sum(alpha_);
  if (mass > 1.0 + kTol) throw ValidationError("initial masses exceed 1");
  check_sub_intensity(generator_);
  exit_ = exit_vector(generator_);
  atom_ = std::max(0.0, 1.0 - mass);
}

double DefectivePhaseType::density(double x) const {
  if (x < 0.0) return 0.0;
  if (order() == 1) return alpha_[0] * exit_[0] * std::exp(generator_(0, 0) * x);
  return dot(row_times(alpha_, mat_exp(generator_, x)), exit_);
}

double DefectivePhaseType::ccdf(double x) const {
  if (x < 0.0) return 1.0;
  if (order() == 1) return alpha_[0] * std::exp(generator_(0, 0) * x);
  return std::max(0.0, sum(row_times(alpha_, mat_exp(generator_, x))));
}

DefectivePhaseType DefectivePhaseType::convolve_self() const {
  // First copy runs in block 1; on exit it either starts the second copy
  // (mass alpha) or absorbs (mass atom). If the first copy is zero the
  // second starts immediately.
  const std::size_t p = order();
  Vector beta(2 * p, 0.0);
  SquareMatrix s(2 * p);
  for (std::size_t i = 0; i < p; ++i) {
    beta[i] = alpha_[i];
    beta[p + i] = atom_ * alpha_[i];
    for (std::size_t j = 0; j < p; ++j) {
      s(i, j) = generator_(i, j);
      s(p + i, p + j) = generator_(i, j);
      s(i, p + j) = exit_[i] * alpha_[j];
    }
  }
  return DefectivePhaseType(std::move(beta), std::move(s));
}

}  // namespace ruinsim
