#include "ruinsim/model/model.hpp"

#include <algorithm>
#include <cmath>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

struct Ladder {
  Vector initial;
  SquareMatrix generator;
};

Ladder ladder_representation(double lambda, const PhaseType& claims) {
  SquareMatrix neg = claims.generator() * -1.0;
  Vector alpha = solve_left(neg, claims.initial());
  for (auto& v : alpha) v = std::max(0.0, v * lambda);
  SquareMatrix q = claims.generator();
  const Vector& t = claims.exit();
  for (std::size_t i = 0; i < q.order(); ++i)
    for (std::size_t j = 0; j < q.order(); ++j) q(i, j) += t[i] * alpha[j];
  return {std::move(alpha), std::move(q)};
}

std::optional<int> integer_tail_index(const HeavyComponent& heavy) {
  const ShiftedPareto* p = heavy.pareto();
  if (p == nullptr) return std::nullopt;
  const double m = p->shape() - 1.0;
  if (m != std::round(m)) return std::nullopt;
  const int mi = static_cast<int>(m);
  if (mi < 1 || mi > ExpParetoConvolution::kMaxTailIndex) return std::nullopt;
  return mi;
}

constexpr double kTailTableEnd = 1e4;

}  // namespace

DerivedRates derive_rates(const ModelParams& params) {
  if (params.lambda.has_value() == params.rho.has_value()) {
    throw ValidationError("exactly one of lambda and rho must be given");
  }
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
  DerivedRates r;
  r.epsilon = params.epsilon;
  r.light_mean = params.light.mean();
  r.heavy_mean = params.heavy.mean();
  const double mean_claim = (1.0 - r.epsilon) * r.light_mean + r.epsilon * r.heavy_mean;
  if (params.rho) {
    if (!(*params.rho > 0.0)) throw ValidationError("rho must be positive");
    if (!(*params.rho < 1.0)) throw ValidationError("rho must be < 1 (net profit condition)");
    r.lambda = *params.rho / mean_claim;
  } else {
    if (!(*params.lambda > 0.0) || !std::isfinite(*params.lambda)) {
      throw ValidationError("lambda must be positive");
    }
    r.lambda = *params.lambda;
  }
  r.rho_discard = (1.0 - r.epsilon) * r.lambda * r.light_mean;
  r.heavy_load = r.epsilon * r.lambda * r.heavy_mean;
  r.rho = r.rho_discard + r.heavy_load;
  if (!(r.rho < 1.0)) throw ValidationError("rho must be < 1 (net profit condition)");
  r.series_ratio = r.heavy_load / (1.0 - r.rho_discard);
  r.geometric_success = (1.0 - r.rho) / (1.0 - r.rho_discard);
  Ladder ladder = ladder_representation((1.0 - r.epsilon) * r.lambda, params.light);
  r.ladder_initial = std::move(ladder.initial);
  r.ladder_generator = std::move(ladder.generator);
  return r;
}

double ph_ruin_probability(double lambda, const PhaseType& claims, double u) {
  if (u < 0.0) throw DomainError("ruin probability needs u >= 0");
  const Ladder ladder = ladder_representation(lambda, claims);
  if (ladder.initial.size() == 1) {
    return ladder.initial[0] * std::exp(ladder.generator(0, 0) * u);
  }
  return sum(row_times(ladder.initial, mat_exp(ladder.generator, u)));
}

RuinModel::RuinModel(ModelParams params, QuadratureSpec quadrature)
    : params_(std::move(params)),
      rates_(derive_rates(params_)),
      quadrature_(quadrature),
      light_excess_(params_.light.excess()),
      discard_max_(rates_.ladder_initial, rates_.ladder_generator),
      discard_pair_(discard_max_.convolve_self()),
      ladder_count_(1.0 - rates_.rho_discard),
      new_count_(rates_.geometric_success),
      pk_count_(1.0 - rates_.rho) {
  if (auto m = integer_tail_index(params_.heavy); m && params_.light.is_exponential()) {
    const double decay = params_.light.rate() * (1.0 - rates_.rho_discard);
    closed_form_ = std::make_shared<ExpParetoConvolution>(rates_.rho_discard, decay,
                                                          params_.heavy.pareto()->scale(), *m);
  }
}

double RuinModel::psi_discard(double u) const {
  if (u < 0.0) throw DomainError("psi_discard needs u >= 0");
  return discard_max_.ccdf(u);
}

double RuinModel::sample_discard_maximum(RngStream& rng) const {
  const std::uint64_t ladders = ladder_count_.sample(rng);
  double total = 0.0;
  for (std::uint64_t i = 0; i < ladders; ++i) total += light_excess_.sample(rng);
  return total;
}

double RuinModel::sample_summand(RngStream& rng) const {
  const double m = sample_discard_maximum(rng);
  return m + sample_heavy_excess(rng);
}

AtomicLaw RuinModel::discard_law() const {
  return {discard_max_.atom(), [this](double x) { return discard_max_.density(x); },
          [this](double x) { return discard_max_.ccdf(x); }};
}

double RuinModel::summand_tail(double u) const {
  if (u <= 0.0) return 1.0;
  if (closed_form_) return closed_form_->summand_tail(u);
  return summand_tail_quadrature(u);
}

double RuinModel::summand_tail_quadrature(double u) const {
  if (u <= 0.0) return 1.0;
  const auto tail_b = [this](double x) { return params_.heavy.excess_ccdf(x); };
  return std::min(1.0, tail_of_sum(discard_law(), tail_b, u, quadrature_));
}

double RuinModel::summand_tail_fast(double x) const {
  if (x <= 0.0) return 1.0;
  if (closed_form_) return closed_form_->summand_tail(x);
  LazyTable& lazy = *tail_table_;
  std::call_once(lazy.once, [this, &lazy] {
    lazy.table = std::make_unique<TailTable>(
        [this](double y) { return summand_tail_quadrature(y); }, kTailTableEnd);
  });
  return (*lazy.table)(x);
}

double RuinModel::leading_pair_tail(double u) const {
  if (u <= 0.0) return 1.0;
  if (closed_form_) return closed_form_->leading_pair_tail(u);
  return leading_pair_tail_quadrature(u);
}

double RuinModel::leading_pair_tail_quadrature(double u) const {
  if (u <= 0.0) return 1.0;
  const AtomicLaw pair{discard_pair_.atom(), [this](double x) { return discard_pair_.density(x); },
                       [this](double x) { return discard_pair_.ccdf(x); }};
  const auto tail_b = [this](double x) { return params_.heavy.excess_ccdf(x); };
  return std::min(1.0, tail_of_sum(pair, tail_b, u, quadrature_));
}

double RuinModel::mixture_excess_ccdf(double u) const {
  if (u <= 0.0) return 1.0;
  return (rates_.rho_discard * light_excess_.ccdf(u) +
          rates_.heavy_load * params_.heavy.excess_ccdf(u)) /
         (rates_.rho_discard + rates_.heavy_load);
}

double RuinModel::sample_mixture_excess(RngStream& rng) const {
  if (rng.uniform() < mixture_light_weight()) return light_excess_.sample(rng);
  return sample_heavy_excess(rng);
}

SeriesDraw RuinModel::sample_v_new(RngStream& rng) const {
  SeriesDraw d;
  d.count = new_count_.sample(rng);
  d.value = sample_discard_maximum(rng);
  for (std::uint64_t k = 0; k < d.count + 2; ++k) {
    const double m = sample_discard_maximum(rng);
    const double h = sample_heavy_excess(rng);
    d.value += m + h;
    d.max_component = std::max(d.max_component, h);
  }
  return d;
}

SeriesDraw RuinModel::sample_v_pk(RngStream& rng) const {
  SeriesDraw d;
  d.count = pk_count_.sample(rng);
  for (std::uint64_t k = 0; k < d.count + 2; ++k) {
    const double c = sample_mixture_excess(rng);
    d.value += c;
    d.max_component = std::max(d.max_component, c);
  }
  return d;
}

}  // namespace ruinsim
