#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>

#include "ruinsim/dists/geometric.hpp"
#include "ruinsim/dists/heavy.hpp"
#include "ruinsim/dists/phase_type.hpp"
#include "ruinsim/model/convolution.hpp"
#include "ruinsim/numerics/quadrature.hpp"
#include "ruinsim/numerics/tail_table.hpp"

namespace ruinsim {

/// Cramer-Lundberg model with unit premium rate and claims drawn from
/// (1 - epsilon) * light + epsilon * heavy. Exactly one of lambda (arrival
/// rate) and rho (target traffic intensity) must be given.
struct ModelParams {
  std::optional<double> lambda;
  std::optional<double> rho;
  double epsilon = 0.1;
  PhaseType light = PhaseType::exponential(3.0);
  HeavyComponent heavy = ShiftedPareto(2.0, 1.0);
};

struct DerivedRates {
  double lambda = 0.0;
  double epsilon = 0.0;
  double light_mean = 0.0;
  double heavy_mean = 0.0;
  double rho = 0.0;                // total traffic intensity
  double rho_discard = 0.0;        // (1 - eps) lambda mu_P
  double heavy_load = 0.0;         // eps lambda mu_H
  double series_ratio = 0.0;       // q = heavy_load / (1 - rho_discard)
  double geometric_success = 0.0;  // r = (1 - rho) / (1 - rho_discard)
  Vector ladder_initial;           // alpha_+ = lambda_d pi (-T)^{-1}
  SquareMatrix ladder_generator;   // Q = T + t alpha_+
};

/// Throws ValidationError on: both/neither of lambda and rho, rho >= 1,
/// epsilon outside (0, 1), nonpositive lambda.
DerivedRates derive_rates(const ModelParams& params);

/// Ruin probability of a compound Poisson model (unit premium rate) with
/// phase-type claims: alpha_+ exp(Q u) e.
double ph_ruin_probability(double lambda, const PhaseType& claims, double u);

/// One replication of a geometric-compound series.
struct SeriesDraw {
  double value = 0.0;          // the sum
  double max_component = 0.0;  // max of the heavy-type components kept by the control
  std::uint64_t count = 0;     // geometric count G (or K)
};

class RuinModel {
 public:
  explicit RuinModel(ModelParams params, QuadratureSpec quadrature = {});
  // Lazily built tables refer back to the owning object.
  RuinModel(const RuinModel&) = delete;
  RuinModel& operator=(const RuinModel&) = delete;

  const ModelParams& params() const noexcept { return params_; }
  const DerivedRates& rates() const noexcept { return rates_; }
  const QuadratureSpec& quadrature() const noexcept { return quadrature_; }

  const PhaseType& light_excess() const noexcept { return light_excess_; }
  /// Law of the discard-model maximum M_d: atom 1 - rho_d, ladder PH part.
  const DefectivePhaseType& discard_maximum() const noexcept { return discard_max_; }
  const GeometricLaw& new_count_law() const noexcept { return new_count_; }
  const GeometricLaw& pk_count_law() const noexcept { return pk_count_; }

  /// Exact ruin probability of the discard (light-only) model.
  double psi_discard(double u) const;

  /// Geometric compound of light-excess ladder heights.
  double sample_discard_maximum(RngStream& rng) const;
  double sample_heavy_excess(RngStream& rng) const { return params_.heavy.excess_sample(rng); }
  /// D = M_d + H_e.
  double sample_summand(RngStream& rng) const;

  /// True when the exponential-light / integer-shape Pareto closed forms apply.
  bool has_closed_form() const noexcept { return closed_form_ != nullptr; }
  /// P(M_d + H_e > u); closed form when available, quadrature otherwise.
  double summand_tail(double u) const;
  double summand_tail_quadrature(double u) const;
  /// P(D > x) for heavy repeated use (conditional MC): the closed form when
  /// available, otherwise a spline table of quadrature values built on the
  /// first call.
  double summand_tail_fast(double x) const;
  /// P(M_d + M_d' + H_e > u).
  double leading_pair_tail(double u) const;
  double leading_pair_tail_quadrature(double u) const;

  /// Mixture excess C_e = B P_e + (1 - B) H_e with P(B = 1) = rho_d / rho.
  double mixture_light_weight() const noexcept { return rates_.rho_discard / rates_.rho; }
  double mixture_excess_ccdf(double u) const;
  double sample_mixture_excess(RngStream& rng) const;

  /// V = M_0 + sum_{k=1}^{G+2} (M_k + H_k), G ~ Geom(r); max_component is
  /// max(H_1..H_{G+2}).
  SeriesDraw sample_v_new(RngStream& rng) const;
  /// V = sum_{k=1}^{K+2} C_{e,k}, K ~ Geom(1 - rho); max_component is the
  /// max of the C_e's.
  SeriesDraw sample_v_pk(RngStream& rng) const;

 private:
  AtomicLaw discard_law() const;

  ModelParams params_;
  DerivedRates rates_;
  QuadratureSpec quadrature_;
  PhaseType light_excess_;
  DefectivePhaseType discard_max_;
  DefectivePhaseType discard_pair_;
  GeometricLaw ladder_count_;
  GeometricLaw new_count_;
  GeometricLaw pk_count_;
  std::shared_ptr<const ExpParetoConvolution> closed_form_;

  struct LazyTable {
    std::once_flag once;
    std::unique_ptr<TailTable> table;
  };
  std::unique_ptr<LazyTable> tail_table_ = std::make_unique<LazyTable>();
};

}  // namespace ruinsim
