#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ruinsim/dists/pareto.hpp"
#include "ruinsim/dists/phase_type.hpp"

namespace ruinsim {

/// Claim law of the mixture's second component. Normally a shifted Pareto;
/// a phase-type law is accepted so that the whole model becomes phase-type
/// and has an exact ruin probability to test against.
class HeavyComponent {
 public:
  HeavyComponent(ShiftedPareto pareto) : law_(std::move(pareto)) {}  // NOLINT
  HeavyComponent(PhaseType ph);                                     // NOLINT

  double mean() const;
  double excess_ccdf(double u) const;
  double excess_cdf(double u) const { return 1.0 - excess_ccdf(u); }
  double excess_sample(RngStream& rng) const;

  const ShiftedPareto* pareto() const { return std::get_if<ShiftedPareto>(&law_); }
  const PhaseType* phase_type() const { return std::get_if<PhaseType>(&law_); }

  std::string describe() const;

 private:
  std::variant<ShiftedPareto, PhaseType> law_;
  std::optional<PhaseType> ph_excess_;
};

}  // namespace ruinsim
