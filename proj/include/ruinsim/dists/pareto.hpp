#pragma once

#include "ruinsim/rng.hpp"

namespace ruinsim {

/// Shifted (Lomax) Pareto law: P(H > u) = (1 + u/b)^{-a}, shape a > 1 so the
/// mean b/(a-1) is finite. Its stationary excess is again shifted Pareto
/// with shape a - 1.
class ShiftedPareto {
 public:
  ShiftedPareto(double shape, double scale);

  double shape() const noexcept { return shape_; }
  double scale() const noexcept { return scale_; }

  double mean() const noexcept { return scale_ / (shape_ - 1.0); }
  double ccdf(double u) const;
  double excess_ccdf(double u) const;
  double excess_cdf(double u) const { return 1.0 - excess_ccdf(u); }

  double sample(RngStream& rng) const;
  /// Inverse transform b (U^{-1/(a-1)} - 1).
  double excess_sample(RngStream& rng) const;

 private:
  double shape_;
  double scale_;
};

}  // namespace ruinsim
