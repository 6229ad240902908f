#include "ruinsim/dists/pareto.hpp"

#include <cmath>

#include "ruinsim/errors.hpp"

namespace ruinsim {

ShiftedPareto::ShiftedPareto(double shape, double scale) : shape_(shape), scale_(scale) {
  if (!(shape > 1.0) || !std::isfinite(shape)) {
    throw ValidationError("Pareto shape must exceed 1 (finite mean)");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("Pareto scale must be > 0");
}

double ShiftedPareto::ccdf(double u) const {
  if (u <= 0.0) return 1.0;
  return std::pow(1.0 + u / scale_, -shape_);
}

double ShiftedPareto::excess_ccdf(double u) const {
  if (u <= 0.0) return 1.0;
  return std::pow(1.0 + u / scale_, -(shape_ - 1.0));
}

double ShiftedPareto::sample(RngStream& rng) const {
  return scale_ * (std::pow(rng.uniform(), -1.0 / shape_) - 1.0);
}

double ShiftedPareto::excess_sample(RngStream& rng) const {
  return scale_ * (std::pow(rng.uniform(), -1.0 / (shape_ - 1.0)) - 1.0);
}

}  // namespace ruinsim
