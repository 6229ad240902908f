#include "ruinsim/dists/geometric.hpp"

#include <cmath>

#include "ruinsim/errors.hpp"

namespace ruinsim {

GeometricLaw::GeometricLaw(double success) : success_(success), log_failure_(0.0) {
  if (!(success > 0.0) || success > 1.0) {
    throw DomainError("geometric success probability must lie in (0, 1]");
  }
  log_failure_ = std::log1p(-success);
}

double GeometricLaw::pmf(std::uint64_t k) const {
  if (success_ == 1.0) return k == 0 ? 1.0 : 0.0;
  return success_ * std::exp(static_cast<double>(k) * log_failure_);
}

std::uint64_t GeometricLaw::sample(RngStream& rng) const {
  if (success_ == 1.0) return 0;
  return static_cast<std::uint64_t>(std::floor(std::log(rng.uniform()) / log_failure_));
}

}  // namespace ruinsim
