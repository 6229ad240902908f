#pragma once

#include <cstdint>

#include "ruinsim/rng.hpp"

namespace ruinsim {

/// Geometric law on {0, 1, 2, ...}: P(G = k) = p (1 - p)^k.
class GeometricLaw {
 public:
  explicit GeometricLaw(double success);

  double success() const noexcept { return success_; }
  double mean() const noexcept { return (1.0 - success_) / success_; }
  double pmf(std::uint64_t k) const;

  std::uint64_t sample(RngStream& rng) const;

 private:
  double success_;
  double log_failure_;
};

}  // namespace ruinsim
