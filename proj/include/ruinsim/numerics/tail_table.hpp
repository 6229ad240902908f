#pragma once

#include <cstddef>
#include <memory>

#include "ruinsim/numerics/quadrature.hpp"

namespace boost::math::interpolators {
template <class Real>
class cardinal_cubic_b_spline;
}

namespace ruinsim {

/// Cubic-spline table of a survival function on [0, x_max], interpolating
/// log S(x) on a uniform grid in log1p(x). Beyond the table the exact
/// function is called, except when the tail had already dropped below
/// kNegligible inside the range, in which case 0 is returned.
class TailTable {
 public:
  static constexpr double kNegligible = 1e-250;

  TailTable(RealFunction survival, double x_max, std::size_t nodes = 1025);
  ~TailTable();
  TailTable(TailTable&&) noexcept;
  TailTable& operator=(TailTable&&) noexcept;

  double operator()(double x) const;
  double table_end() const noexcept { return x_end_; }

 private:
  RealFunction survival_;
  double x_end_ = 0.0;
  bool negligible_beyond_ = false;
  std::unique_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
};

}  // namespace ruinsim
