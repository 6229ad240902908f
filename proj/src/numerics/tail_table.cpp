#include "ruinsim/numerics/tail_table.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <vector>

#include "ruinsim/errors.hpp"

namespace ruinsim {

TailTable::TailTable(RealFunction survival, double x_max, std::size_t nodes)
    : survival_(std::move(survival)) {
  if (!(x_max > 0.0) || nodes < 5) throw DomainError("TailTable: need x_max > 0 and >= 5 nodes");
  const double t_max = std::log1p(x_max);
  const double h = t_max / static_cast<double>(nodes - 1);
  std::vector<double> logs;
  logs.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = std::expm1(h * static_cast<double>(i));
    const double s = i == 0 ? 1.0 : survival_(x);
    if (!(s > kNegligible)) {
      negligible_beyond_ = true;
      break;
    }
    logs.push_back(std::log(s));
  }
  if (logs.size() < 5) {
    // Tail vanishes almost at once; no useful table.
    x_end_ = 0.0;
    negligible_beyond_ = false;
    return;
  }
  x_end_ = std::expm1(h * static_cast<double>(logs.size() - 1));
  spline_ = std::make_unique<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      logs.begin(), logs.end(), 0.0, h);
}

TailTable::~TailTable() = default;
TailTable::TailTable(TailTable&&) noexcept = default;
TailTable& TailTable::operator=(TailTable&&) noexcept = default;

double TailTable::operator()(double x) const {
  if (x <= 0.0) return 1.0;
  if (spline_ && x <= x_end_) return std::min(1.0, std::exp((*spline_)(std::log1p(x))));
  if (negligible_beyond_) return 0.0;
  return survival_(x);
}

}  // namespace ruinsim
