#include <cstddef>

#include "ruinsim/simd/batch_stats.hpp"

namespace ruinsim::simd {

PairedMoments paired_moments_scalar(std::span<const double> y, std::span<const double> z) {
  PairedMoments m;
  const std::size_t n = y.size();
  if (n == 0) return m;
  const double y0 = y[0];
  const double z0 = z[0];
  double dy = 0.0;
  double dz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dy += y[i] - y0;
    dz += z[i] - z0;
  }
  m.mean_y = y0 + dy / static_cast<double>(n);
  m.mean_z = z0 + dz / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cy = y[i] - m.mean_y;
    const double cz = z[i] - m.mean_z;
    m.syy += cy * cy;
    m.szz += cz * cz;
    m.syz += cy * cz;
  }
  return m;
}

SeriesMoments series_moments_scalar(std::span<const double> x) {
  SeriesMoments m;
  const std::size_t n = x.size();
  if (n == 0) return m;
  const double x0 = x[0];
  double dx = 0.0;
  for (std::size_t i = 0; i < n; ++i) dx += x[i] - x0;
  m.mean = x0 + dx / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = x[i] - m.mean;
    m.sxx += c * c;
  }
  return m;
}

}  // namespace ruinsim::simd
