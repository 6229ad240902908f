// Built with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstddef>

#include "ruinsim/simd/batch_stats.hpp"

namespace ruinsim::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

PairedMoments paired_moments_avx2(std::span<const double> y, std::span<const double> z) {
  PairedMoments m;
  const std::size_t n = y.size();
  if (n == 0) return m;
  const std::size_t body = n - n % kLanes;
  const double* yp = y.data();
  const double* zp = z.data();

  const __m256d y0 = _mm256_set1_pd(yp[0]);
  const __m256d z0 = _mm256_set1_pd(zp[0]);
  __m256d acc_y = _mm256_setzero_pd();
  __m256d acc_z = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kLanes) {
    acc_y = _mm256_add_pd(acc_y, _mm256_sub_pd(_mm256_loadu_pd(yp + i), y0));
    acc_z = _mm256_add_pd(acc_z, _mm256_sub_pd(_mm256_loadu_pd(zp + i), z0));
  }
  double dy = hsum(acc_y);
  double dz = hsum(acc_z);
  for (std::size_t i = body; i < n; ++i) {
    dy += yp[i] - yp[0];
    dz += zp[i] - zp[0];
  }
  m.mean_y = yp[0] + dy / static_cast<double>(n);
  m.mean_z = zp[0] + dz / static_cast<double>(n);

  const __m256d my = _mm256_set1_pd(m.mean_y);
  const __m256d mz = _mm256_set1_pd(m.mean_z);
  __m256d syy = _mm256_setzero_pd();
  __m256d szz = _mm256_setzero_pd();
  __m256d syz = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d cy = _mm256_sub_pd(_mm256_loadu_pd(yp + i), my);
    const __m256d cz = _mm256_sub_pd(_mm256_loadu_pd(zp + i), mz);
    syy = _mm256_add_pd(syy, _mm256_mul_pd(cy, cy));
    szz = _mm256_add_pd(szz, _mm256_mul_pd(cz, cz));
    syz = _mm256_add_pd(syz, _mm256_mul_pd(cy, cz));
  }
  m.syy = hsum(syy);
  m.szz = hsum(szz);
  m.syz = hsum(syz);
  for (std::size_t i = body; i < n; ++i) {
    const double cy = yp[i] - m.mean_y;
    const double cz = zp[i] - m.mean_z;
    m.syy += cy * cy;
    m.szz += cz * cz;
    m.syz += cy * cz;
  }
  return m;
}

SeriesMoments series_moments_avx2(std::span<const double> x) {
  SeriesMoments m;
  const std::size_t n = x.size();
  if (n == 0) return m;
  const std::size_t body = n - n % kLanes;
  const double* xp = x.data();

  const __m256d x0 = _mm256_set1_pd(xp[0]);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kLanes) {
    acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(xp + i), x0));
  }
  double dx = hsum(acc);
  for (std::size_t i = body; i < n; ++i) dx += xp[i] - xp[0];
  m.mean = xp[0] + dx / static_cast<double>(n);

  const __m256d mean = _mm256_set1_pd(m.mean);
  __m256d sxx = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d c = _mm256_sub_pd(_mm256_loadu_pd(xp + i), mean);
    sxx = _mm256_add_pd(sxx, _mm256_mul_pd(c, c));
  }
  m.sxx = hsum(sxx);
  for (std::size_t i = body; i < n; ++i) {
    const double c = xp[i] - m.mean;
    m.sxx += c * c;
  }
  return m;
}

}  // namespace ruinsim::simd
