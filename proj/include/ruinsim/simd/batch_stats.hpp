#pragma once

#include <span>
#include <string_view>

namespace ruinsim::simd {

/// Centered first and second moments of a paired sample (y_i, z_i).
/// Sums are of deviations from the sample means (not divided by n).
struct PairedMoments {
  double mean_y = 0.0;
  double mean_z = 0.0;
  double syy = 0.0;
  double szz = 0.0;
  double syz = 0.0;
};

struct SeriesMoments {
  double mean = 0.0;
  double sxx = 0.0;
};

enum class Kernel { kScalar, kAvx2 };

std::string_view kernel_name(Kernel k);

/// Whether this build and this CPU can run the given kernel.
bool kernel_available(Kernel k);

/// Kernel used by the dispatching entry points: the widest available one,
/// unless RUINSIM_SIMD=scalar is set in the environment or an override is
/// installed.
Kernel active_kernel();
void set_kernel_override(Kernel k);
void clear_kernel_override();

// Two-pass algorithm: means are accumulated as offsets from the first
// element, so a constant sample yields its value exactly and zero spread.

PairedMoments paired_moments(std::span<const double> y, std::span<const double> z);
SeriesMoments series_moments(std::span<const double> x);

PairedMoments paired_moments_scalar(std::span<const double> y, std::span<const double> z);
SeriesMoments series_moments_scalar(std::span<const double> x);

#if defined(RUINSIM_WITH_AVX2)
PairedMoments paired_moments_avx2(std::span<const double> y, std::span<const double> z);
SeriesMoments series_moments_avx2(std::span<const double> x);
#endif

}  // namespace ruinsim::simd
