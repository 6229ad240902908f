#include "ruinsim/simd/batch_stats.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "ruinsim/errors.hpp"

namespace ruinsim::simd {
namespace {

// -1: no override; otherwise a Kernel value.
std::atomic<int> g_override{-1};

bool cpu_has_avx2() {
#if defined(RUINSIM_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

Kernel detect() {
  if (const char* env = std::getenv("RUINSIM_SIMD"); env && std::string_view(env) == "scalar") {
    return Kernel::kScalar;
  }
  return cpu_has_avx2() ? Kernel::kAvx2 : Kernel::kScalar;
}

}  // namespace

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::kScalar:
      return "scalar";
    case Kernel::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool kernel_available(Kernel k) { return k == Kernel::kScalar || cpu_has_avx2(); }

Kernel active_kernel() {
  const int o = g_override.load(std::memory_order_relaxed);
  if (o >= 0) return static_cast<Kernel>(o);
  static const Kernel detected = detect();
  return detected;
}

void set_kernel_override(Kernel k) {
  if (!kernel_available(k)) throw DomainError("SIMD kernel not available on this CPU/build");
  g_override.store(static_cast<int>(k), std::memory_order_relaxed);
}

void clear_kernel_override() { g_override.store(-1, std::memory_order_relaxed); }

PairedMoments paired_moments(std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) throw DomainError("paired_moments: length mismatch");
#if defined(RUINSIM_WITH_AVX2)
  if (active_kernel() == Kernel::kAvx2) return paired_moments_avx2(y, z);
#endif
  return paired_moments_scalar(y, z);
}

SeriesMoments series_moments(std::span<const double> x) {
#if defined(RUINSIM_WITH_AVX2)
  if (active_kernel() == Kernel::kAvx2) return series_moments_avx2(x);
#endif
  return series_moments_scalar(x);
}

}  // namespace ruinsim::simd
