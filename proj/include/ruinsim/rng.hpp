#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ruinsim {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Deterministic stream of random bits keyed by (seed, stream id).
///
/// Draw k of stream s is a pure function of (seed, s, k): replications that
/// own distinct stream ids never share draws, and the sample path of a
/// replication does not depend on which thread runs it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard exponential (rate 1) by inversion.
  double exponential();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 2;
};

/// Stream for one replication of a run with the given master seed.
inline RngStream rng_substream(std::uint64_t master_seed, std::uint64_t replication_index) {
  return RngStream(master_seed, replication_index);
}

}  // namespace ruinsim
