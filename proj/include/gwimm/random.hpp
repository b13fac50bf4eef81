#pragma once

#include <array>
#include <cstdint>

namespace gwimm {

/// Philox-4x32 with 10 rounds (Salmon et al., SC'11). Pure function of
/// (counter, key); used as the block cipher behind Stream.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer, used to derive child stream identifiers.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based random stream.
///
/// The key is the 64-bit master seed and the upper half of the 128-bit
/// counter is a stream identifier, so (seed, stream_id) names an
/// independent sequence without any shared state. Replicates and cohorts
/// obtain their own streams through substream(), which makes results
/// independent of scheduling order.
///
/// Satisfies UniformRandomBitGenerator, so it plugs into <random>.
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform_open();

  /// Child stream keyed by (seed, stream_id, index). Does not advance *this.
  [[nodiscard]] Stream substream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int consumed_ = 2;  // 64-bit words used from buffer_ (two per block)
};

}  // namespace gwimm

namespace gwimm {

/// Seed of replicate `index` under a master seed. Replicates never share
/// streams, whatever order they run in.
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

}  // namespace gwimm
