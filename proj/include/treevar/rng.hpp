#pragma once

#include <array>
#include <cstdint>

namespace treevar {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Reproducible stream keyed by (seed, stream, substream). Draw i of a stream
/// depends only on the key and i, so streams are independent of evaluation
/// order and of each other.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint32_t stream, std::uint32_t substream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on [0, bound) by rejection; bound > 0.
  std::uint32_t uniform(std::uint32_t bound);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
  std::uint32_t substream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;
};

}  // namespace treevar
