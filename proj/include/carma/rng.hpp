#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace carma {

/// Philox4x32-10 counter-based generator. The 64-bit master seed is the key
/// and the stream index occupies the upper half of the 128-bit counter, so
/// every (master_seed, stream_index) pair is an independent stream and the
/// sequence does not depend on which thread draws it.
///
/// Satisfies UniformRandomBitGenerator with 64-bit output.
class RngStream {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in (0, 1).
  double uniform_open();

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  std::uint64_t blocks_used() const { return block_; }

  /// One Philox4x32-10 bijection, exposed for known-answer tests.
  static Block philox(Block counter, Key key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buffer_{};
  int next_ = 2;  // index into the two 64-bit words of buffer_
};

}  // namespace carma
