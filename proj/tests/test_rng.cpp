#include <cmath>
#include <set>
#include <vector>

#include "carma/rng.hpp"
#include "doctest.h"

using carma::RngStream;

TEST_CASE("Philox4x32-10 known answers") {
  using B = RngStream::Block;
  using K = RngStream::Key;
  CHECK(RngStream::philox(B{0, 0, 0, 0}, K{0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(RngStream::philox(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          K{0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(RngStream::philox(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          K{0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream layout") {
  // Block 0 of stream 0 under seed 0 is the zero-counter answer.
  RngStream r(0, 0);
  CHECK(r() == ((std::uint64_t{0xe169c58d} << 32) | 0x6627e8d5));
  CHECK(r() == ((std::uint64_t{0x9b00dbd8} << 32) | 0xbc57ac4c));
  CHECK(r.blocks_used() == 1);
  r();
  CHECK(r.blocks_used() == 2);
}

TEST_CASE("reproducible and distinct streams") {
  auto draw = [](std::uint64_t seed, std::uint64_t stream) {
    RngStream r(seed, stream);
    std::vector<std::uint64_t> v(64);
    for (auto& x : v) x = r();
    return v;
  };
  CHECK(draw(42, 7) == draw(42, 7));
  CHECK(draw(42, 7) != draw(42, 8));
  CHECK(draw(42, 7) != draw(43, 7));
  CHECK(draw(1, std::uint64_t{1} << 63) != draw(1, 0));

  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(draw(9, s).front());
  CHECK(firsts.size() == 1000);
}

TEST_CASE("uniform ranges and moments") {
  RngStream r(3, 1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = r.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12) < 1e-3);
}
