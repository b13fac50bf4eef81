#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gwimm/random.hpp"

using namespace gwimm;

TEST_CASE("philox matches the Random123 known-answer vectors") {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and substreams do not disturb the parent") {
  Stream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  Stream c(42, 7);
  const auto child = c.substream(3);
  (void)child;
  Stream d(42, 7);
  CHECK(c() == d());
  CHECK(c.substream(3)() == Stream(42, 7).substream(3)());
}

TEST_CASE("different seeds, stream ids and substream indices give different sequences") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 10; ++s) firsts.insert(Stream(s, 0)());
  for (std::uint64_t id = 1; id < 10; ++id) firsts.insert(Stream(0, id)());
  Stream root(5, 0);
  for (std::uint64_t k = 0; k < 10; ++k) firsts.insert(root.substream(k)());
  CHECK(firsts.size() == 29);
}

TEST_CASE("uniform variates stay in range and have the right moments") {
  Stream rng(1, 0);
  const int n = 200'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = rng.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("replicate seeds are distinct") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(replicate_seed(99, i));
  CHECK(seeds.size() == 1000);
  CHECK(replicate_seed(1, 0) != replicate_seed(2, 0));
}
