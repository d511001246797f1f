#include <gtest/gtest.h>

#include <set>

#include "levyembed/rng.hpp"

using levyembed::Philox4x32;
using levyembed::StreamRng;

// Known-answer vectors of the reference Random123 implementation.
TEST(Philox, KnownAnswers) {
  using B = Philox4x32::Block;
  EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
            (B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu}),
            (B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u}),
            (B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(StreamRng, OpenUnitInterval) {
  StreamRng r(7, 3);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(StreamRng, NormalMoments) {
  StreamRng r(1, 0);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s1 += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(StreamRng, DeterministicAndDistinct) {
  StreamRng a(42, 5), b(42, 5), c(42, 6), d(43, 5);
  std::set<std::uint32_t> firsts;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u32();
    EXPECT_EQ(x, b.next_u32());
    firsts.insert(x);
  }
  EXPECT_NE(StreamRng(42, 5).next_u32(), c.next_u32());
  EXPECT_NE(StreamRng(42, 5).next_u32(), d.next_u32());
  EXPECT_EQ(a.draws(), 4u);
}
