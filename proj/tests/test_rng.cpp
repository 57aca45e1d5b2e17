#include "doctest.h"

#include <cmath>
#include <set>

#include "dgue/rng.hpp"
#include "dgue/stats.hpp"

using namespace dgue;

TEST_CASE("philox known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({1, 0, 0, 0}, {0, 0}) == A4{0xf8e4cca4, 0x5cb200db, 0xb1a574eb, 0x097eff67});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("identical seeds replay, distinct substreams differ") {
    const RngSeed seed{42, 3};
    Stream a(seed), b(seed), c(seed.substream(1));
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs |= x != c();
    }
    CHECK(differs);
    CHECK(seed.substream(5) == seed.substream(5));
    CHECK(!(seed.substream(5) == seed.substream(6)));
}

TEST_CASE("substreams do not collide over many indices") {
    std::set<std::uint64_t> streams;
    const RngSeed root{1, 0};
    for (std::uint64_t i = 0; i < 10000; ++i) streams.insert(root.substream(i).stream);
    CHECK(streams.size() == 10000);
}

TEST_CASE("discard_blocks skips exactly four words per block") {
    Stream a(RngSeed{9, 9}), b(RngSeed{9, 9});
    for (int i = 0; i < 8; ++i) a();  // 8 x 64 bits = 4 blocks
    b.discard_blocks(4);
    CHECK(a() == b());
}

TEST_CASE("uniform and normal moments") {
    Stream s(RngSeed{2024, 0});
    RunningStats u, n, n2;
    for (int i = 0; i < 200000; ++i) {
        const double x = s.uniform();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
        u.add(x);
        const double z = s.normal();
        n.add(z);
        n2.add(z * z);
    }
    CHECK(std::abs(u.mean() - 0.5) < 4 * u.standard_error());
    CHECK(std::abs(n.mean()) < 4 * n.standard_error());
    CHECK(std::abs(n2.mean() - 1.0) < 4 * n2.standard_error());
}
