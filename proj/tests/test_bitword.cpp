#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cogsim/bitword.hpp"

using cogsim::BitWord;

namespace {

// Independent reference model: a plain set of asserted positions.
struct RefWord {
    unsigned width;
    std::set<unsigned> bits;

    static RefWord random(unsigned width, std::mt19937_64& rng, double density = 0.3) {
        RefWord r{width, {}};
        std::bernoulli_distribution coin(density);
        for (unsigned i = 0; i < width; ++i)
            if (coin(rng)) r.bits.insert(i);
        return r;
    }

    BitWord build() const {
        BitWord w(width);
        for (unsigned b : bits) w.set(b);
        return w;
    }

    std::string hex() const {
        std::string out(width / 4, '0');
        for (unsigned b : bits) {
            const unsigned nibble = b / 4;
            char& c = out[width / 4 - 1 - nibble];
            unsigned v = (c <= '9') ? c - '0' : 10 + (c - 'a');
            v |= 1u << (b % 4);
            c = (v < 10) ? char('0' + v) : char('a' + v - 10);
        }
        return out;
    }
};

}  // namespace

TEST_CASE("fresh word is all zero") {
    BitWord w(256);
    CHECK(w.width() == 256);
    CHECK(w.popcount() == 0);
    CHECK(w.none());
    CHECK_FALSE(w.any());
    for (unsigned i : {0u, 63u, 64u, 255u}) CHECK_FALSE(w.test(i));
}

TEST_CASE("set/clear/test matches a set-of-positions model") {
    std::mt19937_64 rng(0xb17b17);
    for (unsigned width : {8u, 64u, 100u, 256u, 320u}) {
        RefWord ref = RefWord::random(width, rng);
        BitWord w = ref.build();
        for (unsigned i = 0; i < width; ++i) CHECK(w.test(i) == (ref.bits.count(i) > 0));
        CHECK(w.popcount() == ref.bits.size());

        // Clear half of them and re-check.
        std::vector<unsigned> asserted(ref.bits.begin(), ref.bits.end());
        for (size_t i = 0; i < asserted.size(); i += 2) {
            w.set(asserted[i], false);
            ref.bits.erase(asserted[i]);
        }
        for (unsigned i = 0; i < width; ++i) CHECK(w.test(i) == (ref.bits.count(i) > 0));
    }
}

TEST_CASE("position bounds are enforced") {
    BitWord w(64);
    CHECK_THROWS_AS(w.test(64), std::invalid_argument);
    CHECK_THROWS_AS(w.set(64), std::invalid_argument);
    CHECK_THROWS_AS(w.set(1000, false), std::invalid_argument);
    CHECK_THROWS_AS(BitWord(0), std::invalid_argument);
}

TEST_CASE("hex round trip against an independent nibble builder") {
    std::mt19937_64 rng(0x5eed);
    for (unsigned width : {8u, 64u, 256u, 320u}) {
        for (int trial = 0; trial < 50; ++trial) {
            RefWord ref = RefWord::random(width, rng);
            BitWord w = ref.build();
            CHECK(w.toHex() == ref.hex());
            CHECK(BitWord::fromHex(ref.hex(), width) == w);
        }
    }
}

TEST_CASE("hex layout is big-endian with bit 0 in the last character") {
    BitWord w(16);
    w.set(0);
    CHECK(w.toHex() == "0001");
    w.set(0, false);
    w.set(15);
    CHECK(w.toHex() == "8000");
    w.set(4);
    CHECK(w.toHex() == "8010");

    BitWord wide(256);
    wide.set(0);
    std::string h = wide.toHex();
    CHECK(h.size() == 64);
    CHECK(h.back() == '1');
    CHECK(h.substr(0, 63) == std::string(63, '0'));
    wide.set(0, false);
    wide.set(255);
    CHECK(wide.toHex().front() == '8');
}

TEST_CASE("fromHex validates its input") {
    CHECK_THROWS_AS(BitWord::fromHex("00", 16), std::invalid_argument);   // wrong length
    CHECK_THROWS_AS(BitWord::fromHex("00g0", 16), std::invalid_argument); // bad char
    CHECK_THROWS_AS(BitWord::fromHex("0", 2), std::invalid_argument);     // width % 4
    CHECK(BitWord::fromHex("00AB", 16) == BitWord::fromHex("00ab", 16));  // case-insensitive in
    CHECK(BitWord::fromHex("00AB", 16).toHex() == "00ab");                // lowercase out
}

TEST_CASE("bitwise operators match the set model") {
    std::mt19937_64 rng(0xca7);
    for (unsigned width : {64u, 100u, 256u}) {
        for (int trial = 0; trial < 30; ++trial) {
            RefWord a = RefWord::random(width, rng);
            RefWord b = RefWord::random(width, rng);
            const BitWord wa = a.build(), wb = b.build();

            std::set<unsigned> andRef, orRef, xorRef;
            std::set_intersection(a.bits.begin(), a.bits.end(), b.bits.begin(), b.bits.end(),
                                  std::inserter(andRef, andRef.end()));
            std::set_union(a.bits.begin(), a.bits.end(), b.bits.begin(), b.bits.end(),
                           std::inserter(orRef, orRef.end()));
            std::set_symmetric_difference(a.bits.begin(), a.bits.end(), b.bits.begin(),
                                          b.bits.end(), std::inserter(xorRef, xorRef.end()));

            CHECK((wa & wb) == RefWord{width, andRef}.build());
            CHECK((wa | wb) == RefWord{width, orRef}.build());
            CHECK((wa ^ wb) == RefWord{width, xorRef}.build());
        }
    }
}

TEST_CASE("width mismatch in binary operations is rejected") {
    BitWord a(64), b(128);
    CHECK_THROWS_AS(a & b, std::invalid_argument);
    CHECK_THROWS_AS(a | b, std::invalid_argument);
    CHECK_THROWS_AS(a ^ b, std::invalid_argument);
}

TEST_CASE("isSubsetOf matches set inclusion") {
    std::mt19937_64 rng(0x5b5);
    for (int trial = 0; trial < 40; ++trial) {
        RefWord a = RefWord::random(256, rng, 0.1);
        RefWord b = RefWord::random(256, rng, 0.4);
        const bool ref = std::includes(b.bits.begin(), b.bits.end(), a.bits.begin(), a.bits.end());
        CHECK(a.build().isSubsetOf(b.build()) == ref);

        // a is always a subset of a ∪ b.
        std::set<unsigned> u;
        std::set_union(a.bits.begin(), a.bits.end(), b.bits.begin(), b.bits.end(),
                       std::inserter(u, u.end()));
        CHECK(a.build().isSubsetOf(RefWord{256, u}.build()));
    }
}

TEST_CASE("assertedIn lists positions of a half-open range ascending") {
    std::mt19937_64 rng(0xa55);
    for (int trial = 0; trial < 30; ++trial) {
        RefWord ref = RefWord::random(256, rng);
        const BitWord w = ref.build();
        for (auto [lo, hi] : {std::pair<unsigned, unsigned>{0, 256}, {8, 224}, {63, 65},
                              {100, 100}, {5, 131}}) {
            std::vector<unsigned> expect;
            for (unsigned b : ref.bits)
                if (b >= lo && b < hi) expect.push_back(b);
            CHECK(w.assertedIn(lo, hi) == expect);
        }
    }
}

TEST_CASE("field extract/deposit against a per-bit reference") {
    std::mt19937_64 rng(0xf1e1d);
    for (int trial = 0; trial < 60; ++trial) {
        RefWord ref = RefWord::random(256, rng);
        BitWord w = ref.build();
        std::uniform_int_distribution<unsigned> posDist(0, 255);
        const unsigned width = 1 + posDist(rng) % 16;
        const unsigned pos = posDist(rng) % (256 - width + 1);

        uint64_t expect = 0;
        for (unsigned i = 0; i < width; ++i)
            if (ref.bits.count(pos + i)) expect |= uint64_t(1) << i;
        CHECK(w.extractField(pos, width) == expect);

        const uint64_t v = rng() & ((width == 64) ? ~uint64_t(0) : ((uint64_t(1) << width) - 1));
        w.depositField(pos, width, v);
        for (unsigned i = 0; i < width; ++i) CHECK(w.test(pos + i) == (((v >> i) & 1) != 0));
        // Bits outside the field are untouched.
        for (unsigned b = 0; b < 256; ++b) {
            if (b >= pos && b < pos + width) continue;
            CHECK(w.test(b) == (ref.bits.count(b) > 0));
        }
    }
}

TEST_CASE("fields straddling a limb boundary work") {
    BitWord w(128);
    w.depositField(60, 8, 0xA5);
    CHECK(w.extractField(60, 8) == 0xA5);
    CHECK(w.test(60));        // 0xA5 bit 0
    CHECK_FALSE(w.test(61));  // bit 1
    CHECK(w.test(62));
    CHECK(w.test(67));        // bit 7 lands in the second limb
    CHECK(w.popcount() == 4);
}

TEST_CASE("digest is equality-consistent and width-sensitive") {
    std::mt19937_64 rng(0xd16);
    RefWord ref = RefWord::random(256, rng);
    const BitWord a = ref.build();
    const BitWord b = ref.build();
    CHECK(a.digest() == b.digest());

    BitWord c = ref.build();
    c.set(7, ref.bits.count(7) == 0);
    CHECK(a.digest() != c.digest());

    // Same (empty) content, different width → different digest.
    CHECK(BitWord(64).digest() != BitWord(128).digest());
}
