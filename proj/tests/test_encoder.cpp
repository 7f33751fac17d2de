#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <string>
#include <vector>

#include "cogsim/encoder.hpp"

using namespace cogsim;

namespace {

const VectorLayout kLayout = VectorLayout::make(64, 4, 4, 16);
// named region: bits 8..47, learned region: bits 48..63

RawPercept percept(std::vector<std::string> features, uint64_t b = 0, uint64_t e = 0) {
    RawPercept p;
    p.features = std::move(features);
    p.brightness = b;
    p.emotion = e;
    return p;
}

}  // namespace

TEST_CASE("names allocate sequentially from the named region") {
    SymbolTable table(kLayout);
    CHECK(table.bitFor("yellow", true) == 8);
    CHECK(table.bitFor("green", true) == 9);
    CHECK(table.bitFor("yellow", true) == 8);  // stable on re-query
    CHECK(table.lookup("green") == std::optional<unsigned>(9));
    CHECK_FALSE(table.lookup("red").has_value());
    CHECK(table.namedInUse() == 2);
}

TEST_CASE("unknown names without auto-register are rejected") {
    SymbolTable table(kLayout);
    CHECK_THROWS_AS(table.bitFor("unseen", false), std::invalid_argument);
    // Registration through the permissive path, then strict lookup works.
    table.bitFor("seen", true);
    CHECK(table.bitFor("seen", false) == 8);
}

TEST_CASE("the named region can fill up") {
    const VectorLayout tiny = VectorLayout::make(16, 4, 4, 4);  // named bits 8..11
    SymbolTable table(tiny);
    for (int i = 0; i < 4; ++i) table.bitFor("n" + std::to_string(i), true);
    CHECK_THROWS_AS(table.bitFor("overflow", true), std::length_error);
}

TEST_CASE("encode asserts named bits and subfields") {
    SymbolTable table(kLayout);
    const EncodeResult r = encode(table, percept({"yellow", "green"}, 9, 3), true);
    CHECK(r.warnings.empty());
    CHECK(r.vector.test(8));
    CHECK(r.vector.test(9));
    CHECK(kLayout.brightnessOf(r.vector) == 9);
    CHECK(kLayout.emotionOf(r.vector) == 3);
    CHECK(r.vector.popcount() == 2 + 2 + 2);  // two named + two bits in each subfield value
}

TEST_CASE("out-of-range magnitudes clamp with a warning") {
    SymbolTable table(kLayout);
    const EncodeResult r = encode(table, percept({"x"}, 99, 16), true);
    CHECK(kLayout.brightnessOf(r.vector) == 15);  // 4-bit subfield max
    CHECK(kLayout.emotionOf(r.vector) == 15);
    CHECK(r.warnings.size() == 2);

    const EncodeResult clean = encode(table, percept({"x"}, 15, 15), true);
    CHECK(clean.warnings.empty());
}

TEST_CASE("duplicate feature names in one percept are harmless") {
    SymbolTable table(kLayout);
    const EncodeResult r = encode(table, percept({"a", "a", "a"}), true);
    CHECK(r.vector.popcount() == 1);
}

TEST_CASE("encode without auto-register rejects unknown names") {
    SymbolTable table(kLayout);
    table.bitFor("known", true);
    CHECK_THROWS_AS(encode(table, percept({"known", "unknown"}), false),
                    std::invalid_argument);
    CHECK_NOTHROW(encode(table, percept({"known"}), false));
}

TEST_CASE("learned AND feature: the canonical two-color example") {
    SymbolTable table(kLayout);
    const unsigned yellow = table.bitFor("yellow", true);
    const unsigned green = table.bitFor("green", true);

    const auto chartreuse = table.learnFeature({yellow, green});
    REQUIRE(chartreuse.has_value());
    CHECK(*chartreuse == kLayout.learnedBegin());
    CHECK(table.hasLearnedDefinition({yellow, green}));
    CHECK(table.hasLearnedDefinition({green, yellow}));  // order-insensitive

    // Encoding both constituents asserts the learned bit...
    const EncodeResult both = encode(table, percept({"yellow", "green"}), true);
    CHECK(both.vector.test(*chartreuse));
    // ...but either alone does not.
    CHECK_FALSE(encode(table, percept({"yellow"}), true).vector.test(*chartreuse));
    CHECK_FALSE(encode(table, percept({"green"}), true).vector.test(*chartreuse));
}

TEST_CASE("nested definitions resolve through the closure fixpoint") {
    SymbolTable table(kLayout);
    const unsigned yellow = table.bitFor("yellow", true);
    const unsigned green = table.bitFor("green", true);
    const unsigned bright = table.bitFor("glow", true);
    const unsigned chartreuse = *table.learnFeature({yellow, green});
    const unsigned glowing = *table.learnFeature({chartreuse, bright});

    const EncodeResult r = encode(table, percept({"yellow", "green", "glow"}), true);
    CHECK(r.vector.test(chartreuse));  // first pass
    CHECK(r.vector.test(glowing));     // needs the second pass
    CHECK_FALSE(encode(table, percept({"yellow", "glow"}), true).vector.test(glowing));
}

TEST_CASE("closure is idempotent") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    const unsigned b = table.bitFor("b", true);
    table.learnFeature({a, b});
    BitWord v(kLayout.width);
    v.set(a);
    v.set(b);
    table.closeUnderDefinitions(v);
    BitWord once = v;
    table.closeUnderDefinitions(v);
    CHECK(v == once);
}

TEST_CASE("definition validation") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    CHECK_THROWS_AS(table.learnFeature({a}), std::invalid_argument);            // size < 2
    CHECK_THROWS_AS(table.learnFeature({a, a}), std::invalid_argument);         // dedups to 1
    CHECK_THROWS_AS(table.learnFeature({a, 3}), std::invalid_argument);         // subfield bit
    CHECK_THROWS_AS(table.learnFeature({a, 20}), std::invalid_argument);        // unallocated
    CHECK_THROWS_AS(table.learnFeature({a, 48}), std::invalid_argument);        // unallocated learned
    const unsigned b = table.bitFor("b", true);
    const auto learned = table.learnFeature({a, b});
    REQUIRE(learned.has_value());
    // A learned bit may participate once it exists.
    CHECK(table.learnFeature({a, *learned}).has_value());
}

TEST_CASE("learned region exhaustion returns absent instead of throwing") {
    const VectorLayout tight = VectorLayout::make(16, 4, 4, 2);  // learned bits 14,15
    SymbolTable table(tight);
    const unsigned a = table.bitFor("a", true);
    const unsigned b = table.bitFor("b", true);
    const unsigned c = table.bitFor("c", true);
    CHECK(table.learnFeature({a, b}).has_value());
    CHECK(table.learnFeature({a, c}).has_value());
    CHECK_FALSE(table.learnFeature({b, c}).has_value());  // region full
    CHECK(table.learnedInUse() == 2);
}

TEST_CASE("table state round-trips for snapshots") {
    SymbolTable table(kLayout);
    table.bitFor("a", true);
    table.bitFor("b", true);
    table.learnFeature({8, 9});

    std::vector<std::pair<std::string, unsigned>> names(table.names().begin(),
                                                        table.names().end());
    SymbolTable copy = SymbolTable::fromState(kLayout, names, table.learnedDefs());
    CHECK(copy.names() == table.names());
    CHECK(copy.learnedDefs() == table.learnedDefs());
    CHECK(copy.bitFor("c", true) == 10);  // allocation resumes after the originals

    const EncodeResult r = encode(copy, percept({"a", "b"}), true);
    CHECK(r.vector.test(kLayout.learnedBegin()));
}

TEST_CASE("combination detector proposes exactly at the threshold, once") {
    SymbolTable table(kLayout);
    const unsigned y = table.bitFor("yellow", true);
    const unsigned g = table.bitFor("green", true);
    CombinationDetector det(3);

    CHECK_FALSE(det.observeCombination({y, g}, table).has_value());
    CHECK_FALSE(det.observeCombination({y, g}, table).has_value());
    const auto proposal = det.observeCombination({y, g}, table);
    REQUIRE(proposal.has_value());
    CHECK(*proposal == std::vector<unsigned>{y, g});
    // Never proposed twice, however often it recurs.
    for (int i = 0; i < 5; ++i) CHECK_FALSE(det.observeCombination({y, g}, table).has_value());
}

TEST_CASE("detector keys on the exact set") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    const unsigned b = table.bitFor("b", true);
    const unsigned c = table.bitFor("c", true);
    CombinationDetector det(2);
    CHECK_FALSE(det.observeCombination({a, b}, table).has_value());
    CHECK_FALSE(det.observeCombination({a, b, c}, table).has_value());  // different set
    CHECK_FALSE(det.observeCombination({a, c}, table).has_value());
    CHECK(det.observeCombination({b, a}, table).has_value());  // order-insensitive
}

TEST_CASE("singleton and empty sets never propose") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    CombinationDetector det(2);
    for (int i = 0; i < 6; ++i) {
        CHECK_FALSE(det.observeCombination({a}, table).has_value());
        CHECK_FALSE(det.observeCombination({}, table).has_value());
    }
}

TEST_CASE("sets already learned do not propose again") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    const unsigned b = table.bitFor("b", true);
    table.learnFeature({a, b});
    CombinationDetector det(2);
    for (int i = 0; i < 4; ++i) CHECK_FALSE(det.observeCombination({a, b}, table).has_value());
}

TEST_CASE("detector state round-trips for snapshots") {
    SymbolTable table(kLayout);
    const unsigned a = table.bitFor("a", true);
    const unsigned b = table.bitFor("b", true);
    CombinationDetector det(3);
    det.observeCombination({a, b}, table);
    det.observeCombination({a, b}, table);

    CombinationDetector copy(3);
    copy.restoreState(det.counts(), det.proposed());
    CHECK(copy.observeCombination({a, b}, table).has_value());  // third sighting fires
}

TEST_CASE("threshold is validated") {
    CHECK_THROWS_AS(CombinationDetector(0), std::invalid_argument);
}
