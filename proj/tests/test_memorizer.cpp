#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cogsim/memorizer.hpp"

using namespace cogsim;

namespace {

BitWord pattern(unsigned tag) {
    BitWord w(64);
    w.set(tag % 64);
    w.set((tag * 7 + 3) % 64);
    return w;
}

bool fired(const std::optional<MemorizeTrigger>& t) {
    return t.has_value() && t->reason == TriggerReason::Rehearsal;
}

}  // namespace

TEST_CASE("exact delay with zero tolerance") {
    const BitWord x = pattern(1);

    SUBCASE("gap of exactly D triggers") {
        RehearsalFilter f(10, 0, 64);
        CHECK_FALSE(fired(f.observeStmEntry(x, 5)));
        CHECK(fired(f.observeStmEntry(x, 15)));
    }
    SUBCASE("gap of D-1 does not") {
        RehearsalFilter f(10, 0, 64);
        CHECK_FALSE(fired(f.observeStmEntry(x, 5)));
        CHECK_FALSE(fired(f.observeStmEntry(x, 14)));
    }
    SUBCASE("gap of D+1 does not") {
        RehearsalFilter f(10, 0, 64);
        CHECK_FALSE(fired(f.observeStmEntry(x, 5)));
        CHECK_FALSE(fired(f.observeStmEntry(x, 16)));
    }
}

TEST_CASE("tolerance widens the window to [D-t, D+t] inclusive") {
    const BitWord x = pattern(2);
    auto gapFires = [&](uint64_t gap) {
        RehearsalFilter f(10, 2, 64);
        f.observeStmEntry(x, 5);
        return fired(f.observeStmEntry(x, 5 + gap));
    };
    CHECK_FALSE(gapFires(7));
    CHECK(gapFires(8));   // the documented example: d = 8 in [8, 12]
    CHECK(gapFires(10));
    CHECK(gapFires(12));
    CHECK_FALSE(gapFires(13));
}

TEST_CASE("different vectors never pair") {
    RehearsalFilter f(10, 2, 64);
    f.observeStmEntry(pattern(1), 0);
    CHECK_FALSE(f.observeStmEntry(pattern(2), 10).has_value());
}

TEST_CASE("pairing consumes both occurrences: 0, D, 2D yields one trigger") {
    const BitWord x = pattern(3);
    RehearsalFilter f(10, 0, 64);
    CHECK_FALSE(f.observeStmEntry(x, 0).has_value());
    CHECK(f.observeStmEntry(x, 10).has_value());         // pairs with cycle 0
    CHECK_FALSE(f.observeStmEntry(x, 20).has_value());   // cycle-10 entry is spent
    CHECK(f.observeStmEntry(x, 30).has_value());         // fresh pair 20-30
}

TEST_CASE("the oldest unconsumed in-window entry is the one consumed") {
    const BitWord x = pattern(4);
    RehearsalFilter f(10, 2, 64);
    f.observeStmEntry(x, 0);
    f.observeStmEntry(x, 2);
    // Cycle 10: window [8,12] covers both the entry at 0 (gap 10) and at 2
    // (gap 8). The older one is consumed.
    CHECK(f.observeStmEntry(x, 10).has_value());
    // Cycle 12: entry at 2 (gap 10) is still unconsumed -> fires again.
    CHECK(f.observeStmEntry(x, 12).has_value());
    // Nothing unconsumed remains in range.
    CHECK_FALSE(f.observeStmEntry(x, 22).has_value());
    CHECK(f.observeStmEntry(x, 32).has_value());  // pairs with the entry at 22
}

TEST_CASE("interleaved distinct images pair independently") {
    const BitWord x = pattern(5), y = pattern(6);
    RehearsalFilter f(20, 2, 64);
    f.observeStmEntry(x, 0);
    f.observeStmEntry(y, 1);
    CHECK(f.observeStmEntry(x, 20).has_value());
    CHECK(f.observeStmEntry(y, 21).has_value());
}

TEST_CASE("history depth bounds pairing range") {
    const BitWord x = pattern(7);
    RehearsalFilter f(10, 0, 2);  // keeps only the last 2 entries
    f.observeStmEntry(x, 0);
    f.observeStmEntry(pattern(8), 1);
    f.observeStmEntry(pattern(9), 2);  // pushes the x entry out
    CHECK_FALSE(f.observeStmEntry(x, 10).has_value());
    CHECK(f.history().size() == 2);

    // With a roomy depth the same schedule fires.
    RehearsalFilter g(10, 0, 64);
    g.observeStmEntry(x, 0);
    g.observeStmEntry(pattern(8), 1);
    g.observeStmEntry(pattern(9), 2);
    CHECK(g.observeStmEntry(x, 10).has_value());
}

TEST_CASE("entries must arrive in cycle order") {
    RehearsalFilter f(10, 0, 64);
    f.observeStmEntry(pattern(1), 50);
    CHECK_THROWS_AS(f.observeStmEntry(pattern(1), 49), std::invalid_argument);
    CHECK_NOTHROW(f.observeStmEntry(pattern(1), 50));  // same cycle is fine
}

TEST_CASE("constructor validates history depth") {
    CHECK_THROWS_AS(RehearsalFilter(10, 0, 0), std::invalid_argument);
}

TEST_CASE("history snapshot round-trips") {
    const BitWord x = pattern(10);
    RehearsalFilter f(10, 0, 64);
    f.observeStmEntry(x, 0);
    f.observeStmEntry(pattern(11), 3);

    RehearsalFilter g(10, 0, 64);
    g.restoreHistory(f.history());
    // Both continue identically: the restored filter pairs x at cycle 10.
    CHECK(f.observeStmEntry(x, 10).has_value() == g.observeStmEntry(x, 10).has_value());
    CHECK(g.history().size() == f.history().size());
}

TEST_CASE("random schedule: filter agrees with a brute-force pairing model") {
    // Reference: greedy oldest-first pairing over the full (unbounded) history,
    // mirroring the documented discipline.
    struct RefEntry {
        unsigned tag;
        uint64_t cycle;
        bool consumed;
    };
    std::mt19937_64 rng(0x9e4e);
    const uint64_t D = 6, T = 1;
    for (int run = 0; run < 50; ++run) {
        RehearsalFilter f(D, T, 10000);
        std::vector<RefEntry> ref;
        uint64_t cycle = 0;
        for (int i = 0; i < 120; ++i) {
            cycle += rng() % 4;
            const unsigned tag = unsigned(rng() % 3);
            bool expect = false;
            for (auto& e : ref) {
                if (e.consumed || e.tag != tag) continue;
                const uint64_t gap = cycle - e.cycle;
                if (gap >= D - T && gap <= D + T) {
                    e.consumed = true;
                    expect = true;
                    break;
                }
            }
            ref.push_back(RefEntry{tag, cycle, expect});
            const bool got = f.observeStmEntry(pattern(tag), cycle).has_value();
            REQUIRE(got == expect);
        }
    }
}

TEST_CASE("novelty trigger truth table") {
    CHECK(noveltyTrigger(true, false).has_value());
    CHECK(noveltyTrigger(true, false)->reason == TriggerReason::Novelty);
    CHECK_FALSE(noveltyTrigger(true, true).has_value());
    CHECK_FALSE(noveltyTrigger(false, false).has_value());
    CHECK_FALSE(noveltyTrigger(false, true).has_value());
}

TEST_CASE("commit guard writes exactly once per trigger") {
    MemoryStore store(VectorLayout::make(64, 0, 0, 0));
    CommitGuard guard(12);
    const MemorizeTrigger t{TriggerReason::Rehearsal};

    auto id = guard.commitGuarded(store, pattern(1), 15, t);
    REQUIRE(id.has_value());
    CHECK(*id == 0);
    CHECK(store.size() == 1);

    // The documented example: identical vector one cycle later is suppressed.
    CHECK_FALSE(guard.commitGuarded(store, pattern(1), 16, t).has_value());
    CHECK(store.size() == 1);

    // Distinct vector in the next cycle commits fine.
    auto other = guard.commitGuarded(store, pattern(2), 16, t);
    REQUIRE(other.has_value());
    CHECK(store.size() == 2);
}

TEST_CASE("suppression window boundary: gap == window suppressed, window+1 allowed") {
    MemoryStore store(VectorLayout::make(64, 0, 0, 0));
    CommitGuard guard(12);
    const MemorizeTrigger t{TriggerReason::Novelty};

    guard.commitGuarded(store, pattern(3), 100, t);
    CHECK_FALSE(guard.commitGuarded(store, pattern(3), 112, t).has_value());
    CHECK(guard.commitGuarded(store, pattern(3), 113, t).has_value());
    CHECK(store.size() == 2);
}

TEST_CASE("a suppressed commit does not refresh the window") {
    MemoryStore store(VectorLayout::make(64, 0, 0, 0));
    CommitGuard guard(10);
    const MemorizeTrigger t{TriggerReason::Rehearsal};
    guard.commitGuarded(store, pattern(4), 0, t);
    CHECK_FALSE(guard.commitGuarded(store, pattern(4), 5, t).has_value());
    // Window measured from the COMMIT at 0, not the suppressed attempt at 5.
    CHECK(guard.commitGuarded(store, pattern(4), 11, t).has_value());
}

TEST_CASE("commit records round-trip for snapshots") {
    MemoryStore store(VectorLayout::make(64, 0, 0, 0));
    CommitGuard a(12);
    a.commitGuarded(store, pattern(5), 50, MemorizeTrigger{TriggerReason::Novelty});

    CommitGuard b(12);
    b.restoreCommits(a.recentCommits());
    CHECK_FALSE(
        b.commitGuarded(store, pattern(5), 55, MemorizeTrigger{TriggerReason::Novelty}).has_value());
    CHECK(b.commitGuarded(store, pattern(5), 63, MemorizeTrigger{TriggerReason::Novelty}).has_value());
}
