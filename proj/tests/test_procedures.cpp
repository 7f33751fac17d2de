#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "cogsim/procedures.hpp"

using namespace cogsim;

namespace {

const VectorLayout kLayout = VectorLayout::make(64, 0, 0, 0);

MemoryStore storeOfWords(size_t count) {
    MemoryStore store(kLayout);
    for (size_t i = 0; i < count; ++i) {
        BitWord v(64);
        v.set(unsigned(i % 64));
        store.write(v, 0);
    }
    return store;
}

}  // namespace

TEST_CASE("a linear chain visits every word in order and completes") {
    MemoryStore store = storeOfWords(3);
    linkWords(store, 0, 1);
    linkWords(store, 1, 2);

    const ProcedureResult r = runProcedure(store, 0);
    CHECK(r.visited == std::vector<uint64_t>{0, 1, 2});
    CHECK(r.halted == ProcedureHalt::Completed);
}

TEST_CASE("an unlinked word is a one-step completed run") {
    MemoryStore store = storeOfWords(1);
    const ProcedureResult r = runProcedure(store, 0);
    CHECK(r.visited == std::vector<uint64_t>{0});
    CHECK(r.halted == ProcedureHalt::Completed);
}

TEST_CASE("a self-loop is cut off by the step limit") {
    MemoryStore store = storeOfWords(1);
    linkWords(store, 0, 0);
    const ProcedureResult r = runProcedure(store, 0, 5);
    CHECK(r.visited == std::vector<uint64_t>{0, 0, 0, 0, 0});
    CHECK(r.halted == ProcedureHalt::StepLimit);
}

TEST_CASE("a two-cycle is also bounded") {
    MemoryStore store = storeOfWords(2);
    linkWords(store, 0, 1);
    linkWords(store, 1, 0);
    const ProcedureResult r = runProcedure(store, 0, 4);
    CHECK(r.visited == std::vector<uint64_t>{0, 1, 0, 1});
    CHECK(r.halted == ProcedureHalt::StepLimit);
}

TEST_CASE("a chain of exactly maxSteps words still completes") {
    MemoryStore store = storeOfWords(4);
    linkWords(store, 0, 1);
    linkWords(store, 1, 2);
    linkWords(store, 2, 3);
    const ProcedureResult r = runProcedure(store, 0, 4);
    CHECK(r.visited == std::vector<uint64_t>{0, 1, 2, 3});
    CHECK(r.halted == ProcedureHalt::Completed);

    // One word longer and the limit bites.
    const ProcedureResult cut = runProcedure(store, 0, 3);
    CHECK(cut.visited == std::vector<uint64_t>{0, 1, 2});
    CHECK(cut.halted == ProcedureHalt::StepLimit);
}

TEST_CASE("unknown start and zero step budget are rejected") {
    MemoryStore store = storeOfWords(1);
    CHECK_THROWS_AS(runProcedure(store, 7), std::invalid_argument);
    CHECK_THROWS_AS(runProcedure(store, 0, 0), std::invalid_argument);
}

TEST_CASE("linking validates both endpoints and overwrites previous links") {
    MemoryStore store = storeOfWords(3);
    CHECK_THROWS_AS(linkWords(store, 0, 5), std::invalid_argument);
    CHECK_THROWS_AS(linkWords(store, 5, 0), std::invalid_argument);
    linkWords(store, 0, 1);
    linkWords(store, 0, 2);  // re-link
    CHECK(runProcedure(store, 0).visited == std::vector<uint64_t>{0, 2});
}

TEST_CASE("a successor cleared from the store ends the walk as completed") {
    MemoryStore store = storeOfWords(3);
    linkWords(store, 0, 1);
    linkWords(store, 1, 2);
    // Age out word 1 only: words 0 and 2 get their lastMatchCycle refreshed
    // via recall; word 1 never matches.
    BitWord v0(64), v2(64);
    v0.set(0);
    v2.set(2);
    store.recall(CueQuery{v0, v0}, 500);
    store.recall(CueQuery{v2, v2}, 500);
    CHECK(store.clearUnused(501, 300) == 1);
    CHECK_FALSE(store.contains(1));

    const ProcedureResult r = runProcedure(store, 0);
    CHECK(r.visited == std::vector<uint64_t>{0});
    CHECK(r.halted == ProcedureHalt::Completed);
}

TEST_CASE("a dangling successor in a loaded dump ends the walk as completed") {
    // Build word views directly: word 0 points at an id that does not exist.
    std::vector<MemoryWordView> words;
    BitWord v(64);
    v.set(3);
    words.push_back(MemoryWordView{0, 0, 0, std::optional<uint64_t>(42), v});
    MemoryStore store = MemoryStore::fromWords(kLayout, words, 43);

    const ProcedureResult r = runProcedure(store, 0);
    CHECK(r.visited == std::vector<uint64_t>{0});
    CHECK(r.halted == ProcedureHalt::Completed);
}

TEST_CASE("long chains complete within the default budget") {
    MemoryStore store = storeOfWords(100);
    for (uint64_t i = 0; i + 1 < 100; ++i) linkWords(store, i, i + 1);
    const ProcedureResult r = runProcedure(store, 0);
    CHECK(r.visited.size() == 100);
    CHECK(r.halted == ProcedureHalt::Completed);
    CHECK(r.visited.front() == 0);
    CHECK(r.visited.back() == 99);
}
