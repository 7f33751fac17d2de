#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "cogsim/bitword.hpp"
#include "cogsim/memory_store.hpp"

namespace cogsim {

enum class TriggerReason { Rehearsal, Novelty };

struct MemorizeTrigger {
    TriggerReason reason;
};

// Two-tap digital filter over recent short-term-memory entries: an image that
// appears twice with a cycle gap inside [delay - tolerance, delay + tolerance]
// triggers memorization. Triggering consumes BOTH occurrences, so pairs never
// overlap: three equally spaced occurrences yield one trigger plus a fresh
// unpaired candidate. History is bounded like a real shift register; entries
// older than the newest `historyDepth` fall out and can no longer pair.
class RehearsalFilter {
public:
    struct HistoryEntry {
        uint64_t digest;
        BitWord vector;
        uint64_t cycle;
        bool consumed;
    };

    RehearsalFilter(uint64_t delay, uint64_t tolerance, size_t historyDepth);

    // Call exactly once per attention transfer, at the transfer cycle.
    // Pairs against the oldest unconsumed equal entry inside the window.
    std::optional<MemorizeTrigger> observeStmEntry(const BitWord& vector, uint64_t cycle);

    uint64_t delay() const { return delay_; }
    uint64_t tolerance() const { return tolerance_; }
    size_t historyDepth() const { return depth_; }

    const std::deque<HistoryEntry>& history() const { return history_; }
    void restoreHistory(std::deque<HistoryEntry> history);

private:
    uint64_t delay_;
    uint64_t tolerance_;
    size_t depth_;
    std::deque<HistoryEntry> history_;  // ascending cycle, size <= depth_
};

// Trigger iff cues were presented and nothing matched.
std::optional<MemorizeTrigger> noveltyTrigger(bool cueWasPresented, bool matchFound);

// Write-once guard: commits at most one word per trigger, and suppresses the
// write entirely when an identical vector was already committed within the
// last `windowCycles` (the rehearsal window delay + tolerance).
class CommitGuard {
public:
    explicit CommitGuard(uint64_t windowCycles);

    struct CommitRecord {
        uint64_t digest;
        BitWord vector;
        uint64_t cycle;
    };

    std::optional<uint64_t> commitGuarded(MemoryStore& store, const BitWord& vector,
                                          uint64_t cycle, const MemorizeTrigger& trigger);

    uint64_t windowCycles() const { return window_; }
    const std::deque<CommitRecord>& recentCommits() const { return recent_; }
    void restoreCommits(std::deque<CommitRecord> commits);

private:
    uint64_t window_;
    std::deque<CommitRecord> recent_;  // ascending cycle, pruned to the window
};

}  // namespace cogsim
