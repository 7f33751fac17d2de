#include "cogsim/memorizer.hpp"

#include <stdexcept>

namespace cogsim {

RehearsalFilter::RehearsalFilter(uint64_t delay, uint64_t tolerance, size_t historyDepth)
    : delay_(delay), tolerance_(tolerance), depth_(historyDepth) {
    if (depth_ == 0) throw std::invalid_argument("rehearsal: history depth must be positive");
}

std::optional<MemorizeTrigger> RehearsalFilter::observeStmEntry(const BitWord& vector,
                                                                uint64_t cycle) {
    if (!history_.empty() && cycle < history_.back().cycle)
        throw std::invalid_argument("rehearsal: entries must arrive in cycle order");

    const uint64_t digest = vector.digest();
    const uint64_t lo = delay_ > tolerance_ ? delay_ - tolerance_ : 0;
    const uint64_t hi = delay_ + tolerance_;

    bool fired = false;
    for (HistoryEntry& e : history_) {  // oldest first
        if (e.consumed) continue;
        const uint64_t gap = cycle - e.cycle;
        if (gap < lo || gap > hi) continue;
        if (e.digest != digest) continue;
        if (!(e.vector == vector)) continue;  // digest collision: not a real pair
        e.consumed = true;
        fired = true;
        break;
    }

    // The new occurrence joins the history; if it just completed a pair it is
    // consumed too, leaving it unavailable for a second overlapping pair.
    history_.push_back(HistoryEntry{digest, vector, cycle, fired});
    while (history_.size() > depth_) history_.pop_front();

    if (fired) return MemorizeTrigger{TriggerReason::Rehearsal};
    return std::nullopt;
}

void RehearsalFilter::restoreHistory(std::deque<HistoryEntry> history) {
    if (history.size() > depth_)
        throw std::invalid_argument("rehearsal: restored history exceeds depth");
    for (size_t i = 1; i < history.size(); ++i)
        if (history[i].cycle < history[i - 1].cycle)
            throw std::invalid_argument("rehearsal: restored history out of order");
    history_ = std::move(history);
}

std::optional<MemorizeTrigger> noveltyTrigger(bool cueWasPresented, bool matchFound) {
    if (cueWasPresented && !matchFound) return MemorizeTrigger{TriggerReason::Novelty};
    return std::nullopt;
}

CommitGuard::CommitGuard(uint64_t windowCycles) : window_(windowCycles) {}

std::optional<uint64_t> CommitGuard::commitGuarded(MemoryStore& store, const BitWord& vector,
                                                   uint64_t cycle,
                                                   const MemorizeTrigger& trigger) {
    (void)trigger;  // one call per trigger event; the reason does not alter the guard
    while (!recent_.empty() && recent_.front().cycle + window_ < cycle) recent_.pop_front();

    const uint64_t digest = vector.digest();
    for (const CommitRecord& r : recent_) {
        if (r.digest == digest && r.vector == vector) return std::nullopt;  // duplicate
    }

    const uint64_t id = store.write(vector, cycle);
    recent_.push_back(CommitRecord{digest, vector, cycle});
    return id;
}

void CommitGuard::restoreCommits(std::deque<CommitRecord> commits) {
    for (size_t i = 1; i < commits.size(); ++i)
        if (commits[i].cycle < commits[i - 1].cycle)
            throw std::invalid_argument("memorizer: restored commit log out of order");
    recent_ = std::move(commits);
}

}  // namespace cogsim
