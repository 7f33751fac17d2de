#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cogsim/bitword.hpp"
#include "cogsim/cue.hpp"
#include "cogsim/layout.hpp"

namespace cogsim {

struct RecallResult {
    uint64_t wordId = 0;
    BitWord vector;
    uint64_t matchCount = 0;   // total matching words; all but the winner are ignored
    uint64_t writeCycle = 0;   // winner's write stamp, feeds the recency component
};

struct MemoryWordView {
    uint64_t wordId;
    uint64_t writeCycle;
    uint64_t lastMatchCycle;
    std::optional<uint64_t> successor;
    BitWord vector;
};

// Append-only associative store. Words latch instantly on write and are
// retrievable in the same cycle; recall matches by masked equality and
// arbitrates multiple matches toward the most recently written word.
// Word ids are dense, strictly increasing, and never reused, even after
// clearUnused removes entries.
//
// Bit payloads live in one flat limb array so recall can run the
// runtime-selected scan kernel over the whole store; matchesAll keeps an
// independent word-by-word scalar path for arbitration cross-checks.
class MemoryStore {
public:
    explicit MemoryStore(VectorLayout layout);

    uint64_t write(const BitWord& vector, uint64_t cycle);

    // Masked-equality recall. Updates the winner's lastMatchCycle.
    std::optional<RecallResult> recall(const CueQuery& cue, uint64_t cycle);

    // Exhaustive scan, ascending word ids, no side effects.
    std::vector<uint64_t> matchesAll(const CueQuery& cue) const;

    // Removes words with max(writeCycle, lastMatchCycle) + retention < cycle.
    // nullopt retention disables clearing entirely.
    uint64_t clearUnused(uint64_t cycle, std::optional<uint64_t> retention);

    void link(uint64_t fromId, uint64_t toId);
    std::optional<uint64_t> successorOf(uint64_t id) const;

    bool contains(uint64_t id) const;
    MemoryWordView word(uint64_t id) const;
    std::vector<uint64_t> ids() const;

    size_t size() const { return meta_.size(); }
    uint64_t nextWordId() const { return nextId_; }
    const VectorLayout& layout() const { return layout_; }

    // JSON Lines, one word per line, ascending word ids.
    void dumpJsonl(std::ostream& out) const;
    static MemoryStore loadJsonl(std::istream& in, VectorLayout layout);

    // Whole-store views for snapshotting. fromWords does not require
    // successor targets to exist (a target may have been cleared).
    std::vector<MemoryWordView> words() const;
    static MemoryStore fromWords(VectorLayout layout, const std::vector<MemoryWordView>& words,
                                 uint64_t nextWordId);

private:
    struct Meta {
        uint64_t wordId;
        uint64_t writeCycle;
        uint64_t lastMatchCycle;
        uint64_t successor;
        bool hasSuccessor;
    };

    size_t indexOf(uint64_t id) const;  // throws on unknown id
    void appendRaw(const BitWord& vector, Meta meta);
    const uint64_t* wordLimbs(size_t index) const { return bits_.data() + index * limbsPerWord_; }
    BitWord vectorAt(size_t index) const;

    VectorLayout layout_;
    size_t limbsPerWord_;
    std::vector<uint64_t> bits_;   // meta_.size() * limbsPerWord_ limbs
    std::vector<Meta> meta_;       // ascending wordId
    uint64_t nextId_ = 0;
};

}  // namespace cogsim
