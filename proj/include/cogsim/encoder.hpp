#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cogsim/bitword.hpp"
#include "cogsim/layout.hpp"

namespace cogsim {

// A percept as authored in a stimulus script: named features plus raw
// brightness/emotion magnitudes.
struct RawPercept {
    uint64_t cycle = 0;
    std::vector<std::string> features;
    uint64_t brightness = 0;
    uint64_t emotion = 0;
};

// Maps feature names to bit positions in the named region and records
// learned combinational features in the learned region. Named bits are
// allocated sequentially from the start of the named region; learned bits
// sequentially from the start of the learned region. Definitions may only
// reference already-allocated bits, which keeps them acyclic.
class SymbolTable {
public:
    explicit SymbolTable(VectorLayout layout);

    // Bit for a name, allocating it when autoRegister is set. Throws
    // std::invalid_argument for an unknown name without autoRegister and
    // std::length_error when the named region is exhausted.
    unsigned bitFor(const std::string& name, bool autoRegister);
    std::optional<unsigned> lookup(const std::string& name) const;

    // Allocates the next learned bit for an AND combination. Returns absent
    // when the learned region is exhausted. Throws std::invalid_argument for
    // definitions that are too small, duplicated, or reference bits that are
    // outside the general region or not yet defined.
    std::optional<unsigned> learnFeature(const std::vector<unsigned>& definitionSet);

    bool hasLearnedDefinition(const std::vector<unsigned>& definitionSet) const;

    // Asserts every learned bit whose definition is fully asserted, repeated
    // to a fixpoint so nested definitions resolve in one call.
    void closeUnderDefinitions(BitWord& vector) const;

    const std::map<std::string, unsigned>& names() const { return names_; }
    const std::map<unsigned, std::vector<unsigned>>& learnedDefs() const { return learned_; }
    const VectorLayout& layout() const { return layout_; }
    unsigned namedInUse() const { return nextNamed_ - layout_.namedBegin(); }
    unsigned learnedInUse() const { return nextLearned_ - layout_.learnedBegin(); }

    // Snapshot restore: replays allocations in the recorded order.
    static SymbolTable fromState(VectorLayout layout,
                                 const std::vector<std::pair<std::string, unsigned>>& names,
                                 const std::map<unsigned, std::vector<unsigned>>& learned);

private:
    VectorLayout layout_;
    std::map<std::string, unsigned> names_;
    std::map<unsigned, std::vector<unsigned>> learned_;  // bit -> sorted definition set
    unsigned nextNamed_;
    unsigned nextLearned_;
};

struct EncodeResult {
    BitWord vector;
    std::vector<std::string> warnings;  // clamp notices; empty on a clean encode
};

// Builds the feature vector for a percept: named bits (auto-registering if
// allowed), clamped brightness/emotion subfields, then learned-definition
// closure. Throws what SymbolTable::bitFor throws; the percept is then
// rejected with no partial effect on the vector (name allocations may have
// occurred for earlier features of the same percept).
EncodeResult encode(SymbolTable& table, const RawPercept& percept, bool autoRegister);

// Counts exact named-bit sets per sensory frame and proposes an AND feature
// when a set of size >= 2 recurs `threshold` times. Each distinct set
// proposes at most once, and sets already learned never propose.
class CombinationDetector {
public:
    explicit CombinationDetector(unsigned threshold);

    std::optional<std::vector<unsigned>> observeCombination(
        const std::vector<unsigned>& assertedNamedBits, const SymbolTable& table);

    unsigned threshold() const { return threshold_; }
    const std::map<std::vector<unsigned>, uint64_t>& counts() const { return counts_; }
    const std::set<std::vector<unsigned>>& proposed() const { return proposed_; }
    void restoreState(std::map<std::vector<unsigned>, uint64_t> counts,
                      std::set<std::vector<unsigned>> proposed);

private:
    unsigned threshold_;
    std::map<std::vector<unsigned>, uint64_t> counts_;  // keyed by sorted bit set
    std::set<std::vector<unsigned>> proposed_;
};

}  // namespace cogsim
