#pragma once

#include <cstdint>
#include <optional>

#include "cogsim/bitword.hpp"
#include "cogsim/layout.hpp"

namespace cogsim {

// Weights and thresholds for the importance evaluation stage. All scoring is
// integer arithmetic on a saturating 16-bit total.
struct AnalyzerConfig {
    uint64_t weightBrightness = 1;
    uint64_t weightEmotion = 1;
    uint64_t weightMatch = 1;
    uint64_t weightRecency = 1;
    uint64_t matchCap = 15;      // matched-word count clamps here
    uint64_t recencyMax = 15;    // freshest possible recency value
    uint64_t recencyScale = 100; // cycles per unit of recency loss
    uint64_t fadePeriod = 8;     // cycles per unit of attention fade
    uint64_t margin = 0;         // gate slack: candidate + margin >= current
    unsigned recognitionCues = 8;

    void validate() const;

    bool operator==(const AnalyzerConfig&) const = default;
};

// A scored image: the four weighted contributions and their saturated sum.
struct ImportanceIndex {
    uint64_t brightness = 0;
    uint64_t emotion = 0;
    uint64_t matchedCues = 0;
    uint64_t recency = 0;
    uint64_t total = 0;  // min(sum of components, 65535)

    bool operator==(const ImportanceIndex&) const = default;
};

inline constexpr uint64_t kImportanceCap = 65535;

// Where an image under evaluation came from. Sensory images carry no match
// concept (matched contribution 0) and are maximally recent; recalled images
// take recency from the age of the stored word.
enum class FrameSource { Sensory, Recall };

// The single "conscious" image plus the bookkeeping needed to fade it.
struct StmState {
    BitWord vector;
    uint64_t entryCycle = 0;
    ImportanceIndex entryImportance;
    FrameSource source = FrameSource::Sensory;
    std::optional<uint64_t> sourceWordId;  // set for recall entries
};

// Raw components: B and E from the vector subfields, M from the match count
// (recall only), R from word age (recall) or recencyMax (sensory).
ImportanceIndex importance(const BitWord& vector, const VectorLayout& layout,
                           uint64_t matchCount, std::optional<uint64_t> sourceWriteCycle,
                           uint64_t currentCycle, FrameSource source,
                           const AnalyzerConfig& cfg);

// Entry importance minus one point per fadePeriod elapsed cycles, floored at 0.
uint64_t stmEffectiveImportance(const StmState& stm, uint64_t currentCycle,
                                const AnalyzerConfig& cfg);

// True = the candidate replaces the current short-term-memory content.
bool attentionGate(const ImportanceIndex& candidate, uint64_t stmEffective,
                   const AnalyzerConfig& cfg);

// Trace-only annotation: a recall with many cue bits "feels recognized".
bool recognitionFlag(unsigned cueMaskPopcount, const AnalyzerConfig& cfg);

}  // namespace cogsim
