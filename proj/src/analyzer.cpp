#include "cogsim/analyzer.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogsim {

namespace {
uint64_t satAdd(uint64_t a, uint64_t b) { return a + b < a ? UINT64_MAX : a + b; }
uint64_t satMul(uint64_t a, uint64_t b) {
    return (b != 0 && a > UINT64_MAX / b) ? UINT64_MAX : a * b;
}
}  // namespace

void AnalyzerConfig::validate() const {
    if (recencyScale == 0) throw std::invalid_argument("analyzer: recencyScale must be positive");
    if (fadePeriod == 0) throw std::invalid_argument("analyzer: fadePeriod must be positive");
}

ImportanceIndex importance(const BitWord& vector, const VectorLayout& layout,
                           uint64_t matchCount, std::optional<uint64_t> sourceWriteCycle,
                           uint64_t currentCycle, FrameSource source,
                           const AnalyzerConfig& cfg) {
    const uint64_t b = layout.brightnessOf(vector);
    const uint64_t e = layout.emotionOf(vector);
    uint64_t m = 0;
    uint64_t r = 0;
    if (source == FrameSource::Sensory) {
        // A live experience: no stored match to count, maximally recent.
        m = 0;
        r = cfg.recencyMax;
    } else {
        m = std::min(matchCount, cfg.matchCap);
        if (sourceWriteCycle) {
            if (currentCycle < *sourceWriteCycle)
                throw std::invalid_argument("analyzer: word written in the future");
            const uint64_t aged = (currentCycle - *sourceWriteCycle) / cfg.recencyScale;
            r = cfg.recencyMax > aged ? cfg.recencyMax - aged : 0;
        }
    }
    ImportanceIndex idx;
    idx.brightness = satMul(cfg.weightBrightness, b);
    idx.emotion = satMul(cfg.weightEmotion, e);
    idx.matchedCues = satMul(cfg.weightMatch, m);
    idx.recency = satMul(cfg.weightRecency, r);
    const uint64_t sum =
        satAdd(satAdd(idx.brightness, idx.emotion), satAdd(idx.matchedCues, idx.recency));
    idx.total = std::min(sum, kImportanceCap);
    return idx;
}

uint64_t stmEffectiveImportance(const StmState& stm, uint64_t currentCycle,
                                const AnalyzerConfig& cfg) {
    if (currentCycle < stm.entryCycle)
        throw std::invalid_argument("analyzer: cycle precedes the entry under evaluation");
    const uint64_t faded = (currentCycle - stm.entryCycle) / cfg.fadePeriod;
    return stm.entryImportance.total > faded ? stm.entryImportance.total - faded : 0;
}

bool attentionGate(const ImportanceIndex& candidate, uint64_t stmEffective,
                   const AnalyzerConfig& cfg) {
    return satAdd(candidate.total, cfg.margin) >= stmEffective;
}

bool recognitionFlag(unsigned cueMaskPopcount, const AnalyzerConfig& cfg) {
    return cueMaskPopcount >= cfg.recognitionCues;
}

}  // namespace cogsim
