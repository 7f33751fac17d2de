#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cogsim/analyzer.hpp"

namespace cogsim {

enum class EventKind {
    SensoryFrame,
    RecallAttempt,
    Match,
    NoMatch,
    AttentionTransfer,
    MemorizationWrite,
    FeatureLearned,
    ProcedureStep,
    Warning,
};

const char* eventKindName(EventKind kind);

struct SensoryFramePayload {
    std::string vectorHex;
    uint64_t brightness = 0;
    uint64_t emotion = 0;
};

struct RecallAttemptPayload {
    std::string cueMaskHex;
    std::string cueValuesHex;
    unsigned cueBits = 0;  // popcount of the mask
};

struct MatchPayload {
    uint64_t wordId = 0;
    uint64_t matchCount = 0;
    unsigned cueBits = 0;
    bool recognition = false;
    std::string vectorHex;
};

struct NoMatchPayload {};

struct AttentionTransferPayload {
    std::string source;  // "sensory" | "recall"
    std::optional<uint64_t> wordId;
    std::string vectorHex;
    ImportanceIndex candidate;
    uint64_t displaced = 0;  // effective importance the candidate had to meet
};

struct MemorizationWritePayload {
    uint64_t wordId = 0;
    std::string reason;  // "rehearsal" | "novelty"
    std::string vectorHex;
};

struct FeatureLearnedPayload {
    unsigned bit = 0;
    std::vector<unsigned> definition;
};

struct ProcedureStepPayload {
    uint64_t startWordId = 0;
    uint64_t stepIndex = 0;
    uint64_t wordId = 0;
};

struct WarningPayload {
    std::string message;
};

using EventPayload =
    std::variant<SensoryFramePayload, RecallAttemptPayload, MatchPayload, NoMatchPayload,
                 AttentionTransferPayload, MemorizationWritePayload, FeatureLearnedPayload,
                 ProcedureStepPayload, WarningPayload>;

struct TraceEvent {
    uint64_t cycle = 0;
    EventKind kind = EventKind::Warning;
    EventPayload payload;
};

// One JSON line (no trailing newline) with a fixed field order, so identical
// runs serialize to identical bytes. wallMs is cycle * 1000 / cycleRateHz,
// rendered with exactly three decimals.
std::string serializeEvent(const TraceEvent& event, uint32_t cycleRateHz);

class TraceSink {
public:
    virtual ~TraceSink() = default;
    virtual void onEvent(const TraceEvent& event) = 0;
};

// Serializes each event and writes it as one line.
class JsonlFileSink : public TraceSink {
public:
    JsonlFileSink(std::ostream& out, uint32_t cycleRateHz);
    void onEvent(const TraceEvent& event) override;

private:
    std::ostream& out_;
    uint32_t rate_;
};

// Keeps the events (and optionally their serialized lines) for inspection.
class CollectSink : public TraceSink {
public:
    explicit CollectSink(std::optional<uint32_t> serializeAtRate = std::nullopt);
    void onEvent(const TraceEvent& event) override;

    const std::vector<TraceEvent>& events() const { return events_; }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    std::optional<uint32_t> rate_;
    std::vector<TraceEvent> events_;
    std::vector<std::string> lines_;
};

// Compares each serialized event against a pre-recorded line sequence and
// remembers the first divergence.
class ComparingSink : public TraceSink {
public:
    ComparingSink(std::vector<std::string> expectedLines, uint32_t cycleRateHz);
    void onEvent(const TraceEvent& event) override;

    // All expected lines seen, in order, with none left over?
    bool fullyMatched() const { return !divergence_ && next_ == expected_.size(); }
    bool diverged() const { return divergence_.has_value(); }
    struct Divergence {
        size_t lineNumber;  // 1-based position in the expected sequence
        uint64_t cycle;
        std::string expected;
        std::string actual;
    };
    const std::optional<Divergence>& divergence() const { return divergence_; }
    size_t consumed() const { return next_; }
    size_t expectedCount() const { return expected_.size(); }

private:
    std::vector<std::string> expected_;
    uint32_t rate_;
    size_t next_ = 0;
    std::optional<Divergence> divergence_;
};

}  // namespace cogsim
