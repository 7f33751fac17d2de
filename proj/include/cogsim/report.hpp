#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "cogsim/trace.hpp"

namespace cogsim {

// End-of-run summary. Totals are exact event counts from the trace; rates
// are derived. finalLtmSize is known only when the store itself is at hand
// (a live run), not when recomputing statistics from a trace file.
struct RunReport {
    uint64_t cyclesRun = 0;
    std::array<uint64_t, 9> eventTotals{};  // indexed by EventKind
    std::optional<uint64_t> finalLtmSize;
    double transfersPer1000Cycles = 0.0;
    double meanMatchedCueBits = 0.0;
    std::vector<FeatureLearnedPayload> learnedFeatures;

    nlohmann::ordered_json toJson() const;
};

// Sink that tallies the trace as it streams by.
class ReportAccumulator : public TraceSink {
public:
    void onEvent(const TraceEvent& event) override;

    RunReport finish(uint64_t cyclesRun, std::optional<uint64_t> finalLtmSize) const;
    uint64_t count(EventKind kind) const { return counts_[static_cast<size_t>(kind)]; }

private:
    std::array<uint64_t, 9> counts_{};
    uint64_t matchedCueBitsSum_ = 0;
    std::vector<FeatureLearnedPayload> learned_;
};

}  // namespace cogsim
