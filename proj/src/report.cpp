#include "cogsim/report.hpp"

namespace cogsim {

void ReportAccumulator::onEvent(const TraceEvent& event) {
    counts_[static_cast<size_t>(event.kind)] += 1;
    if (event.kind == EventKind::Match)
        matchedCueBitsSum_ += std::get<MatchPayload>(event.payload).cueBits;
    if (event.kind == EventKind::FeatureLearned)
        learned_.push_back(std::get<FeatureLearnedPayload>(event.payload));
}

RunReport ReportAccumulator::finish(uint64_t cyclesRun,
                                    std::optional<uint64_t> finalLtmSize) const {
    RunReport report;
    report.cyclesRun = cyclesRun;
    report.eventTotals = counts_;
    report.finalLtmSize = finalLtmSize;
    const uint64_t transfers = count(EventKind::AttentionTransfer);
    report.transfersPer1000Cycles =
        cyclesRun == 0 ? 0.0 : static_cast<double>(transfers) * 1000.0 / cyclesRun;
    const uint64_t matches = count(EventKind::Match);
    report.meanMatchedCueBits =
        matches == 0 ? 0.0 : static_cast<double>(matchedCueBitsSum_) / matches;
    report.learnedFeatures = learned_;
    return report;
}

nlohmann::ordered_json RunReport::toJson() const {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["cyclesRun"] = cyclesRun;
    nlohmann::ordered_json events;
    for (size_t k = 0; k < eventTotals.size(); ++k)
        events[eventKindName(static_cast<EventKind>(k))] = eventTotals[k];
    j["events"] = std::move(events);
    if (finalLtmSize)
        j["finalLtmSize"] = *finalLtmSize;
    else
        j["finalLtmSize"] = nullptr;
    j["transfersPer1000Cycles"] = transfersPer1000Cycles;
    j["meanMatchedCueBits"] = meanMatchedCueBits;
    nlohmann::ordered_json learned = nlohmann::ordered_json::array();
    for (const FeatureLearnedPayload& f : learnedFeatures)
        learned.push_back({{"bit", f.bit}, {"definition", f.definition}});
    j["learnedFeatures"] = std::move(learned);
    return j;
}

}  // namespace cogsim
