#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cogsim/encoder.hpp"

namespace cogsim {

struct ProcedureDirective {
    uint64_t cycle = 0;
    uint64_t startWordId = 0;
};

// A parsed stimulus file: JSON Lines, each line either a percept
//   {"cycle":u64,"features":["name",...],"brightness":u64,"emotion":u64}
// or a directive
//   {"cycle":u64,"runProcedure":{"startWordId":u64}}
//
// Records must be ordered by nondecreasing cycle, with at most one percept
// per cycle, and percepts only on even (sensory) cycles. Violations never
// abort a run: the offending record is dropped and surfaces as a Warning
// event at a deterministic cycle (the later of the record's own cycle and
// the last well-formed cycle seen before it).
class StimulusScript {
public:
    static StimulusScript parse(std::istream& in);
    static StimulusScript empty() { return StimulusScript{}; }

    const std::vector<RawPercept>& percepts() const { return percepts_; }
    const std::vector<ProcedureDirective>& directives() const { return directives_; }
    const std::vector<std::pair<uint64_t, std::string>>& warnings() const { return warnings_; }

    uint64_t lastCycle() const;  // largest cycle any record or warning touches

private:
    std::vector<RawPercept> percepts_;              // ascending cycle, unique
    std::vector<ProcedureDirective> directives_;    // nondecreasing cycle
    std::vector<std::pair<uint64_t, std::string>> warnings_;  // nondecreasing cycle
};

}  // namespace cogsim
