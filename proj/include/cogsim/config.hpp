#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cogsim/analyzer.hpp"
#include "cogsim/layout.hpp"

namespace cogsim {

inline constexpr int kConfigVersion = 1;

// Every engine knob in one value. JSON round-trips through a canonical form
// (fixed key order, effective values) so two configs are behaviorally equal
// iff their canonical serializations are equal.
struct EngineConfig {
    VectorLayout layout{256, 4, 4, 32};

    unsigned lfsrWidth = 16;
    std::vector<unsigned> lfsrTaps{16, 15, 13, 4};
    uint64_t seed = 1;  // LFSR seed; nonzero

    AnalyzerConfig analyzer;

    uint64_t rehearsalDelay = 20;
    uint64_t rehearsalTolerance = 2;
    uint64_t historyDepth = 64;
    bool noveltyEnabled = true;

    unsigned learnThreshold = 3;
    bool autoRegister = true;

    std::optional<uint64_t> retention;  // absent = words are never cleared

    bool procedureStepPerCycle = false;
    uint64_t procedureMaxSteps = 1024;

    uint32_t cycleRateHz = 40;  // scales trace timestamps only
    uint64_t maxCycles = 1000;

    void validate() const;  // throws std::invalid_argument

    // Strict parse: unknown keys and wrong value types are rejected. All
    // keys are optional and default as above. A top-level "seed" is accepted
    // as an alias that overrides lfsr.seed.
    static EngineConfig fromJson(const nlohmann::json& j);
    static EngineConfig fromStream(std::istream& in);

    nlohmann::ordered_json toJson() const;  // canonical form
    std::string canonicalText() const;      // toJson().dump()

    bool operator==(const EngineConfig&) const = default;
};

}  // namespace cogsim
