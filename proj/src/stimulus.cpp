#include "cogsim/stimulus.hpp"

#include <algorithm>
#include <istream>

#include <json.hpp>

namespace cogsim {

namespace {

bool readU64(const nlohmann::json& j, const char* key, uint64_t& out, std::string& err) {
    const auto it = j.find(key);
    if (it == j.end()) {
        err = std::string("missing field '") + key + "'";
        return false;
    }
    if (!it->is_number_unsigned()) {
        err = std::string("field '") + key + "' must be a nonnegative integer";
        return false;
    }
    out = it->get<uint64_t>();
    return true;
}

}  // namespace

StimulusScript StimulusScript::parse(std::istream& in) {
    StimulusScript script;
    std::string line;
    size_t lineNo = 0;
    uint64_t cursor = 0;  // latest cycle of any well-formed record

    auto reject = [&](uint64_t atCycle, const std::string& why) {
        script.warnings_.emplace_back(std::max(atCycle, cursor),
                                      "stimulus line " + std::to_string(lineNo) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            reject(0, "not a JSON object");
            continue;
        }

        std::string err;
        uint64_t cycle = 0;
        if (!readU64(j, "cycle", cycle, err)) {
            reject(0, err);
            continue;
        }
        if (cycle < cursor) {
            reject(cycle, "cycle " + std::to_string(cycle) + " is out of order");
            continue;
        }

        const bool isDirective = j.contains("runProcedure");

        if (isDirective) {
            if (j.size() != 2) {
                reject(cycle, "directive must hold exactly 'cycle' and 'runProcedure'");
                continue;
            }
            const nlohmann::json& rp = j.at("runProcedure");
            if (!rp.is_object()) {
                reject(cycle, "'runProcedure' must be an object");
                continue;
            }
            uint64_t start = 0;
            if (!readU64(rp, "startWordId", start, err)) {
                reject(cycle, err);
                continue;
            }
            if (rp.size() != 1) {
                reject(cycle, "'runProcedure' must hold exactly 'startWordId'");
                continue;
            }
            script.directives_.push_back(ProcedureDirective{cycle, start});
            cursor = cycle;
            continue;
        }

        // Percept record.
        RawPercept p;
        p.cycle = cycle;
        const auto feats = j.find("features");
        if (feats == j.end() || !feats->is_array()) {
            reject(cycle, "percept needs a 'features' array");
            continue;
        }
        bool ok = true;
        for (const auto& f : *feats) {
            if (!f.is_string()) {
                reject(cycle, "'features' entries must be strings");
                ok = false;
                break;
            }
            p.features.push_back(f.get<std::string>());
        }
        if (!ok) continue;
        if (!readU64(j, "brightness", p.brightness, err) ||
            !readU64(j, "emotion", p.emotion, err)) {
            reject(cycle, err);
            continue;
        }
        if (j.size() != 4) {
            reject(cycle, "percept must hold exactly cycle/features/brightness/emotion");
            continue;
        }
        if (cycle % 2 != 0) {
            reject(cycle, "percept scheduled on an odd cycle; sensory frames are even");
            continue;
        }
        if (!script.percepts_.empty() && script.percepts_.back().cycle == cycle) {
            reject(cycle, "second percept in cycle " + std::to_string(cycle) + " dropped");
            continue;
        }
        script.percepts_.push_back(std::move(p));
        cursor = cycle;
    }

    // A rejected record can claim a cycle ahead of the cursor, so warnings
    // may be recorded out of order; the engine consumes them sorted.
    std::stable_sort(script.warnings_.begin(), script.warnings_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return script;
}

uint64_t StimulusScript::lastCycle() const {
    uint64_t last = 0;
    if (!percepts_.empty()) last = std::max(last, percepts_.back().cycle);
    if (!directives_.empty()) last = std::max(last, directives_.back().cycle);
    if (!warnings_.empty()) last = std::max(last, warnings_.back().first);
    return last;
}

}  // namespace cogsim
