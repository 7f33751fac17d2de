#include "cogsim/config.hpp"

#include <istream>
#include <set>
#include <stdexcept>

#include "cogsim/lfsr.hpp"

namespace cogsim {

namespace {

// Tracks which keys of one JSON object have been consumed and rejects
// leftovers, so typos in config files fail loudly instead of silently
// falling back to defaults.
class StrictObject {
public:
    StrictObject(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw std::invalid_argument("config: " + path_ + " must be a JSON object");
    }

    const nlohmann::json* find(const char* key) {
        const auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(key);
        return &*it;
    }

    uint64_t u64(const char* key, uint64_t fallback) {
        const nlohmann::json* v = find(key);
        if (!v) return fallback;
        requireUnsigned(*v, key);
        return v->get<uint64_t>();
    }

    bool boolean(const char* key, bool fallback) {
        const nlohmann::json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean())
            throw std::invalid_argument("config: " + path_ + "." + key + " must be a boolean");
        return v->get<bool>();
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!seen_.count(key))
                throw std::invalid_argument("config: unknown key " + path_ + "." + key);
        }
    }

    const std::string& path() const { return path_; }

    void requireUnsigned(const nlohmann::json& v, const char* key) const {
        // Accept any integral JSON number >= 0: parsed documents store these as
        // unsigned, but values assembled in code may carry a signed type.
        if (v.is_number_unsigned()) return;
        if (v.is_number_integer() && v.get<int64_t>() >= 0) return;
        throw std::invalid_argument("config: " + path_ + "." + key +
                                    " must be a nonnegative integer");
    }

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

unsigned toUnsigned(uint64_t v, const char* what) {
    if (v > 0xFFFFFFFFull)
        throw std::invalid_argument(std::string("config: ") + what + " is out of range");
    return static_cast<unsigned>(v);
}

}  // namespace

void EngineConfig::validate() const {
    layout.validate();
    analyzer.validate();
    // Constructing the register validates width, taps, and seed together.
    const Lfsr probe(lfsrWidth, lfsrTaps, seed);
    (void)probe;
    if (historyDepth == 0)
        throw std::invalid_argument("config: rehearsal.historyDepth must be positive");
    if (learnThreshold == 0)
        throw std::invalid_argument("config: learn.threshold must be positive");
    if (retention && *retention == 0)
        throw std::invalid_argument("config: retention must be positive when set");
    if (procedureMaxSteps == 0)
        throw std::invalid_argument("config: procedure.maxSteps must be positive");
    if (cycleRateHz == 0) throw std::invalid_argument("config: cycleRateHz must be positive");
}

EngineConfig EngineConfig::fromJson(const nlohmann::json& j) {
    EngineConfig cfg;
    StrictObject root(j, "$");

    if (const nlohmann::json* v = root.find("version")) {
        root.requireUnsigned(*v, "version");
        if (v->get<uint64_t>() != kConfigVersion)
            throw std::invalid_argument("config: unsupported version");
    }

    if (const nlohmann::json* v = root.find("vector")) {
        StrictObject vec(*v, "$.vector");
        cfg.layout.width = toUnsigned(vec.u64("width", cfg.layout.width), "vector.width");
        cfg.layout.brightnessBits =
            toUnsigned(vec.u64("brightnessBits", cfg.layout.brightnessBits),
                       "vector.brightnessBits");
        cfg.layout.emotionBits =
            toUnsigned(vec.u64("emotionBits", cfg.layout.emotionBits), "vector.emotionBits");
        vec.finish();
    }

    if (const nlohmann::json* v = root.find("lfsr")) {
        StrictObject lfsr(*v, "$.lfsr");
        cfg.lfsrWidth = toUnsigned(lfsr.u64("width", cfg.lfsrWidth), "lfsr.width");
        if (const nlohmann::json* taps = lfsr.find("taps")) {
            if (!taps->is_array() || taps->empty())
                throw std::invalid_argument("config: $.lfsr.taps must be a nonempty array");
            cfg.lfsrTaps.clear();
            for (const auto& t : *taps) {
                const bool integral =
                    t.is_number_unsigned() || (t.is_number_integer() && t.get<int64_t>() >= 0);
                if (!integral)
                    throw std::invalid_argument(
                        "config: $.lfsr.taps entries must be positive integers");
                cfg.lfsrTaps.push_back(toUnsigned(t.get<uint64_t>(), "lfsr.taps entry"));
            }
        }
        cfg.seed = lfsr.u64("seed", cfg.seed);
        lfsr.finish();
    }

    if (const nlohmann::json* v = root.find("weights")) {
        StrictObject w(*v, "$.weights");
        cfg.analyzer.weightBrightness = w.u64("brightness", cfg.analyzer.weightBrightness);
        cfg.analyzer.weightEmotion = w.u64("emotion", cfg.analyzer.weightEmotion);
        cfg.analyzer.weightMatch = w.u64("match", cfg.analyzer.weightMatch);
        cfg.analyzer.weightRecency = w.u64("recency", cfg.analyzer.weightRecency);
        w.finish();
    }

    cfg.analyzer.matchCap = root.u64("matchCap", cfg.analyzer.matchCap);
    cfg.analyzer.recencyMax = root.u64("recencyMax", cfg.analyzer.recencyMax);
    cfg.analyzer.recencyScale = root.u64("recencyScale", cfg.analyzer.recencyScale);
    cfg.analyzer.fadePeriod = root.u64("fadePeriod", cfg.analyzer.fadePeriod);
    cfg.analyzer.margin = root.u64("margin", cfg.analyzer.margin);
    cfg.analyzer.recognitionCues =
        toUnsigned(root.u64("recognitionCues", cfg.analyzer.recognitionCues), "recognitionCues");

    if (const nlohmann::json* v = root.find("rehearsal")) {
        StrictObject r(*v, "$.rehearsal");
        cfg.rehearsalDelay = r.u64("delay", cfg.rehearsalDelay);
        cfg.rehearsalTolerance = r.u64("tolerance", cfg.rehearsalTolerance);
        cfg.historyDepth = r.u64("historyDepth", cfg.historyDepth);
        r.finish();
    }

    if (const nlohmann::json* v = root.find("novelty")) {
        StrictObject n(*v, "$.novelty");
        cfg.noveltyEnabled = n.boolean("enabled", cfg.noveltyEnabled);
        n.finish();
    }

    if (const nlohmann::json* v = root.find("learn")) {
        StrictObject l(*v, "$.learn");
        cfg.learnThreshold = toUnsigned(l.u64("threshold", cfg.learnThreshold), "learn.threshold");
        cfg.layout.learnedBits =
            toUnsigned(l.u64("regionBits", cfg.layout.learnedBits), "learn.regionBits");
        l.finish();
    }

    if (const nlohmann::json* v = root.find("encoder")) {
        StrictObject e(*v, "$.encoder");
        cfg.autoRegister = e.boolean("autoRegister", cfg.autoRegister);
        e.finish();
    }

    if (const nlohmann::json* v = root.find("retention")) {
        if (v->is_null()) {
            cfg.retention.reset();
        } else {
            root.requireUnsigned(*v, "retention");
            cfg.retention = v->get<uint64_t>();
        }
    }

    if (const nlohmann::json* v = root.find("procedure")) {
        StrictObject p(*v, "$.procedure");
        cfg.procedureStepPerCycle = p.boolean("stepPerCycle", cfg.procedureStepPerCycle);
        cfg.procedureMaxSteps = p.u64("maxSteps", cfg.procedureMaxSteps);
        p.finish();
    }

    cfg.cycleRateHz = toUnsigned(root.u64("cycleRateHz", cfg.cycleRateHz), "cycleRateHz");
    cfg.maxCycles = root.u64("maxCycles", cfg.maxCycles);

    // Top-level seed aliases lfsr.seed and wins when both are present.
    if (const nlohmann::json* v = root.find("seed")) {
        root.requireUnsigned(*v, "seed");
        cfg.seed = v->get<uint64_t>();
    }

    root.finish();
    cfg.validate();
    return cfg;
}

EngineConfig EngineConfig::fromStream(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    return fromJson(j);
}

nlohmann::ordered_json EngineConfig::toJson() const {
    nlohmann::ordered_json j;
    j["version"] = kConfigVersion;
    j["vector"] = {{"width", layout.width},
                   {"brightnessBits", layout.brightnessBits},
                   {"emotionBits", layout.emotionBits}};
    j["lfsr"] = {{"width", lfsrWidth}, {"taps", lfsrTaps}, {"seed", seed}};
    j["weights"] = {{"brightness", analyzer.weightBrightness},
                    {"emotion", analyzer.weightEmotion},
                    {"match", analyzer.weightMatch},
                    {"recency", analyzer.weightRecency}};
    j["matchCap"] = analyzer.matchCap;
    j["recencyMax"] = analyzer.recencyMax;
    j["recencyScale"] = analyzer.recencyScale;
    j["fadePeriod"] = analyzer.fadePeriod;
    j["margin"] = analyzer.margin;
    j["recognitionCues"] = analyzer.recognitionCues;
    j["rehearsal"] = {{"delay", rehearsalDelay},
                      {"tolerance", rehearsalTolerance},
                      {"historyDepth", historyDepth}};
    j["novelty"] = {{"enabled", noveltyEnabled}};
    j["learn"] = {{"threshold", learnThreshold}, {"regionBits", layout.learnedBits}};
    j["encoder"] = {{"autoRegister", autoRegister}};
    if (retention)
        j["retention"] = *retention;
    else
        j["retention"] = nullptr;
    j["procedure"] = {{"stepPerCycle", procedureStepPerCycle}, {"maxSteps", procedureMaxSteps}};
    j["cycleRateHz"] = cycleRateHz;
    j["maxCycles"] = maxCycles;
    return j;
}

std::string EngineConfig::canonicalText() const { return toJson().dump(); }

}  // namespace cogsim
