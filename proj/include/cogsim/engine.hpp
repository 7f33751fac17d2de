#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cogsim/analyzer.hpp"
#include "cogsim/config.hpp"
#include "cogsim/cue_editor.hpp"
#include "cogsim/encoder.hpp"
#include "cogsim/memorizer.hpp"
#include "cogsim/memory_store.hpp"
#include "cogsim/stimulus.hpp"
#include "cogsim/trace.hpp"

namespace cogsim {

inline constexpr int kSnapshotVersion = 1;

// The deterministic cycle loop. Even cycles are sensory frames (encode the
// scripted percept, learn combinations, gate attention); odd cycles are
// recall frames (draw a pseudorandom cue from short-term memory, probe
// long-term memory, gate attention, fire novelty memorization on a miss).
// Directives run after the frame body of their cycle. The trace emitted via
// the attached sinks is a pure function of (config, script, seed).
class Engine {
public:
    Engine(EngineConfig cfg, StimulusScript script);

    // Sinks are borrowed, not owned, and must outlive the engine's stepping.
    void addSink(TraceSink* sink);

    uint64_t cycle() const { return cycle_; }  // next cycle to execute
    void step();
    void runUntil(uint64_t cycleExclusive);  // must not exceed config.maxCycles

    const EngineConfig& config() const { return cfg_; }
    const MemoryStore& memory() const { return store_; }
    MemoryStore& memory() { return store_; }  // scenario preloading
    const std::optional<StmState>& stm() const { return stm_; }
    const SymbolTable& symbols() const { return table_; }
    const CueEditor& cueEditor() const { return editor_; }
    bool learningDisabled() const { return learningDisabled_; }
    bool procedureActive() const { return activeProc_.has_value(); }

    // Complete serialization of mutable state plus the canonical config.
    // The stimulus script is NOT embedded; restore() re-seeks the provided
    // script to the snapshot cycle.
    nlohmann::ordered_json snapshot() const;
    static Engine restore(const nlohmann::json& snapshot, StimulusScript script);
    // Rejects the snapshot when its embedded config differs from `expected`.
    static Engine restore(const nlohmann::json& snapshot, StimulusScript script,
                          const EngineConfig& expected);

private:
    struct ActiveProcedure {
        uint64_t startWordId;
        uint64_t currentWordId;
        uint64_t stepIndex;
    };

    void emit(uint64_t cycle, EventKind kind, EventPayload payload);
    void warn(uint64_t cycle, std::string message);
    void emitScriptWarnings(uint64_t cycle);
    void sensoryFrame(uint64_t cycle);
    void recallFrame(uint64_t cycle);
    void enterStm(const BitWord& vector, const ImportanceIndex& importance, FrameSource source,
                  std::optional<uint64_t> wordId, uint64_t cycle);
    void commitFromTrigger(const MemorizeTrigger& trigger, const BitWord& vector,
                           uint64_t cycle);
    void runDirectives(uint64_t cycle);
    void stepActiveProcedure(uint64_t cycle);
    void seekScript();

    EngineConfig cfg_;
    StimulusScript script_;
    MemoryStore store_;
    CueEditor editor_;
    SymbolTable table_;
    CombinationDetector detector_;
    RehearsalFilter rehearsal_;
    CommitGuard guard_;
    std::optional<StmState> stm_;
    std::optional<ActiveProcedure> activeProc_;
    bool learningDisabled_ = false;
    uint64_t cycle_ = 0;
    size_t perceptIdx_ = 0;
    size_t directiveIdx_ = 0;
    size_t warnIdx_ = 0;
    std::vector<TraceSink*> sinks_;
};

}  // namespace cogsim
