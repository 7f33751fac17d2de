#include "cogsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "cogsim/procedures.hpp"

namespace cogsim {

namespace {

EngineConfig validated(EngineConfig cfg) {
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json importanceToJson(const ImportanceIndex& idx) {
    return {{"brightness", idx.brightness},
            {"emotion", idx.emotion},
            {"matchedCues", idx.matchedCues},
            {"recency", idx.recency},
            {"total", idx.total}};
}

ImportanceIndex importanceFromJson(const nlohmann::json& j) {
    ImportanceIndex idx;
    idx.brightness = j.at("brightness").get<uint64_t>();
    idx.emotion = j.at("emotion").get<uint64_t>();
    idx.matchedCues = j.at("matchedCues").get<uint64_t>();
    idx.recency = j.at("recency").get<uint64_t>();
    idx.total = j.at("total").get<uint64_t>();
    return idx;
}

}  // namespace

Engine::Engine(EngineConfig cfg, StimulusScript script)
    : cfg_(validated(std::move(cfg))),
      script_(std::move(script)),
      store_(cfg_.layout),
      editor_(cfg_.layout, cfg_.lfsrWidth, cfg_.lfsrTaps, cfg_.seed),
      table_(cfg_.layout),
      detector_(cfg_.learnThreshold),
      rehearsal_(cfg_.rehearsalDelay, cfg_.rehearsalTolerance, cfg_.historyDepth),
      guard_(cfg_.rehearsalDelay + cfg_.rehearsalTolerance) {}

void Engine::addSink(TraceSink* sink) {
    if (sink != nullptr) sinks_.push_back(sink);
}

void Engine::emit(uint64_t cycle, EventKind kind, EventPayload payload) {
    const TraceEvent event{cycle, kind, std::move(payload)};
    for (TraceSink* sink : sinks_) sink->onEvent(event);
}

void Engine::warn(uint64_t cycle, std::string message) {
    emit(cycle, EventKind::Warning, WarningPayload{std::move(message)});
}

void Engine::emitScriptWarnings(uint64_t cycle) {
    const auto& warnings = script_.warnings();
    while (warnIdx_ < warnings.size() && warnings[warnIdx_].first <= cycle) {
        warn(cycle, warnings[warnIdx_].second);
        ++warnIdx_;
    }
}

void Engine::step() {
    const uint64_t c = cycle_;
    emitScriptWarnings(c);

    if (activeProc_) {
        // Procedure execution bypasses short-term memory entirely: both
        // frame flavors pause until the chain finishes.
        stepActiveProcedure(c);
    } else if (c % 2 == 0) {
        sensoryFrame(c);
    } else {
        recallFrame(c);
    }

    runDirectives(c);

    if (cfg_.retention) store_.clearUnused(c, cfg_.retention);
    ++cycle_;
}

void Engine::runUntil(uint64_t cycleExclusive) {
    if (cycleExclusive > cfg_.maxCycles)
        throw std::invalid_argument("engine: runUntil exceeds config.maxCycles");
    while (cycle_ < cycleExclusive) step();
}

void Engine::sensoryFrame(uint64_t c) {
    const auto& percepts = script_.percepts();
    // Percepts scheduled while a procedure held the frame are dropped, not queued.
    while (perceptIdx_ < percepts.size() && percepts[perceptIdx_].cycle < c) ++perceptIdx_;
    if (perceptIdx_ >= percepts.size() || percepts[perceptIdx_].cycle != c) return;  // idle
    const RawPercept& percept = percepts[perceptIdx_];
    ++perceptIdx_;

    EncodeResult enc{BitWord(cfg_.layout.width), {}};
    try {
        enc = encode(table_, percept, cfg_.autoRegister);
    } catch (const std::exception& e) {
        warn(c, std::string("percept rejected: ") + e.what());
        return;
    }
    for (const std::string& note : enc.warnings) warn(c, note);

    emit(c, EventKind::SensoryFrame,
         SensoryFramePayload{enc.vector.toHex(), cfg_.layout.brightnessOf(enc.vector),
                             cfg_.layout.emotionOf(enc.vector)});

    // Need-to-learn watches the exact named-bit combination of each frame.
    const std::vector<unsigned> named =
        enc.vector.assertedIn(cfg_.layout.namedBegin(), cfg_.layout.namedEnd());
    if (const auto proposal = detector_.observeCombination(named, table_)) {
        if (!learningDisabled_) {
            if (const auto bit = table_.learnFeature(*proposal)) {
                emit(c, EventKind::FeatureLearned, FeatureLearnedPayload{*bit, *proposal});
            } else {
                learningDisabled_ = true;
                warn(c, "learned-feature region exhausted; feature learning disabled");
            }
        }
    }

    const ImportanceIndex candidate = importance(enc.vector, cfg_.layout, 0, std::nullopt, c,
                                                 FrameSource::Sensory, cfg_.analyzer);
    const uint64_t effective = stm_ ? stmEffectiveImportance(*stm_, c, cfg_.analyzer) : 0;
    if (attentionGate(candidate, effective, cfg_.analyzer)) {
        emit(c, EventKind::AttentionTransfer,
             AttentionTransferPayload{"sensory", std::nullopt, enc.vector.toHex(), candidate,
                                      effective});
        enterStm(enc.vector, candidate, FrameSource::Sensory, std::nullopt, c);
    }
}

void Engine::recallFrame(uint64_t c) {
    if (!stm_) return;  // nothing conscious, nothing to cue
    const std::optional<CueQuery> cue = editor_.nextCueQuery(stm_->vector);
    if (!cue) return;  // image has no asserted general features

    const unsigned cueBits = cue->mask.popcount();
    emit(c, EventKind::RecallAttempt,
         RecallAttemptPayload{cue->mask.toHex(), cue->values.toHex(), cueBits});

    const std::optional<RecallResult> result = store_.recall(*cue, c);
    if (!result) {
        emit(c, EventKind::NoMatch, NoMatchPayload{});
        if (cfg_.noveltyEnabled) {
            if (const auto trigger = noveltyTrigger(true, false))
                commitFromTrigger(*trigger, stm_->vector, c);
        }
        return;
    }

    emit(c, EventKind::Match,
         MatchPayload{result->wordId, result->matchCount, cueBits,
                      recognitionFlag(cueBits, cfg_.analyzer), result->vector.toHex()});

    const ImportanceIndex candidate =
        importance(result->vector, cfg_.layout, result->matchCount, result->writeCycle, c,
                   FrameSource::Recall, cfg_.analyzer);
    const uint64_t effective = stmEffectiveImportance(*stm_, c, cfg_.analyzer);
    if (attentionGate(candidate, effective, cfg_.analyzer)) {
        emit(c, EventKind::AttentionTransfer,
             AttentionTransferPayload{"recall", result->wordId, result->vector.toHex(),
                                      candidate, effective});
        enterStm(result->vector, candidate, FrameSource::Recall, result->wordId, c);
    }
    // A matched-but-rejected recall leaves no side effects beyond the
    // winner's refreshed lastMatchCycle; the next frame tries a new cue.
}

void Engine::enterStm(const BitWord& vector, const ImportanceIndex& idx, FrameSource source,
                      std::optional<uint64_t> wordId, uint64_t c) {
    stm_ = StmState{vector, c, idx, source, wordId};
    if (const auto trigger = rehearsal_.observeStmEntry(vector, c))
        commitFromTrigger(*trigger, vector, c);
}

void Engine::commitFromTrigger(const MemorizeTrigger& trigger, const BitWord& vector,
                               uint64_t c) {
    const std::optional<uint64_t> id = guard_.commitGuarded(store_, vector, c, trigger);
    if (!id) return;  // duplicate suppressed: one word per image per window
    const char* reason = trigger.reason == TriggerReason::Rehearsal ? "rehearsal" : "novelty";
    emit(c, EventKind::MemorizationWrite, MemorizationWritePayload{*id, reason, vector.toHex()});
}

void Engine::runDirectives(uint64_t c) {
    const auto& directives = script_.directives();
    while (directiveIdx_ < directives.size() && directives[directiveIdx_].cycle == c) {
        const ProcedureDirective d = directives[directiveIdx_];
        ++directiveIdx_;
        if (activeProc_) {
            warn(c, "procedure already running; directive for word " +
                        std::to_string(d.startWordId) + " ignored");
            continue;
        }
        if (!store_.contains(d.startWordId)) {
            warn(c, "procedure start word " + std::to_string(d.startWordId) + " does not exist");
            continue;
        }
        if (cfg_.procedureStepPerCycle) {
            activeProc_ = ActiveProcedure{d.startWordId, d.startWordId, 0};
            stepActiveProcedure(c);  // first step lands on the directive cycle
        } else {
            const ProcedureResult run = runProcedure(store_, d.startWordId, cfg_.procedureMaxSteps);
            for (size_t i = 0; i < run.visited.size(); ++i)
                emit(c, EventKind::ProcedureStep,
                     ProcedureStepPayload{d.startWordId, i, run.visited[i]});
            if (run.halted == ProcedureHalt::StepLimit)
                warn(c, "procedure from word " + std::to_string(d.startWordId) +
                            " hit the step limit");
        }
    }
}

void Engine::stepActiveProcedure(uint64_t c) {
    ActiveProcedure& p = *activeProc_;
    emit(c, EventKind::ProcedureStep, ProcedureStepPayload{p.startWordId, p.stepIndex, p.currentWordId});
    ++p.stepIndex;
    const std::optional<uint64_t> next = store_.successorOf(p.currentWordId);
    if (!next || !store_.contains(*next)) {
        activeProc_.reset();
        return;
    }
    if (p.stepIndex >= cfg_.procedureMaxSteps) {
        warn(c, "procedure from word " + std::to_string(p.startWordId) + " hit the step limit");
        activeProc_.reset();
        return;
    }
    p.currentWordId = *next;
}

void Engine::seekScript() {
    const auto& percepts = script_.percepts();
    perceptIdx_ = std::lower_bound(percepts.begin(), percepts.end(), cycle_,
                                   [](const RawPercept& p, uint64_t c) { return p.cycle < c; }) -
                  percepts.begin();
    const auto& directives = script_.directives();
    directiveIdx_ =
        std::lower_bound(directives.begin(), directives.end(), cycle_,
                         [](const ProcedureDirective& d, uint64_t c) { return d.cycle < c; }) -
        directives.begin();
    const auto& warnings = script_.warnings();
    warnIdx_ = std::lower_bound(warnings.begin(), warnings.end(), cycle_,
                                [](const auto& w, uint64_t c) { return w.first < c; }) -
               warnings.begin();
}

nlohmann::ordered_json Engine::snapshot() const {
    nlohmann::ordered_json snap;
    snap["version"] = kSnapshotVersion;
    snap["config"] = cfg_.toJson();
    snap["cycle"] = cycle_;
    snap["lfsrState"] = editor_.lfsrState();

    nlohmann::ordered_json words = nlohmann::ordered_json::array();
    for (const MemoryWordView& w : store_.words()) {
        nlohmann::ordered_json jw;
        jw["wordId"] = w.wordId;
        jw["bits"] = w.vector.toHex();
        jw["writeCycle"] = w.writeCycle;
        jw["lastMatchCycle"] = w.lastMatchCycle;
        if (w.successor)
            jw["successor"] = *w.successor;
        else
            jw["successor"] = nullptr;
        words.push_back(std::move(jw));
    }
    snap["memory"] = {{"nextWordId", store_.nextWordId()}, {"words", std::move(words)}};

    if (stm_) {
        nlohmann::ordered_json stm;
        stm["vector"] = stm_->vector.toHex();
        stm["entryCycle"] = stm_->entryCycle;
        stm["entryImportance"] = importanceToJson(stm_->entryImportance);
        stm["source"] = stm_->source == FrameSource::Sensory ? "sensory" : "recall";
        if (stm_->sourceWordId)
            stm["sourceWordId"] = *stm_->sourceWordId;
        else
            stm["sourceWordId"] = nullptr;
        snap["stm"] = std::move(stm);
    } else {
        snap["stm"] = nullptr;
    }

    nlohmann::ordered_json history = nlohmann::ordered_json::array();
    for (const RehearsalFilter::HistoryEntry& e : rehearsal_.history())
        history.push_back({{"vector", e.vector.toHex()}, {"cycle", e.cycle},
                           {"consumed", e.consumed}});
    snap["rehearsal"] = std::move(history);

    nlohmann::ordered_json commits = nlohmann::ordered_json::array();
    for (const CommitGuard::CommitRecord& r : guard_.recentCommits())
        commits.push_back({{"vector", r.vector.toHex()}, {"cycle", r.cycle}});
    snap["commits"] = std::move(commits);

    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    {
        // serialize in allocation (bit) order for readable, replayable output
        std::vector<std::pair<unsigned, std::string>> byBit;
        for (const auto& [name, bit] : table_.names()) byBit.emplace_back(bit, name);
        std::sort(byBit.begin(), byBit.end());
        for (const auto& [bit, name] : byBit)
            names.push_back({{"name", name}, {"bit", bit}});
    }
    nlohmann::ordered_json learned = nlohmann::ordered_json::array();
    for (const auto& [bit, def] : table_.learnedDefs())
        learned.push_back({{"bit", bit}, {"definition", def}});
    snap["symbols"] = {{"names", std::move(names)}, {"learned", std::move(learned)}};

    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (const auto& [set, count] : detector_.counts())
        counts.push_back({{"set", set}, {"count", count}});
    nlohmann::ordered_json proposed = nlohmann::ordered_json::array();
    for (const auto& set : detector_.proposed()) proposed.push_back(set);
    snap["detector"] = {{"counts", std::move(counts)}, {"proposed", std::move(proposed)}};

    snap["learningDisabled"] = learningDisabled_;

    if (activeProc_) {
        snap["activeProcedure"] = {{"startWordId", activeProc_->startWordId},
                                   {"currentWordId", activeProc_->currentWordId},
                                   {"stepIndex", activeProc_->stepIndex}};
    } else {
        snap["activeProcedure"] = nullptr;
    }
    return snap;
}

Engine Engine::restore(const nlohmann::json& snapshot, StimulusScript script) {
    if (!snapshot.is_object() || !snapshot.contains("version") ||
        snapshot.at("version").get<uint64_t>() != kSnapshotVersion)
        throw std::invalid_argument("snapshot: missing or unsupported version");

    const EngineConfig cfg = EngineConfig::fromJson(snapshot.at("config"));
    Engine engine(cfg, std::move(script));
    const VectorLayout& layout = cfg.layout;

    const nlohmann::json& mem = snapshot.at("memory");
    std::vector<MemoryWordView> words;
    for (const nlohmann::json& jw : mem.at("words")) {
        MemoryWordView w{jw.at("wordId").get<uint64_t>(),
                         jw.at("writeCycle").get<uint64_t>(),
                         jw.at("lastMatchCycle").get<uint64_t>(),
                         jw.at("successor").is_null()
                             ? std::nullopt
                             : std::optional<uint64_t>(jw.at("successor").get<uint64_t>()),
                         BitWord::fromHex(jw.at("bits").get<std::string>(), layout.width)};
        words.push_back(std::move(w));
    }
    engine.store_ = MemoryStore::fromWords(layout, words, mem.at("nextWordId").get<uint64_t>());

    engine.editor_.reset(snapshot.at("lfsrState").get<uint64_t>());

    const nlohmann::json& stm = snapshot.at("stm");
    if (stm.is_null()) {
        engine.stm_.reset();
    } else {
        StmState state{BitWord::fromHex(stm.at("vector").get<std::string>(), layout.width),
                       stm.at("entryCycle").get<uint64_t>(),
                       importanceFromJson(stm.at("entryImportance")),
                       stm.at("source").get<std::string>() == "sensory" ? FrameSource::Sensory
                                                                        : FrameSource::Recall,
                       stm.at("sourceWordId").is_null()
                           ? std::nullopt
                           : std::optional<uint64_t>(stm.at("sourceWordId").get<uint64_t>())};
        engine.stm_ = std::move(state);
    }

    std::deque<RehearsalFilter::HistoryEntry> history;
    for (const nlohmann::json& je : snapshot.at("rehearsal")) {
        BitWord v = BitWord::fromHex(je.at("vector").get<std::string>(), layout.width);
        const uint64_t digest = v.digest();
        history.push_back(RehearsalFilter::HistoryEntry{digest, std::move(v),
                                                        je.at("cycle").get<uint64_t>(),
                                                        je.at("consumed").get<bool>()});
    }
    engine.rehearsal_.restoreHistory(std::move(history));

    std::deque<CommitGuard::CommitRecord> commits;
    for (const nlohmann::json& jr : snapshot.at("commits")) {
        BitWord v = BitWord::fromHex(jr.at("vector").get<std::string>(), layout.width);
        const uint64_t digest = v.digest();
        commits.push_back(
            CommitGuard::CommitRecord{digest, std::move(v), jr.at("cycle").get<uint64_t>()});
    }
    engine.guard_.restoreCommits(std::move(commits));

    const nlohmann::json& symbols = snapshot.at("symbols");
    std::vector<std::pair<std::string, unsigned>> names;
    for (const nlohmann::json& jn : symbols.at("names"))
        names.emplace_back(jn.at("name").get<std::string>(), jn.at("bit").get<unsigned>());
    std::map<unsigned, std::vector<unsigned>> learned;
    for (const nlohmann::json& jl : symbols.at("learned"))
        learned.emplace(jl.at("bit").get<unsigned>(),
                        jl.at("definition").get<std::vector<unsigned>>());
    engine.table_ = SymbolTable::fromState(layout, names, learned);

    const nlohmann::json& detector = snapshot.at("detector");
    std::map<std::vector<unsigned>, uint64_t> counts;
    for (const nlohmann::json& jc : detector.at("counts"))
        counts.emplace(jc.at("set").get<std::vector<unsigned>>(), jc.at("count").get<uint64_t>());
    std::set<std::vector<unsigned>> proposed;
    for (const nlohmann::json& jp : detector.at("proposed"))
        proposed.insert(jp.get<std::vector<unsigned>>());
    engine.detector_.restoreState(std::move(counts), std::move(proposed));

    engine.learningDisabled_ = snapshot.at("learningDisabled").get<bool>();

    const nlohmann::json& proc = snapshot.at("activeProcedure");
    if (proc.is_null()) {
        engine.activeProc_.reset();
    } else {
        engine.activeProc_ = ActiveProcedure{proc.at("startWordId").get<uint64_t>(),
                                             proc.at("currentWordId").get<uint64_t>(),
                                             proc.at("stepIndex").get<uint64_t>()};
    }

    engine.cycle_ = snapshot.at("cycle").get<uint64_t>();
    engine.seekScript();
    return engine;
}

Engine Engine::restore(const nlohmann::json& snapshot, StimulusScript script,
                       const EngineConfig& expected) {
    if (!snapshot.is_object() || !snapshot.contains("config"))
        throw std::invalid_argument("snapshot: missing config");
    const EngineConfig embedded = EngineConfig::fromJson(snapshot.at("config"));
    // maxCycles is a run bound, not part of the simulation's identity: resuming
    // a snapshot with a larger budget is the point of taking one.
    EngineConfig identity = expected;
    identity.maxCycles = embedded.maxCycles;
    if (embedded.canonicalText() != identity.canonicalText())
        throw std::invalid_argument("snapshot: embedded config differs from the supplied config");
    Engine engine = restore(snapshot, std::move(script));
    engine.cfg_.maxCycles = expected.maxCycles;
    return engine;
}

}  // namespace cogsim
