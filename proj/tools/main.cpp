#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogsim/config.hpp"
#include "cogsim/engine.hpp"
#include "cogsim/report.hpp"
#include "cogsim/stimulus.hpp"

namespace {

using namespace cogsim;

constexpr int kExitOk = 0;
constexpr int kExitDivergence = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EngineConfig loadConfig(const std::string& path, std::optional<uint64_t> seed,
                        std::optional<uint64_t> maxCycles) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    EngineConfig cfg = EngineConfig::fromStream(in);
    if (seed) cfg.seed = *seed;
    if (maxCycles) cfg.maxCycles = *maxCycles;
    cfg.validate();
    return cfg;
}

StimulusScript loadScript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open stimulus script: " + path);
    return StimulusScript::parse(in);
}

nlohmann::json loadJsonFile(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw UsageError(std::string("cannot open ") + what + ": " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw UsageError(std::string(what) + " is not valid JSON: " + e.what());
    }
    return j;
}

// Width inference for store-level commands: a dump line's hex payload has
// width/4 characters. The whole word is treated as cue-able general bits.
VectorLayout trivialLayoutForDump(const std::string& path, size_t fallbackHexLen) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open memory dump: " + path);
    std::string line;
    size_t hexLen = fallbackHexLen;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("bits") ||
            !j.at("bits").is_string())
            throw UsageError("memory dump line is not a word record");
        hexLen = j.at("bits").get<std::string>().size();
        break;
    }
    if (hexLen == 0) throw UsageError("cannot infer word width (empty dump, no operands)");
    return VectorLayout{static_cast<unsigned>(hexLen * 4), 0, 0, 0};
}

MemoryStore loadDump(const std::string& path, const VectorLayout& layout) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open memory dump: " + path);
    return MemoryStore::loadJsonl(in, layout);
}

void writeDump(const MemoryStore& store, const std::string& outPath) {
    if (outPath.empty()) {
        store.dumpJsonl(std::cout);
        return;
    }
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + outPath);
    store.dumpJsonl(out);
    if (!out) throw UsageError("failed writing output file: " + outPath);
}

struct RunArgs {
    std::string configPath;
    std::string scriptPath;
    std::string tracePath;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> maxCycles;
    bool quiet = false;
    std::string snapshotOut;
    std::string snapshotIn;
};

int cmdRun(const RunArgs& args) {
    const EngineConfig cfg = loadConfig(args.configPath, args.seed, args.maxCycles);
    StimulusScript script = loadScript(args.scriptPath);

    std::optional<Engine> engine;
    if (args.snapshotIn.empty()) {
        engine.emplace(cfg, std::move(script));
    } else {
        const nlohmann::json snap = loadJsonFile(args.snapshotIn, "snapshot");
        engine.emplace(Engine::restore(snap, std::move(script), cfg));
    }

    std::ofstream traceFile(args.tracePath, std::ios::binary);
    if (!traceFile) throw UsageError("cannot open trace output file: " + args.tracePath);
    JsonlFileSink fileSink(traceFile, cfg.cycleRateHz);
    ReportAccumulator accumulator;
    engine->addSink(&fileSink);
    engine->addSink(&accumulator);

    engine->runUntil(cfg.maxCycles);

    traceFile.flush();
    if (!traceFile) throw UsageError("failed writing trace file: " + args.tracePath);

    if (!args.snapshotOut.empty()) {
        std::ofstream snapFile(args.snapshotOut, std::ios::binary);
        if (!snapFile) throw UsageError("cannot open snapshot output file: " + args.snapshotOut);
        snapFile << engine->snapshot().dump(2) << '\n';
        if (!snapFile) throw UsageError("failed writing snapshot file: " + args.snapshotOut);
    }

    if (!args.quiet) {
        const RunReport report = accumulator.finish(cfg.maxCycles, engine->memory().size());
        std::cout << report.toJson().dump(2) << '\n';
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string tracePath;
    std::string configPath;
    std::string scriptPath;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> maxCycles;
    bool quiet = false;
};

int cmdReplayVerify(const VerifyArgs& args) {
    const EngineConfig cfg = loadConfig(args.configPath, args.seed, args.maxCycles);
    StimulusScript script = loadScript(args.scriptPath);

    std::ifstream traceFile(args.tracePath, std::ios::binary);
    if (!traceFile) throw UsageError("cannot open trace file: " + args.tracePath);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(traceFile, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    ComparingSink compare(std::move(lines), cfg.cycleRateHz);
    Engine engine(cfg, std::move(script));
    engine.addSink(&compare);
    while (engine.cycle() < cfg.maxCycles && !compare.diverged()) engine.step();

    if (compare.diverged()) {
        const auto& d = *compare.divergence();
        std::cerr << "divergence at cycle " << d.cycle << " (trace line " << d.lineNumber
                  << ")\n  recorded: " << d.expected << "\n  re-run:   " << d.actual << '\n';
        return kExitDivergence;
    }
    if (!compare.fullyMatched()) {
        std::cerr << "recorded trace has " << (compare.expectedCount() - compare.consumed())
                  << " extra line(s) beyond the re-run, starting at line "
                  << (compare.consumed() + 1) << '\n';
        return kExitDivergence;
    }
    if (!args.quiet)
        std::cout << "verified: " << compare.consumed() << " events match" << '\n';
    return kExitOk;
}

int cmdOracle(const std::string& memoryPath, const std::string& maskHex,
              const std::string& valuesHex) {
    if (maskHex.size() != valuesHex.size())
        throw UsageError("mask and values must have the same hex length");
    const VectorLayout layout = trivialLayoutForDump(memoryPath, maskHex.size());
    if (maskHex.size() * 4 != layout.width)
        throw UsageError("cue operands are " + std::to_string(maskHex.size() * 4) +
                         " bits but the dump stores " + std::to_string(layout.width) +
                         "-bit words");
    const MemoryStore store = loadDump(memoryPath, layout);
    const CueQuery cue{BitWord::fromHex(maskHex, layout.width),
                       BitWord::fromHex(valuesHex, layout.width)};
    validateCue(cue, layout);  // rejects the empty subset et al.

    const std::vector<uint64_t> matches = store.matchesAll(cue);
    nlohmann::ordered_json out;
    out["matches"] = matches;
    out["matchCount"] = matches.size();
    if (matches.empty())
        out["winner"] = nullptr;
    else
        out["winner"] = matches.back();
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmdDumpMemory(const std::string& snapshotPath, const std::string& outPath) {
    const nlohmann::json snap = loadJsonFile(snapshotPath, "snapshot");
    Engine engine = Engine::restore(snap, StimulusScript::empty());
    writeDump(engine.memory(), outPath);
    return kExitOk;
}

int cmdLink(const std::string& memoryPath, uint64_t from, uint64_t to,
            const std::string& outPath) {
    const VectorLayout layout = trivialLayoutForDump(memoryPath, 0);
    MemoryStore store = loadDump(memoryPath, layout);
    store.link(from, to);
    writeDump(store, outPath);
    return kExitOk;
}

int cmdStats(const std::string& tracePath) {
    std::ifstream in(tracePath, std::ios::binary);
    if (!in) throw UsageError("cannot open trace file: " + tracePath);

    ReportAccumulator accumulator;
    uint64_t lastCycle = 0;
    bool any = false;
    std::string line;
    size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("cycle") || !j.contains("kind") ||
            !j.contains("payload"))
            throw UsageError("trace line " + std::to_string(lineNo) + " is not a trace event");

        const std::string kindName = j.at("kind").get<std::string>();
        std::optional<EventKind> kind;
        for (size_t k = 0; k < 9; ++k) {
            if (kindName == eventKindName(static_cast<EventKind>(k))) {
                kind = static_cast<EventKind>(k);
                break;
            }
        }
        if (!kind) throw UsageError("trace line " + std::to_string(lineNo) +
                                    " has unknown kind '" + kindName + "'");

        TraceEvent event;
        event.cycle = j.at("cycle").get<uint64_t>();
        event.kind = *kind;
        const nlohmann::json& payload = j.at("payload");
        if (*kind == EventKind::Match) {
            MatchPayload p;
            p.cueBits = payload.value("cueBits", 0u);
            event.payload = std::move(p);
        } else if (*kind == EventKind::FeatureLearned) {
            FeatureLearnedPayload p;
            p.bit = payload.value("bit", 0u);
            p.definition = payload.value("definition", std::vector<unsigned>{});
            event.payload = std::move(p);
        } else {
            // Counting only: the accumulator never inspects payloads of the
            // remaining kinds, so a placeholder payload is sufficient.
            event.payload = WarningPayload{};
        }
        accumulator.onEvent(event);
        lastCycle = std::max(lastCycle, event.cycle);
        any = true;
    }

    // Idle cycles after the last event are invisible in a trace, so the span
    // here is "cycles with any activity"; finalLtmSize is likewise unknown.
    const uint64_t span = any ? lastCycle + 1 : 0;
    const RunReport report = accumulator.finish(span, std::nullopt);
    std::cout << report.toJson().dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic cycle simulator of an associative-memory cognitive model"};
    app.require_subcommand(1);

    RunArgs runArgs;
    CLI::App* run = app.add_subcommand("run", "Run a simulation and write its event trace");
    run->add_option("--config", runArgs.configPath, "Engine config JSON file")->required();
    run->add_option("--script", runArgs.scriptPath, "Stimulus script (JSON Lines)")->required();
    run->add_option("--trace", runArgs.tracePath, "Trace output path (JSON Lines)")->required();
    run->add_option("--seed", runArgs.seed, "Override the config seed");
    run->add_option("--max-cycles", runArgs.maxCycles, "Override config maxCycles");
    run->add_flag("--quiet", runArgs.quiet, "Suppress the run report on stdout");
    run->add_option("--snapshot-out", runArgs.snapshotOut, "Write the final engine state here");
    run->add_option("--snapshot-in", runArgs.snapshotIn, "Resume from this engine snapshot");

    VerifyArgs verifyArgs;
    CLI::App* verify =
        app.add_subcommand("replay-verify", "Re-run a config+script and compare to a trace");
    verify->add_option("--trace", verifyArgs.tracePath, "Recorded trace file")->required();
    verify->add_option("--config", verifyArgs.configPath, "Engine config JSON file")->required();
    verify->add_option("--script", verifyArgs.scriptPath, "Stimulus script")->required();
    verify->add_option("--seed", verifyArgs.seed, "Override the config seed");
    verify->add_option("--max-cycles", verifyArgs.maxCycles, "Override config maxCycles");
    verify->add_flag("--quiet", verifyArgs.quiet, "Suppress the success message");

    std::string oracleMemory, oracleMask, oracleValues;
    CLI::App* oracle =
        app.add_subcommand("oracle", "Brute-force cue matching against a memory dump");
    oracle->add_option("--memory", oracleMemory, "Memory dump (JSON Lines)")->required();
    oracle->add_option("--mask", oracleMask, "Cue mask, big-endian hex")->required();
    oracle->add_option("--values", oracleValues, "Cue values, big-endian hex")->required();

    std::string dumpSnapshot, dumpOut;
    CLI::App* dump =
        app.add_subcommand("dump-memory", "Extract the memory dump from an engine snapshot");
    dump->add_option("--snapshot", dumpSnapshot, "Engine snapshot JSON file")->required();
    dump->add_option("--out", dumpOut, "Output path (default: stdout)");

    std::string linkMemory, linkOut;
    uint64_t linkFrom = 0, linkTo = 0;
    CLI::App* link =
        app.add_subcommand("link", "Set a successor link between two words of a memory dump");
    link->add_option("--memory", linkMemory, "Memory dump (JSON Lines)")->required();
    link->add_option("--from", linkFrom, "Word that gets the outgoing link")->required();
    link->add_option("--to", linkTo, "Successor word")->required();
    link->add_option("--out", linkOut, "Output path (default: stdout)");

    std::string statsTrace;
    CLI::App* stats = app.add_subcommand("stats", "Recompute run statistics from a trace file");
    stats->add_option("--trace", statsTrace, "Trace file (JSON Lines)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) return cmdRun(runArgs);
        if (*verify) return cmdReplayVerify(verifyArgs);
        if (*oracle) return cmdOracle(oracleMemory, oracleMask, oracleValues);
        if (*dump) return cmdDumpMemory(dumpSnapshot, dumpOut);
        if (*link) return cmdLink(linkMemory, linkFrom, linkTo, linkOut);
        if (*stats) return cmdStats(statsTrace);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;  // unreachable with require_subcommand(1)
}
