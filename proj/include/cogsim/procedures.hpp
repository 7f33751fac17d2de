#pragma once

#include <cstdint>
#include <vector>

#include "cogsim/memory_store.hpp"

namespace cogsim {

enum class ProcedureHalt { Completed, StepLimit };

struct ProcedureResult {
    std::vector<uint64_t> visited;  // in traversal order, starting at startId
    ProcedureHalt halted = ProcedureHalt::Completed;
};

// Records a successor link between two existing words. Overwrites any prior
// link from `fromId`. Throws std::invalid_argument for unknown ids.
void linkWords(MemoryStore& store, uint64_t fromId, uint64_t toId);

// Walks successor links from startId, visiting at most maxSteps words.
// A word without a successor -- or whose successor was cleared from the
// store -- ends the walk as Completed; hitting maxSteps ends it as StepLimit,
// which bounds cycles in the link graph. The walk reads the store only.
ProcedureResult runProcedure(const MemoryStore& store, uint64_t startId,
                             uint64_t maxSteps = 1024);

}  // namespace cogsim
