#include "cogsim/procedures.hpp"

#include <stdexcept>
#include <string>

namespace cogsim {

void linkWords(MemoryStore& store, uint64_t fromId, uint64_t toId) {
    store.link(fromId, toId);
}

ProcedureResult runProcedure(const MemoryStore& store, uint64_t startId, uint64_t maxSteps) {
    if (maxSteps == 0) throw std::invalid_argument("procedure: maxSteps must be at least 1");
    if (!store.contains(startId))
        throw std::invalid_argument("procedure: unknown start word " + std::to_string(startId));

    ProcedureResult result;
    uint64_t current = startId;
    for (;;) {
        result.visited.push_back(current);
        const std::optional<uint64_t> next = store.successorOf(current);
        if (!next || !store.contains(*next)) {
            result.halted = ProcedureHalt::Completed;
            return result;
        }
        if (result.visited.size() >= maxSteps) {
            result.halted = ProcedureHalt::StepLimit;
            return result;
        }
        current = *next;
    }
}

}  // namespace cogsim
