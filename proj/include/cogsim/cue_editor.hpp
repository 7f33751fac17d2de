#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cogsim/bitword.hpp"
#include "cogsim/cue.hpp"
#include "cogsim/layout.hpp"
#include "cogsim/lfsr.hpp"

namespace cogsim {

// Turns the current short-term-memory image into a pseudorandom stream of
// exact-match cue subsets. Let A be the ascending positions of asserted
// general-region bits in the image; each LFSR step selects position A[i]
// into the mask iff state bit (i mod m) is set. Values equal the mask, so a
// cue asks "are all these features present". All-zero masks are skipped by
// stepping again (possible only when fewer than m bits are asserted).
class CueEditor {
public:
    CueEditor(VectorLayout layout, unsigned lfsrWidth, std::vector<unsigned> taps, uint64_t seed);

    // Absent when the image has no asserted general bits (nothing to cue).
    std::optional<CueQuery> nextCueQuery(const BitWord& stmVector);

    void reset(uint64_t seed) { lfsr_.setState(seed); }
    uint64_t lfsrState() const { return lfsr_.state(); }
    const Lfsr& lfsr() const { return lfsr_; }

private:
    VectorLayout layout_;
    Lfsr lfsr_;
};

}  // namespace cogsim
