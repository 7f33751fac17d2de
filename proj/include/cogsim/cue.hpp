#pragma once

#include "cogsim/bitword.hpp"
#include "cogsim/layout.hpp"

namespace cogsim {

// Exact-match probe over a feature subset. A stored word matches iff
// (word.bits & mask) == values. Values are only defined at masked positions.
struct CueQuery {
    BitWord mask;
    BitWord values;
};

// Throws std::invalid_argument on any violated invariant:
//  - widths equal to the layout width
//  - mask nonzero ("a completely empty subset" is forbidden)
//  - values & ~mask == 0
//  - mask confined to the general-features region
inline void validateCue(const CueQuery& cue, const VectorLayout& layout) {
    if (cue.mask.width() != layout.width || cue.values.width() != layout.width)
        throw std::invalid_argument("cue: width mismatch with layout");
    if (cue.mask.none())
        throw std::invalid_argument("cue: empty mask");
    if (!cue.values.isSubsetOf(cue.mask))
        throw std::invalid_argument("cue: values set outside mask");
    if (!layout.maskInGeneralRegion(cue.mask))
        throw std::invalid_argument("cue: mask selects non-general bits");
}

}  // namespace cogsim
