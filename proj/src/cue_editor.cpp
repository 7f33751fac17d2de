#include "cogsim/cue_editor.hpp"

#include <stdexcept>

namespace cogsim {

CueEditor::CueEditor(VectorLayout layout, unsigned lfsrWidth, std::vector<unsigned> taps,
                     uint64_t seed)
    : layout_(layout), lfsr_(lfsrWidth, std::move(taps), seed) {
    layout_.validate();
}

std::optional<CueQuery> CueEditor::nextCueQuery(const BitWord& stmVector) {
    if (stmVector.width() != layout_.width)
        throw std::invalid_argument("cue editor: image width does not match layout");
    const std::vector<unsigned> asserted =
        stmVector.assertedIn(layout_.generalBegin(), layout_.width);
    if (asserted.empty()) return std::nullopt;

    const unsigned m = lfsr_.width();
    // Some reachable state has its low bit set, so a nonempty mask appears
    // within one full period even when only one position is asserted.
    for (uint64_t attempt = 0; attempt < lfsr_.period(); ++attempt) {
        const uint64_t state = lfsr_.step();
        BitWord mask(layout_.width);
        for (size_t i = 0; i < asserted.size(); ++i) {
            if ((state >> (i % m)) & 1u) mask.set(asserted[i]);
        }
        if (mask.any()) return CueQuery{mask, mask};
    }
    throw std::logic_error("cue editor: no nonempty mask in a full period");  // unreachable
}

}  // namespace cogsim
