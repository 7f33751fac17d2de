#include "cogsim/lfsr.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace cogsim {

namespace {

constexpr unsigned kMaxEnumeratedWidth = 20;
constexpr unsigned kMaxWidth = 32;

// Known maximal-length tap sets for widths too large to verify by orbit
// enumeration. Positions are 1-based, descending.
const std::vector<unsigned>* knownTaps(unsigned width) {
    static const std::vector<std::vector<unsigned>> table = {
        {21, 19},
        {22, 21},
        {23, 18},
        {24, 23, 22, 17},
        {25, 22},
        {26, 25, 24, 20},
        {27, 26, 25, 22},
        {28, 25},
        {29, 27},
        {30, 29, 28, 7},
        {31, 28},
        {32, 22, 2, 1},
    };
    if (width < 21 || width > kMaxWidth) return nullptr;
    return &table[width - 21];
}

uint64_t stepOnce(uint64_t state, uint64_t tapMask, uint64_t stateMask) {
    const uint64_t feedback = std::popcount(state & tapMask) & 1u;
    return ((state << 1) | feedback) & stateMask;
}

}  // namespace

Lfsr::Lfsr(unsigned width, std::vector<unsigned> taps, uint64_t seed)
    : width_(width), taps_(std::move(taps)) {
    if (width_ < 2 || width_ > kMaxWidth)
        throw std::invalid_argument("lfsr: width must be in [2, " + std::to_string(kMaxWidth) +
                                    "], got " + std::to_string(width_));
    if (taps_.empty()) throw std::invalid_argument("lfsr: tap set must not be empty");
    std::sort(taps_.begin(), taps_.end(), std::greater<unsigned>());
    if (std::adjacent_find(taps_.begin(), taps_.end()) != taps_.end())
        throw std::invalid_argument("lfsr: duplicate tap position");
    if (taps_.front() != width_)
        throw std::invalid_argument("lfsr: highest tap must equal the width (got " +
                                    std::to_string(taps_.front()) + " for width " +
                                    std::to_string(width_) + ")");
    if (taps_.back() < 1) throw std::invalid_argument("lfsr: tap positions are 1-based");

    tapMask_ = 0;
    for (unsigned t : taps_) tapMask_ |= uint64_t{1} << (t - 1);
    stateMask_ = (width_ == 64) ? ~uint64_t{0} : (uint64_t{1} << width_) - 1;

    if (width_ <= kMaxEnumeratedWidth) {
        // Full orbit walk from state 1: maximal taps return to 1 after
        // exactly 2^m - 1 steps without revisiting it earlier.
        uint64_t s = 1;
        uint64_t steps = 0;
        do {
            s = stepOnce(s, tapMask_, stateMask_);
            ++steps;
        } while (s != 1 && steps <= stateMask_);
        if (steps != stateMask_)
            throw std::invalid_argument("lfsr: taps are not maximal-length for width " +
                                        std::to_string(width_) + " (orbit " +
                                        std::to_string(steps) + ", expected " +
                                        std::to_string(stateMask_) + ")");
    } else {
        const std::vector<unsigned>* known = knownTaps(width_);
        if (known == nullptr || *known != taps_)
            throw std::invalid_argument(
                "lfsr: width " + std::to_string(width_) +
                " exceeds enumeration range and the taps are not in the known maximal table");
    }

    setState(seed);
}

void Lfsr::setState(uint64_t state) {
    if (state == 0) throw std::invalid_argument("lfsr: state must be nonzero");
    if (state > stateMask_)
        throw std::invalid_argument("lfsr: state " + std::to_string(state) +
                                    " does not fit in " + std::to_string(width_) + " bits");
    state_ = state;
}

uint64_t Lfsr::step() {
    state_ = stepOnce(state_, tapMask_, stateMask_);
    return state_;
}

}  // namespace cogsim
