#pragma once

#include <cstdint>
#include <vector>

namespace cogsim {

// Fibonacci (external-XOR) linear feedback shift register. Taps are 1-based
// bit positions; position m is the register's most significant bit. One step
// computes the parity of the tapped bits and shifts it in from the low end:
//
//   feedback = parity(state & tapMask)
//   state    = ((state << 1) | feedback) mod 2^m
//
// Construction verifies the taps give the maximal period 2^m - 1: by full
// orbit enumeration for m <= 20, and against a table of known maximal-length
// tap sets for larger widths. The all-zero state is unreachable from any
// nonzero seed and rejected as a seed.
class Lfsr {
public:
    Lfsr(unsigned width, std::vector<unsigned> taps, uint64_t seed);

    uint64_t step();  // advance one state and return the new state
    uint64_t state() const { return state_; }
    void setState(uint64_t state);  // same validation as a seed
    unsigned width() const { return width_; }
    const std::vector<unsigned>& taps() const { return taps_; }
    uint64_t stateMask() const { return stateMask_; }
    uint64_t period() const { return stateMask_; }  // 2^m - 1 by construction

private:
    unsigned width_ = 0;
    std::vector<unsigned> taps_;
    uint64_t tapMask_ = 0;
    uint64_t stateMask_ = 0;
    uint64_t state_ = 0;
};

}  // namespace cogsim
