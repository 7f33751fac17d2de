// NEON variant of the masked-equality scan, two 64-bit limbs per vector op.

#include <arm_neon.h>

#include "cogsim/match_kernels.hpp"

namespace cogsim::kernels {

ScanHit scanNeon(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                 const uint64_t* mask, const uint64_t* values) {
    if (limbsPerWord < 2)
        return scanScalar(words, wordCount, limbsPerWord, mask, values);

    ScanHit hit;
    const size_t vecLimbs = limbsPerWord & ~size_t{1};
    const uint64_t* w = words;
    for (size_t i = 0; i < wordCount; ++i, w += limbsPerWord) {
        uint64x2_t acc = vdupq_n_u64(0);
        for (size_t j = 0; j < vecLimbs; j += 2) {
            const uint64x2_t bits = vld1q_u64(w + j);
            const uint64x2_t m = vld1q_u64(mask + j);
            const uint64x2_t v = vld1q_u64(values + j);
            acc = vorrq_u64(acc, veorq_u64(vandq_u64(bits, m), v));
        }
        uint64_t diff = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
        for (size_t j = vecLimbs; j < limbsPerWord; ++j)
            diff |= (w[j] & mask[j]) ^ values[j];
        if (diff == 0) {
            ++hit.matchCount;
            hit.lastIndex = i;
        }
    }
    return hit;
}

}  // namespace cogsim::kernels
