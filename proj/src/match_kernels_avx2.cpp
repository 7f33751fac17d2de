// AVX2 variant of the masked-equality scan. Compiled with -mavx2 in its own
// translation unit; callers reach it through the runtime dispatcher only.

#include <immintrin.h>

#include "cogsim/match_kernels.hpp"

namespace cogsim::kernels {

namespace {

// One 256-bit chunk: ((word & mask) ^ values) must be all-zero.
inline bool chunkMatches(const uint64_t* w, const __m256i m, const __m256i v) {
    const __m256i bits = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w));
    const __m256i diff = _mm256_xor_si256(_mm256_and_si256(bits, m), v);
    return _mm256_testz_si256(diff, diff);
}

}  // namespace

ScanHit scanAvx2(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                 const uint64_t* mask, const uint64_t* values) {
    ScanHit hit;

    if (limbsPerWord == 4) {
        // The common layout (W = 256): one vector op per stored word, with
        // the query constants hoisted out of the loop.
        const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask));
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values));
        const uint64_t* w = words;
        for (size_t i = 0; i < wordCount; ++i, w += 4) {
            if (chunkMatches(w, m, v)) {
                ++hit.matchCount;
                hit.lastIndex = i;
            }
        }
        return hit;
    }

    if (limbsPerWord < 4)
        return scanScalar(words, wordCount, limbsPerWord, mask, values);

    const size_t vecLimbs = limbsPerWord & ~size_t{3};
    const uint64_t* w = words;
    for (size_t i = 0; i < wordCount; ++i, w += limbsPerWord) {
        bool ok = true;
        for (size_t j = 0; ok && j < vecLimbs; j += 4) {
            const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + j));
            const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + j));
            ok = chunkMatches(w + j, m, v);
        }
        for (size_t j = vecLimbs; ok && j < limbsPerWord; ++j)
            ok = ((w[j] & mask[j]) ^ values[j]) == 0;
        if (ok) {
            ++hit.matchCount;
            hit.lastIndex = i;
        }
    }
    return hit;
}

}  // namespace cogsim::kernels
