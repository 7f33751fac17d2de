#pragma once

#include <cstddef>
#include <cstdint>

namespace cogsim::kernels {

// Result of one scan over the word array: how many words satisfied
// (word & mask) == values, and the array index of the last hit.
// lastIndex is meaningful only when matchCount > 0.
struct ScanHit {
    uint64_t matchCount = 0;
    size_t lastIndex = 0;
};

// Single-word predicate, the scalar building block shared by the
// reference scan and the exhaustive arbitration oracle.
inline bool matchesWord(const uint64_t* word, size_t limbsPerWord,
                        const uint64_t* mask, const uint64_t* values) {
    uint64_t diff = 0;
    for (size_t i = 0; i < limbsPerWord; ++i)
        diff |= (word[i] & mask[i]) ^ values[i];
    return diff == 0;
}

// Scalar reference kernel. `words` holds wordCount records of
// limbsPerWord limbs each, contiguous.
ScanHit scanScalar(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                   const uint64_t* mask, const uint64_t* values);

#if defined(__x86_64__) || defined(_M_X64)
#define COGSIM_HAVE_AVX2_KERNEL 1
ScanHit scanAvx2(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                 const uint64_t* mask, const uint64_t* values);
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define COGSIM_HAVE_NEON_KERNEL 1
ScanHit scanNeon(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                 const uint64_t* mask, const uint64_t* values);
#endif

enum class Kernel { Auto, Scalar, Avx2, Neon };

// Picks the widest kernel the CPU supports (Auto) or forces one variant.
// Forcing an unsupported variant throws. Selection is process-global.
void selectKernel(Kernel k);
Kernel activeKernel();
const char* kernelName(Kernel k);

// Dispatched scan through the active kernel.
ScanHit scan(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
             const uint64_t* mask, const uint64_t* values);

}  // namespace cogsim::kernels
