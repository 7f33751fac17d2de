#include "cogsim/match_kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace cogsim::kernels {

ScanHit scanScalar(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
                   const uint64_t* mask, const uint64_t* values) {
    ScanHit hit;
    const uint64_t* w = words;
    for (size_t i = 0; i < wordCount; ++i, w += limbsPerWord) {
        if (matchesWord(w, limbsPerWord, mask, values)) {
            ++hit.matchCount;
            hit.lastIndex = i;
        }
    }
    return hit;
}

namespace {

using ScanFn = ScanHit (*)(const uint64_t*, size_t, size_t, const uint64_t*, const uint64_t*);

bool kernelSupported(Kernel k) {
    switch (k) {
        case Kernel::Scalar:
            return true;
        case Kernel::Avx2:
#if COGSIM_HAVE_AVX2_KERNEL
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Kernel::Neon:
#if COGSIM_HAVE_NEON_KERNEL
            return true;  // baseline on aarch64
#else
            return false;
#endif
        case Kernel::Auto:
            return true;
    }
    return false;
}

Kernel probeBest() {
#if COGSIM_HAVE_AVX2_KERNEL
    if (kernelSupported(Kernel::Avx2)) return Kernel::Avx2;
#endif
#if COGSIM_HAVE_NEON_KERNEL
    return Kernel::Neon;
#endif
    return Kernel::Scalar;
}

ScanFn kernelFn(Kernel k) {
    switch (k) {
#if COGSIM_HAVE_AVX2_KERNEL
        case Kernel::Avx2:
            return &scanAvx2;
#endif
#if COGSIM_HAVE_NEON_KERNEL
        case Kernel::Neon:
            return &scanNeon;
#endif
        default:
            return &scanScalar;
    }
}

std::atomic<Kernel> g_active{probeBest()};
std::atomic<ScanFn> g_scan{kernelFn(g_active.load())};

}  // namespace

void selectKernel(Kernel k) {
    if (k == Kernel::Auto) k = probeBest();
    if (!kernelSupported(k))
        throw std::invalid_argument(std::string("kernel not supported on this CPU: ") +
                                    kernelName(k));
    g_active.store(k);
    g_scan.store(kernelFn(k));
}

Kernel activeKernel() { return g_active.load(); }

const char* kernelName(Kernel k) {
    switch (k) {
        case Kernel::Auto: return "auto";
        case Kernel::Scalar: return "scalar";
        case Kernel::Avx2: return "avx2";
        case Kernel::Neon: return "neon";
    }
    return "?";
}

ScanHit scan(const uint64_t* words, size_t wordCount, size_t limbsPerWord,
             const uint64_t* mask, const uint64_t* values) {
    return g_scan.load(std::memory_order_relaxed)(words, wordCount, limbsPerWord, mask, values);
}

}  // namespace cogsim::kernels
