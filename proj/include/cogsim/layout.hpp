#pragma once

#include <cstdint>
#include <stdexcept>

#include "cogsim/bitword.hpp"

namespace cogsim {

// Bit layout shared by every vector in one simulation:
//
//   [0, b)            brightness subfield (unsigned integer)
//   [b, b+e)          emotion subfield (unsigned integer)
//   [b+e, W-L)        named general features
//   [W-L, W)          learned general features
//
// Cues may only select bits from the general region [b+e, W).
struct VectorLayout {
    unsigned width = 256;
    unsigned brightnessBits = 4;
    unsigned emotionBits = 4;
    unsigned learnedBits = 32;

    static VectorLayout make(unsigned width, unsigned brightnessBits,
                             unsigned emotionBits, unsigned learnedBits) {
        VectorLayout l{width, brightnessBits, emotionBits, learnedBits};
        l.validate();
        return l;
    }

    void validate() const {
        if (width == 0 || width % 4 != 0)
            throw std::invalid_argument("layout: width must be a positive multiple of 4");
        if (width > 65536)
            throw std::invalid_argument("layout: width too large");
        if (brightnessBits > 16 || emotionBits > 16)
            throw std::invalid_argument("layout: subfields limited to 16 bits");
        // at least one named feature bit must remain
        if (static_cast<uint64_t>(brightnessBits) + emotionBits + learnedBits + 1 > width)
            throw std::invalid_argument("layout: subfields and learned region exceed width");
    }

    unsigned generalBegin() const { return brightnessBits + emotionBits; }
    unsigned namedBegin() const { return generalBegin(); }
    unsigned namedEnd() const { return width - learnedBits; }
    unsigned learnedBegin() const { return width - learnedBits; }
    unsigned namedCount() const { return namedEnd() - namedBegin(); }

    uint64_t brightnessMax() const { return (uint64_t{1} << brightnessBits) - 1; }
    uint64_t emotionMax() const { return (uint64_t{1} << emotionBits) - 1; }

    uint64_t brightnessOf(const BitWord& v) const {
        return v.extractField(0, brightnessBits);
    }
    uint64_t emotionOf(const BitWord& v) const {
        return v.extractField(brightnessBits, emotionBits);
    }
    void setBrightness(BitWord& v, uint64_t value) const {
        v.depositField(0, brightnessBits, value);
    }
    void setEmotion(BitWord& v, uint64_t value) const {
        v.depositField(brightnessBits, emotionBits, value);
    }

    bool maskInGeneralRegion(const BitWord& mask) const {
        // no bits below generalBegin()
        return mask.assertedIn(0, generalBegin()).empty();
    }

    bool operator==(const VectorLayout&) const = default;
};

}  // namespace cogsim
