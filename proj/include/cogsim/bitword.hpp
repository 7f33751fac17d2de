#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cogsim {

// Fixed-width bit word stored as uint64 limbs, bit i in limb i/64 at
// position i%64. Bits at positions >= width() are always zero; every
// operation preserves that so limb-wise kernels never see tail garbage.
class BitWord {
public:
    BitWord() = default;

    explicit BitWord(unsigned width)
        : width_(width), limbs_((width + 63) / 64, 0) {
        if (width == 0) throw std::invalid_argument("BitWord: width must be positive");
    }

    unsigned width() const { return width_; }
    size_t limbCount() const { return limbs_.size(); }
    std::span<const uint64_t> limbs() const { return limbs_; }
    std::span<uint64_t> limbs() { return limbs_; }

    bool test(unsigned pos) const {
        checkPos(pos);
        return (limbs_[pos / 64] >> (pos % 64)) & 1u;
    }

    void set(unsigned pos, bool value = true) {
        checkPos(pos);
        const uint64_t bit = uint64_t{1} << (pos % 64);
        if (value)
            limbs_[pos / 64] |= bit;
        else
            limbs_[pos / 64] &= ~bit;
    }

    void clear() {
        for (auto& l : limbs_) l = 0;
    }

    unsigned popcount() const {
        unsigned n = 0;
        for (uint64_t l : limbs_) n += std::popcount(l);
        return n;
    }

    bool any() const {
        for (uint64_t l : limbs_)
            if (l) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Reads `bits` contiguous bits starting at `offset` as an unsigned value.
    // Fields used here never straddle more than two limbs (bits <= 64).
    uint64_t extractField(unsigned offset, unsigned bits) const {
        if (bits == 0) return 0;
        if (bits > 64 || offset + bits > width_)
            throw std::invalid_argument("BitWord: field out of range");
        const unsigned limb = offset / 64;
        const unsigned shift = offset % 64;
        uint64_t v = limbs_[limb] >> shift;
        if (shift + bits > 64)
            v |= limbs_[limb + 1] << (64 - shift);
        return bits == 64 ? v : v & ((uint64_t{1} << bits) - 1);
    }

    void depositField(unsigned offset, unsigned bits, uint64_t value) {
        if (bits == 0) return;
        if (bits > 64 || offset + bits > width_)
            throw std::invalid_argument("BitWord: field out of range");
        const uint64_t fieldMask = bits == 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
        value &= fieldMask;
        const unsigned limb = offset / 64;
        const unsigned shift = offset % 64;
        limbs_[limb] = (limbs_[limb] & ~(fieldMask << shift)) | (value << shift);
        if (shift + bits > 64) {
            const unsigned spill = shift + bits - 64;
            const uint64_t spillMask = (uint64_t{1} << spill) - 1;
            limbs_[limb + 1] = (limbs_[limb + 1] & ~spillMask) | (value >> (64 - shift));
        }
    }

    BitWord& operator&=(const BitWord& o) {
        checkSameWidth(o);
        for (size_t i = 0; i < limbs_.size(); ++i) limbs_[i] &= o.limbs_[i];
        return *this;
    }
    BitWord& operator|=(const BitWord& o) {
        checkSameWidth(o);
        for (size_t i = 0; i < limbs_.size(); ++i) limbs_[i] |= o.limbs_[i];
        return *this;
    }
    BitWord& operator^=(const BitWord& o) {
        checkSameWidth(o);
        for (size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= o.limbs_[i];
        return *this;
    }

    friend BitWord operator&(BitWord a, const BitWord& b) { return a &= b; }
    friend BitWord operator|(BitWord a, const BitWord& b) { return a |= b; }
    friend BitWord operator^(BitWord a, const BitWord& b) { return a ^= b; }

    bool operator==(const BitWord&) const = default;

    // (this & ~other) == 0
    bool isSubsetOf(const BitWord& o) const {
        checkSameWidth(o);
        for (size_t i = 0; i < limbs_.size(); ++i)
            if (limbs_[i] & ~o.limbs_[i]) return false;
        return true;
    }

    // Ascending positions of asserted bits in [begin, end).
    std::vector<unsigned> assertedIn(unsigned begin, unsigned end) const {
        std::vector<unsigned> out;
        if (end > width_) end = width_;
        for (unsigned limb = begin / 64; limb < limbs_.size(); ++limb) {
            uint64_t l = limbs_[limb];
            while (l) {
                const unsigned pos = limb * 64 + std::countr_zero(l);
                if (pos >= end) return out;
                if (pos >= begin) out.push_back(pos);
                l &= l - 1;
            }
        }
        return out;
    }

    // Big-endian hex rendering of the word as a width-bit integer: exactly
    // width/4 lowercase chars, bit 0 = LSB of the last char.
    std::string toHex() const {
        if (width_ % 4 != 0)
            throw std::logic_error("BitWord::toHex requires width % 4 == 0");
        static const char digits[] = "0123456789abcdef";
        const unsigned nibbles = width_ / 4;
        std::string out(nibbles, '0');
        for (unsigned n = 0; n < nibbles; ++n) {
            const uint64_t v = (limbs_[n / 16] >> ((n % 16) * 4)) & 0xF;
            out[nibbles - 1 - n] = digits[v];
        }
        return out;
    }

    static BitWord fromHex(std::string_view hex, unsigned width) {
        if (width % 4 != 0)
            throw std::invalid_argument("BitWord::fromHex requires width % 4 == 0");
        if (hex.size() != width / 4)
            throw std::invalid_argument("BitWord::fromHex: expected " +
                                        std::to_string(width / 4) + " hex chars, got " +
                                        std::to_string(hex.size()));
        BitWord w(width);
        const unsigned nibbles = width / 4;
        for (unsigned n = 0; n < nibbles; ++n) {
            const char c = hex[nibbles - 1 - n];
            uint64_t v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
            else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
            else throw std::invalid_argument("BitWord::fromHex: invalid hex char");
            w.limbs_[n / 16] |= v << ((n % 16) * 4);
        }
        return w;
    }

    // FNV-1a over the limbs; used as a cheap equality prefilter, with full
    // comparison confirming every hit.
    uint64_t digest() const {
        uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (i * 8)) & 0xFF;
                h *= 0x00000100000001b3ull;
            }
        };
        mix(width_);
        for (uint64_t l : limbs_) mix(l);
        return h;
    }

private:
    void checkPos(unsigned pos) const {
        if (pos >= width_)
            throw std::invalid_argument("BitWord: bit position " + std::to_string(pos) +
                                        " out of range (width " + std::to_string(width_) + ")");
    }
    void checkSameWidth(const BitWord& o) const {
        if (width_ != o.width_)
            throw std::invalid_argument("BitWord: width mismatch");
    }

    unsigned width_ = 0;
    std::vector<uint64_t> limbs_;
};

}  // namespace cogsim
