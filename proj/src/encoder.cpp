#include "cogsim/encoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogsim {

SymbolTable::SymbolTable(VectorLayout layout)
    : layout_(layout), nextNamed_(layout.namedBegin()), nextLearned_(layout.learnedBegin()) {
    layout_.validate();
}

unsigned SymbolTable::bitFor(const std::string& name, bool autoRegister) {
    const auto it = names_.find(name);
    if (it != names_.end()) return it->second;
    if (!autoRegister)
        throw std::invalid_argument("encoder: unknown feature name '" + name + "'");
    if (name.empty()) throw std::invalid_argument("encoder: feature name must not be empty");
    if (nextNamed_ >= layout_.namedEnd())
        throw std::length_error("encoder: named-feature region exhausted");
    const unsigned bit = nextNamed_++;
    names_.emplace(name, bit);
    return bit;
}

std::optional<unsigned> SymbolTable::lookup(const std::string& name) const {
    const auto it = names_.find(name);
    if (it == names_.end()) return std::nullopt;
    return it->second;
}

std::optional<unsigned> SymbolTable::learnFeature(const std::vector<unsigned>& definitionSet) {
    std::vector<unsigned> def = definitionSet;
    std::sort(def.begin(), def.end());
    def.erase(std::unique(def.begin(), def.end()), def.end());
    if (def.size() < 2)
        throw std::invalid_argument("encoder: a learned feature needs at least 2 constituents");
    for (unsigned bit : def) {
        if (bit < layout_.generalBegin() || bit >= layout_.width)
            throw std::invalid_argument("encoder: definition bit outside the general region");
        // Referencing only already-allocated bits keeps definitions acyclic:
        // a new feature can never (transitively) contain itself.
        if (bit >= layout_.learnedBegin() && bit >= nextLearned_)
            throw std::invalid_argument("encoder: definition references an unallocated bit");
        if (bit < layout_.learnedBegin() && bit >= nextNamed_)
            throw std::invalid_argument("encoder: definition references an unallocated bit");
    }
    if (nextLearned_ >= layout_.width) return std::nullopt;  // region exhausted
    const unsigned bit = nextLearned_++;
    learned_.emplace(bit, std::move(def));
    return bit;
}

bool SymbolTable::hasLearnedDefinition(const std::vector<unsigned>& definitionSet) const {
    std::vector<unsigned> def = definitionSet;
    std::sort(def.begin(), def.end());
    def.erase(std::unique(def.begin(), def.end()), def.end());
    for (const auto& [bit, existing] : learned_)
        if (existing == def) return true;
    return false;
}

void SymbolTable::closeUnderDefinitions(BitWord& vector) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [bit, def] : learned_) {
            if (vector.test(bit)) continue;
            bool all = true;
            for (unsigned member : def) {
                if (!vector.test(member)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                vector.set(bit);
                changed = true;
            }
        }
    }
}

SymbolTable SymbolTable::fromState(VectorLayout layout,
                                   const std::vector<std::pair<std::string, unsigned>>& names,
                                   const std::map<unsigned, std::vector<unsigned>>& learned) {
    SymbolTable table(layout);
    // Names must replay in allocation (bit) order to land on the same bits.
    std::vector<std::pair<std::string, unsigned>> byBit = names;
    std::sort(byBit.begin(), byBit.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [name, bit] : byBit) {
        const unsigned got = table.bitFor(name, true);
        if (got != bit)
            throw std::invalid_argument("encoder: restored name table is not densely allocated");
    }
    for (const auto& [bit, def] : learned) {  // std::map iterates in bit order
        const std::optional<unsigned> got = table.learnFeature(def);
        if (!got || *got != bit)
            throw std::invalid_argument("encoder: restored learned table is not densely allocated");
    }
    return table;
}

EncodeResult encode(SymbolTable& table, const RawPercept& percept, bool autoRegister) {
    const VectorLayout& layout = table.layout();
    EncodeResult result{BitWord(layout.width), {}};

    for (const std::string& name : percept.features)
        result.vector.set(table.bitFor(name, autoRegister));

    uint64_t b = percept.brightness;
    if (b > layout.brightnessMax()) {
        result.warnings.push_back("brightness " + std::to_string(b) + " clamped to " +
                                  std::to_string(layout.brightnessMax()));
        b = layout.brightnessMax();
    }
    uint64_t e = percept.emotion;
    if (e > layout.emotionMax()) {
        result.warnings.push_back("emotion " + std::to_string(e) + " clamped to " +
                                  std::to_string(layout.emotionMax()));
        e = layout.emotionMax();
    }
    layout.setBrightness(result.vector, b);
    layout.setEmotion(result.vector, e);

    table.closeUnderDefinitions(result.vector);
    return result;
}

CombinationDetector::CombinationDetector(unsigned threshold) : threshold_(threshold) {
    if (threshold_ == 0)
        throw std::invalid_argument("encoder: learn threshold must be positive");
}

std::optional<std::vector<unsigned>> CombinationDetector::observeCombination(
    const std::vector<unsigned>& assertedNamedBits, const SymbolTable& table) {
    std::vector<unsigned> key = assertedNamedBits;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.empty()) return std::nullopt;

    const uint64_t count = ++counts_[key];
    if (key.size() < 2) return std::nullopt;
    if (count != threshold_) return std::nullopt;  // propose exactly at the threshold
    if (proposed_.count(key)) return std::nullopt;
    if (table.hasLearnedDefinition(key)) return std::nullopt;
    proposed_.insert(key);
    return key;
}

void CombinationDetector::restoreState(std::map<std::vector<unsigned>, uint64_t> counts,
                                       std::set<std::vector<unsigned>> proposed) {
    counts_ = std::move(counts);
    proposed_ = std::move(proposed);
}

}  // namespace cogsim
