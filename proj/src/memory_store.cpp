#include "cogsim/memory_store.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "cogsim/match_kernels.hpp"

namespace cogsim {

MemoryStore::MemoryStore(VectorLayout layout)
    : layout_(layout), limbsPerWord_((layout.width + 63) / 64) {
    layout_.validate();
}

BitWord MemoryStore::vectorAt(size_t index) const {
    BitWord v(layout_.width);
    const uint64_t* src = wordLimbs(index);
    std::copy(src, src + limbsPerWord_, v.limbs().begin());
    return v;
}

size_t MemoryStore::indexOf(uint64_t id) const {
    const auto it = std::lower_bound(meta_.begin(), meta_.end(), id,
                                     [](const Meta& m, uint64_t v) { return m.wordId < v; });
    if (it == meta_.end() || it->wordId != id)
        throw std::invalid_argument("memory: unknown word id " + std::to_string(id));
    return static_cast<size_t>(it - meta_.begin());
}

uint64_t MemoryStore::write(const BitWord& vector, uint64_t cycle) {
    if (vector.width() != layout_.width)
        throw std::invalid_argument("memory: vector width " + std::to_string(vector.width()) +
                                    " does not match layout width " +
                                    std::to_string(layout_.width));
    const uint64_t id = nextId_++;
    bits_.insert(bits_.end(), vector.limbs().begin(), vector.limbs().end());
    meta_.push_back(Meta{id, cycle, cycle, 0, false});
    return id;
}

std::optional<RecallResult> MemoryStore::recall(const CueQuery& cue, uint64_t cycle) {
    validateCue(cue, layout_);
    if (meta_.empty()) return std::nullopt;
    const auto hit = kernels::scan(bits_.data(), meta_.size(), limbsPerWord_,
                                   cue.mask.limbs().data(), cue.values.limbs().data());
    if (hit.matchCount == 0) return std::nullopt;
    Meta& winner = meta_[hit.lastIndex];
    winner.lastMatchCycle = cycle;
    return RecallResult{winner.wordId, vectorAt(hit.lastIndex), hit.matchCount,
                        winner.writeCycle};
}

std::vector<uint64_t> MemoryStore::matchesAll(const CueQuery& cue) const {
    validateCue(cue, layout_);
    std::vector<uint64_t> out;
    const uint64_t* mask = cue.mask.limbs().data();
    const uint64_t* values = cue.values.limbs().data();
    for (size_t i = 0; i < meta_.size(); ++i) {
        if (kernels::matchesWord(wordLimbs(i), limbsPerWord_, mask, values))
            out.push_back(meta_[i].wordId);
    }
    return out;
}

uint64_t MemoryStore::clearUnused(uint64_t cycle, std::optional<uint64_t> retention) {
    if (!retention) return 0;
    if (*retention == 0)
        throw std::invalid_argument("memory: retention must be positive");
    size_t kept = 0;
    for (size_t i = 0; i < meta_.size(); ++i) {
        const uint64_t lastUse = std::max(meta_[i].writeCycle, meta_[i].lastMatchCycle);
        if (lastUse + *retention < cycle) continue;  // expired
        if (kept != i) {
            meta_[kept] = meta_[i];
            std::copy(wordLimbs(i), wordLimbs(i) + limbsPerWord_,
                      bits_.begin() + kept * limbsPerWord_);
        }
        ++kept;
    }
    const uint64_t removed = meta_.size() - kept;
    meta_.resize(kept);
    bits_.resize(kept * limbsPerWord_);
    return removed;
}

void MemoryStore::link(uint64_t fromId, uint64_t toId) {
    const size_t from = indexOf(fromId);
    indexOf(toId);  // existence check
    meta_[from].successor = toId;
    meta_[from].hasSuccessor = true;
}

std::optional<uint64_t> MemoryStore::successorOf(uint64_t id) const {
    const Meta& m = meta_[indexOf(id)];
    if (!m.hasSuccessor) return std::nullopt;
    return m.successor;
}

bool MemoryStore::contains(uint64_t id) const {
    const auto it = std::lower_bound(meta_.begin(), meta_.end(), id,
                                     [](const Meta& m, uint64_t v) { return m.wordId < v; });
    return it != meta_.end() && it->wordId == id;
}

MemoryWordView MemoryStore::word(uint64_t id) const {
    const size_t i = indexOf(id);
    const Meta& m = meta_[i];
    return MemoryWordView{m.wordId, m.writeCycle, m.lastMatchCycle,
                          m.hasSuccessor ? std::optional<uint64_t>(m.successor) : std::nullopt,
                          vectorAt(i)};
}

std::vector<uint64_t> MemoryStore::ids() const {
    std::vector<uint64_t> out;
    out.reserve(meta_.size());
    for (const Meta& m : meta_) out.push_back(m.wordId);
    return out;
}

void MemoryStore::appendRaw(const BitWord& vector, Meta meta) {
    if (vector.width() != layout_.width)
        throw std::invalid_argument("memory: vector width does not match layout width");
    if (!meta_.empty() && meta.wordId <= meta_.back().wordId)
        throw std::invalid_argument("memory: word ids must be strictly increasing");
    bits_.insert(bits_.end(), vector.limbs().begin(), vector.limbs().end());
    meta_.push_back(meta);
}

std::vector<MemoryWordView> MemoryStore::words() const {
    std::vector<MemoryWordView> out;
    out.reserve(meta_.size());
    for (size_t i = 0; i < meta_.size(); ++i) {
        const Meta& m = meta_[i];
        out.push_back(MemoryWordView{
            m.wordId, m.writeCycle, m.lastMatchCycle,
            m.hasSuccessor ? std::optional<uint64_t>(m.successor) : std::nullopt, vectorAt(i)});
    }
    return out;
}

MemoryStore MemoryStore::fromWords(VectorLayout layout, const std::vector<MemoryWordView>& words,
                                   uint64_t nextWordId) {
    MemoryStore store(layout);
    for (const MemoryWordView& w : words)
        store.appendRaw(w.vector, Meta{w.wordId, w.writeCycle, w.lastMatchCycle,
                                       w.successor.value_or(0), w.successor.has_value()});
    const uint64_t minNext = store.meta_.empty() ? 0 : store.meta_.back().wordId + 1;
    if (nextWordId < minNext)
        throw std::invalid_argument("memory: nextWordId must exceed every stored word id");
    store.nextId_ = nextWordId;
    return store;
}

void MemoryStore::dumpJsonl(std::ostream& out) const {
    for (size_t i = 0; i < meta_.size(); ++i) {
        const Meta& m = meta_[i];
        nlohmann::ordered_json j;
        j["wordId"] = m.wordId;
        j["bits"] = vectorAt(i).toHex();
        j["writeCycle"] = m.writeCycle;
        j["lastMatchCycle"] = m.lastMatchCycle;
        if (m.hasSuccessor)
            j["successor"] = m.successor;
        else
            j["successor"] = nullptr;
        out << j.dump() << '\n';
    }
}

MemoryStore MemoryStore::loadJsonl(std::istream& in, VectorLayout layout) {
    MemoryStore store(layout);
    std::string line;
    size_t lineNo = 0;
    uint64_t prevId = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw std::invalid_argument("memory dump line " + std::to_string(lineNo) + ": " +
                                        e.what());
        }
        if (!j.is_object() || !j.contains("wordId") || !j.contains("bits") ||
            !j.contains("writeCycle") || !j.contains("lastMatchCycle"))
            throw std::invalid_argument("memory dump line " + std::to_string(lineNo) +
                                        ": missing required field");
        const uint64_t id = j.at("wordId").get<uint64_t>();
        if (!first && id <= prevId)
            throw std::invalid_argument("memory dump line " + std::to_string(lineNo) +
                                        ": word ids must be strictly increasing");
        first = false;
        prevId = id;
        const BitWord vec = BitWord::fromHex(j.at("bits").get<std::string>(), layout.width);
        Meta m;
        m.wordId = id;
        m.writeCycle = j.at("writeCycle").get<uint64_t>();
        m.lastMatchCycle = j.at("lastMatchCycle").get<uint64_t>();
        m.hasSuccessor = j.contains("successor") && !j.at("successor").is_null();
        m.successor = m.hasSuccessor ? j.at("successor").get<uint64_t>() : 0;
        store.appendRaw(vec, m);
    }
    store.nextId_ = store.meta_.empty() ? 0 : store.meta_.back().wordId + 1;
    return store;
}

}  // namespace cogsim
