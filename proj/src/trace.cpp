#include "cogsim/trace.hpp"

#include <array>
#include <charconv>

namespace cogsim {

namespace {

void appendU64(std::string& out, uint64_t v) {
    std::array<char, 20> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
}

// cycle * 1000 / rate milliseconds with exactly three decimals, computed in
// integer microseconds so the rendering never depends on float formatting.
void appendWallMs(std::string& out, uint64_t cycle, uint32_t rate) {
    const uint64_t micros = cycle * 1000000ull / rate;
    appendU64(out, micros / 1000);
    const uint64_t frac = micros % 1000;
    out.push_back('.');
    out.push_back(static_cast<char>('0' + frac / 100));
    out.push_back(static_cast<char>('0' + (frac / 10) % 10));
    out.push_back(static_cast<char>('0' + frac % 10));
}

void appendString(std::string& out, const std::string& s) {
    out.push_back('"');
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    static const char hex[] = "0123456789abcdef";
                    out += "\\u00";
                    out.push_back(hex[(c >> 4) & 0xF]);
                    out.push_back(hex[c & 0xF]);
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void appendKey(std::string& out, const char* key) {
    out.push_back('"');
    out += key;
    out += "\":";
}

void appendImportance(std::string& out, const ImportanceIndex& idx) {
    out.push_back('{');
    appendKey(out, "brightness");
    appendU64(out, idx.brightness);
    out.push_back(',');
    appendKey(out, "emotion");
    appendU64(out, idx.emotion);
    out.push_back(',');
    appendKey(out, "matchedCues");
    appendU64(out, idx.matchedCues);
    out.push_back(',');
    appendKey(out, "recency");
    appendU64(out, idx.recency);
    out.push_back(',');
    appendKey(out, "total");
    appendU64(out, idx.total);
    out.push_back('}');
}

struct PayloadWriter {
    std::string& out;

    void operator()(const SensoryFramePayload& p) const {
        appendKey(out, "vector");
        appendString(out, p.vectorHex);
        out.push_back(',');
        appendKey(out, "brightness");
        appendU64(out, p.brightness);
        out.push_back(',');
        appendKey(out, "emotion");
        appendU64(out, p.emotion);
    }
    void operator()(const RecallAttemptPayload& p) const {
        appendKey(out, "cueMask");
        appendString(out, p.cueMaskHex);
        out.push_back(',');
        appendKey(out, "cueValues");
        appendString(out, p.cueValuesHex);
        out.push_back(',');
        appendKey(out, "cueBits");
        appendU64(out, p.cueBits);
    }
    void operator()(const MatchPayload& p) const {
        appendKey(out, "wordId");
        appendU64(out, p.wordId);
        out.push_back(',');
        appendKey(out, "matchCount");
        appendU64(out, p.matchCount);
        out.push_back(',');
        appendKey(out, "cueBits");
        appendU64(out, p.cueBits);
        out.push_back(',');
        appendKey(out, "recognition");
        out += p.recognition ? "true" : "false";
        out.push_back(',');
        appendKey(out, "vector");
        appendString(out, p.vectorHex);
    }
    void operator()(const NoMatchPayload&) const {}
    void operator()(const AttentionTransferPayload& p) const {
        appendKey(out, "source");
        appendString(out, p.source);
        out.push_back(',');
        appendKey(out, "wordId");
        if (p.wordId)
            appendU64(out, *p.wordId);
        else
            out += "null";
        out.push_back(',');
        appendKey(out, "vector");
        appendString(out, p.vectorHex);
        out.push_back(',');
        appendKey(out, "candidate");
        appendImportance(out, p.candidate);
        out.push_back(',');
        appendKey(out, "displaced");
        appendU64(out, p.displaced);
    }
    void operator()(const MemorizationWritePayload& p) const {
        appendKey(out, "wordId");
        appendU64(out, p.wordId);
        out.push_back(',');
        appendKey(out, "reason");
        appendString(out, p.reason);
        out.push_back(',');
        appendKey(out, "vector");
        appendString(out, p.vectorHex);
    }
    void operator()(const FeatureLearnedPayload& p) const {
        appendKey(out, "bit");
        appendU64(out, p.bit);
        out.push_back(',');
        appendKey(out, "definition");
        out.push_back('[');
        for (size_t i = 0; i < p.definition.size(); ++i) {
            if (i) out.push_back(',');
            appendU64(out, p.definition[i]);
        }
        out.push_back(']');
    }
    void operator()(const ProcedureStepPayload& p) const {
        appendKey(out, "startWordId");
        appendU64(out, p.startWordId);
        out.push_back(',');
        appendKey(out, "stepIndex");
        appendU64(out, p.stepIndex);
        out.push_back(',');
        appendKey(out, "wordId");
        appendU64(out, p.wordId);
    }
    void operator()(const WarningPayload& p) const {
        appendKey(out, "message");
        appendString(out, p.message);
    }
};

}  // namespace

const char* eventKindName(EventKind kind) {
    switch (kind) {
        case EventKind::SensoryFrame: return "SensoryFrame";
        case EventKind::RecallAttempt: return "RecallAttempt";
        case EventKind::Match: return "Match";
        case EventKind::NoMatch: return "NoMatch";
        case EventKind::AttentionTransfer: return "AttentionTransfer";
        case EventKind::MemorizationWrite: return "MemorizationWrite";
        case EventKind::FeatureLearned: return "FeatureLearned";
        case EventKind::ProcedureStep: return "ProcedureStep";
        case EventKind::Warning: return "Warning";
    }
    return "Unknown";
}

std::string serializeEvent(const TraceEvent& event, uint32_t cycleRateHz) {
    std::string out;
    out.reserve(192);
    out += "{\"cycle\":";
    appendU64(out, event.cycle);
    out += ",\"wallMs\":";
    appendWallMs(out, event.cycle, cycleRateHz);
    out += ",\"kind\":\"";
    out += eventKindName(event.kind);
    out += "\",\"payload\":{";
    std::visit(PayloadWriter{out}, event.payload);
    out += "}}";
    return out;
}

JsonlFileSink::JsonlFileSink(std::ostream& out, uint32_t cycleRateHz)
    : out_(out), rate_(cycleRateHz) {}

void JsonlFileSink::onEvent(const TraceEvent& event) {
    out_ << serializeEvent(event, rate_) << '\n';
}

CollectSink::CollectSink(std::optional<uint32_t> serializeAtRate) : rate_(serializeAtRate) {}

void CollectSink::onEvent(const TraceEvent& event) {
    events_.push_back(event);
    if (rate_) lines_.push_back(serializeEvent(event, *rate_));
}

ComparingSink::ComparingSink(std::vector<std::string> expectedLines, uint32_t cycleRateHz)
    : expected_(std::move(expectedLines)), rate_(cycleRateHz) {}

void ComparingSink::onEvent(const TraceEvent& event) {
    if (divergence_) return;
    const std::string actual = serializeEvent(event, rate_);
    if (next_ >= expected_.size()) {
        divergence_ = Divergence{next_ + 1, event.cycle, "<end of recorded trace>", actual};
        return;
    }
    if (expected_[next_] != actual) {
        divergence_ = Divergence{next_ + 1, event.cycle, expected_[next_], actual};
        return;
    }
    ++next_;
}

}  // namespace cogsim
