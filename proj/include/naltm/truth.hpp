#pragma once

// Truth-value arithmetic: evidence conversion, revision, deduction,
// expectation, and budget decay. Everything here is a pure function on
// immutable values.

#include <algorithm>
#include <stdexcept>

namespace naltm {

// Frequency = proportion of positive evidence, confidence = weight of
// evidence relative to the evidential horizon. frequency in [0,1],
// confidence in [0,1).
struct TruthValue {
    double frequency = 0.5;
    double confidence = 0.0;

    bool operator==(const TruthValue&) const = default;
};

// Canonical truth of a statement nothing has been observed about.
// Expectation of this value is exactly 0.5 (indifference) and revision
// treats it as identity.
inline constexpr TruthValue no_evidence() { return {0.5, 0.0}; }

// Positive/total observation counts feeding revision.
struct EvidenceCount {
    double positive = 0.0;
    double total = 0.0;
};

// priority decays toward quality at rate durability; low-priority items
// are recycled first. priority, quality in [0,1], durability in (0,1).
struct Budget {
    double priority = 0.0;
    double durability = 0.9;
    double quality = 0.0;

    bool operator==(const Budget&) const = default;
};

// One observation yields confidence 1/(1+K); K = 1 by default.
inline constexpr double kDefaultHorizon = 1.0;

// Confidence saturates just below 1 so the open upper bound survives
// rounding when evidence weights get extreme.
inline constexpr double kMaxConfidence = 1.0 - 1e-9;

inline TruthValue truth_from_evidence(const EvidenceCount& e,
                                      double horizon = kDefaultHorizon) {
    if (e.total <= 0.0) {
        throw std::invalid_argument("no evidence");
    }
    double c = e.total / (e.total + horizon);
    return {e.positive / e.total, std::min(c, kMaxConfidence)};
}

// Truth of a single positive or negative observation.
inline TruthValue unit_evidence(bool polarity, double horizon = kDefaultHorizon) {
    return truth_from_evidence({polarity ? 1.0 : 0.0, 1.0}, horizon);
}

// Pooled-evidence revision. A zero-confidence side acts as identity.
inline TruthValue revise(const TruthValue& t1, const TruthValue& t2,
                         double horizon = kDefaultHorizon) {
    if (t2.confidence == 0.0) return t1;
    if (t1.confidence == 0.0) return t2;
    double w1 = horizon * t1.confidence / (1.0 - t1.confidence);
    double w2 = horizon * t2.confidence / (1.0 - t2.confidence);
    double w = w1 + w2;
    double f = (t1.frequency * w1 + t2.frequency * w2) / w;
    double c = w / (w + horizon);
    return {std::clamp(f, 0.0, 1.0), std::min(c, kMaxConfidence)};
}

// Anticipation truth from an event and an implication.
inline TruthValue deduce(const TruthValue& t1, const TruthValue& t2) {
    double f = t1.frequency * t2.frequency;
    return {f, f * t1.confidence * t2.confidence};
}

// Decision scalar in (0,1); 0.5 means indifference.
inline double expectation(const TruthValue& t) {
    return t.confidence * (t.frequency - 0.5) + 0.5;
}

inline Budget decay_budget(const Budget& b) {
    return {b.quality + (b.priority - b.quality) * b.durability,
            b.durability, b.quality};
}

}  // namespace naltm
