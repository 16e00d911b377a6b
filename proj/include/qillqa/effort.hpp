#pragma once

#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qillqa {

struct EffortParams {
    std::map<Row, double> row_weight{
        {Row::Home, 1.0}, {Row::Top, 1.8}, {Row::Bottom, 2.2}};
    std::map<Finger, double> finger_weight{{Finger::Index, 1.0},
                                           {Finger::Middle, 1.1},
                                           {Finger::Ring, 1.3},
                                           {Finger::Pinky, 1.6}};
    double off_home_bonus = 0.3;      // home-row key that is not a resting key
    double bigram_lambda = 0.5;       // mixing weight of the bigram term
    double same_finger_penalty = 2.0; // same finger, same hand
    double row_jump_penalty = 0.5;    // per row of vertical distance, same hand

    void validate() const; // throws ValidationError

    bool operator==(const EffortParams&) const = default;
};

// JSON mirrors the field list; absent fields keep their defaults.
EffortParams parse_params(const std::string& json_text);
EffortParams load_params_file(const std::string& path);
std::string serialize_params(const EffortParams& params);

double key_cost(const KeySlot& slot, const EffortParams& params);

// Penalty for typing the pair (s1, s2) consecutively.
double pair_penalty(const KeySlot& s1, const KeySlot& s2, const EffortParams& params);

struct LayoutMetrics {
    double total_effort = 0.0;
    std::map<Row, double> row_usage{
        {Row::Top, 0.0}, {Row::Home, 0.0}, {Row::Bottom, 0.0}};
    double same_finger_fraction = 0.0;
    double hand_alternation_fraction = 0.0;
    double unassigned_mass = 0.0;
    // Digest of the (freq, bigrams, params) inputs so comparison reports can
    // flag metrics computed from different data.
    std::uint64_t inputs_digest = 0;

    bool operator==(const LayoutMetrics&) const = default;
};

std::string serialize_metrics(const LayoutMetrics& metrics);
LayoutMetrics parse_metrics(const std::string& json_text);
LayoutMetrics load_metrics_file(const std::string& path);

std::uint64_t digest_inputs(const FrequencyTable& freq, const BigramTable& bigrams,
                            const EffortParams& params);

// Scores a layout. Whitespace graphemes are outside the model entirely: the
// spacebar is a fixed physical key, so space contributes no effort, no row
// usage, and no unassigned mass.
LayoutMetrics evaluate(const Layout& layout, const KeyboardGeometry& geometry,
                       const FrequencyTable& freq, const BigramTable& bigrams,
                       const EffortParams& params);

struct ComparisonReport {
    double effort_reduction_percent = 0.0; // positive = candidate is cheaper
    std::map<Row, double> row_usage_delta{
        {Row::Top, 0.0}, {Row::Home, 0.0}, {Row::Bottom, 0.0}};
    double same_finger_delta = 0.0;
    double hand_alternation_delta = 0.0;
    double unassigned_mass_delta = 0.0;
    std::uint64_t baseline_digest = 0;
    std::uint64_t candidate_digest = 0;
    bool digests_match = false;
};

// Throws ValidationError when the baseline effort is zero.
ComparisonReport compare(const LayoutMetrics& baseline, const LayoutMetrics& candidate);

std::string serialize_comparison(const ComparisonReport& report);

// Rate-style improvement for higher-is-better scalars:
// 100 * (candidate - baseline) / baseline. Throws ValidationError on zero baseline.
double percent_improvement(double baseline, double candidate);

} // namespace qillqa
