#include "qillqa/effort.hpp"

#include "qillqa/errors.hpp"
#include "json_util.hpp"

#include <cmath>
#include <cstring>

namespace qillqa {

namespace {

using nlohmann::json;

int row_level(Row row) {
    switch (row) {
    case Row::Top: return 0;
    case Row::Home: return 1;
    case Row::Bottom: return 2;
    }
    return 0;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

void fnv_string(std::uint64_t& h, const std::string& s) {
    fnv_bytes(h, s.data(), s.size());
    const char sep = '\x1f';
    fnv_bytes(h, &sep, 1);
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
    fnv_bytes(h, &v, sizeof v);
}

void fnv_double(std::uint64_t& h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    fnv_u64(h, bits);
}

} // namespace

void EffortParams::validate() const {
    for (const auto& [row, w] : row_weight) {
        if (!(w > 0.0))
            throw ValidationError("params: row_weight[" + to_string(row) +
                                  "] must be positive");
    }
    for (const auto& [finger, w] : finger_weight) {
        if (!(w > 0.0))
            throw ValidationError("params: finger_weight[" + to_string(finger) +
                                  "] must be positive");
    }
    if (!(off_home_bonus > 0.0))
        throw ValidationError("params: off_home_bonus must be positive");
    if (!(same_finger_penalty > 0.0))
        throw ValidationError("params: same_finger_penalty must be positive");
    if (!(row_jump_penalty > 0.0))
        throw ValidationError("params: row_jump_penalty must be positive");
    if (bigram_lambda < 0.0)
        throw ValidationError("params: bigram_lambda must be non-negative");
    const double home = row_weight.at(Row::Home);
    if (home > row_weight.at(Row::Top) || home > row_weight.at(Row::Bottom))
        throw ValidationError("params: home row weight must not exceed top/bottom weights");
}

EffortParams parse_params(const std::string& json_text) {
    const std::string context = "params";
    const auto doc = detail::parse_json(json_text, context);
    if (!doc.is_object())
        throw ParseError(context + ": document must be an object");

    EffortParams params;
    const auto read_number = [&](const json& v, const std::string& key) {
        if (!v.is_number())
            throw ParseError(context + ": field \"" + key + "\" must be a number");
        return v.get<double>();
    };

    if (doc.contains("row_weight")) {
        for (const auto& [key, v] : doc.at("row_weight").items())
            params.row_weight[row_from_string(key)] = read_number(v, "row_weight." + key);
    }
    if (doc.contains("finger_weight")) {
        for (const auto& [key, v] : doc.at("finger_weight").items()) {
            Finger finger;
            if (key == "pinky") finger = Finger::Pinky;
            else if (key == "ring") finger = Finger::Ring;
            else if (key == "middle") finger = Finger::Middle;
            else if (key == "index") finger = Finger::Index;
            else throw ParseError(context + ": unknown finger \"" + key + "\"");
            params.finger_weight[finger] = read_number(v, "finger_weight." + key);
        }
    }
    if (doc.contains("off_home_bonus"))
        params.off_home_bonus = read_number(doc.at("off_home_bonus"), "off_home_bonus");
    if (doc.contains("bigram_lambda"))
        params.bigram_lambda = read_number(doc.at("bigram_lambda"), "bigram_lambda");
    if (doc.contains("same_finger_penalty"))
        params.same_finger_penalty =
            read_number(doc.at("same_finger_penalty"), "same_finger_penalty");
    if (doc.contains("row_jump_penalty"))
        params.row_jump_penalty =
            read_number(doc.at("row_jump_penalty"), "row_jump_penalty");

    params.validate();
    return params;
}

EffortParams load_params_file(const std::string& path) {
    try {
        return parse_params(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_params(const EffortParams& params) {
    json doc;
    for (const auto& [row, w] : params.row_weight)
        doc["row_weight"][to_string(row)] = w;
    for (const auto& [finger, w] : params.finger_weight)
        doc["finger_weight"][to_string(finger)] = w;
    doc["off_home_bonus"] = params.off_home_bonus;
    doc["bigram_lambda"] = params.bigram_lambda;
    doc["same_finger_penalty"] = params.same_finger_penalty;
    doc["row_jump_penalty"] = params.row_jump_penalty;
    return doc.dump(2) + "\n";
}

double key_cost(const KeySlot& slot, const EffortParams& params) {
    double cost = params.row_weight.at(slot.row) * params.finger_weight.at(slot.finger);
    if (slot.row == Row::Home && !slot.is_home_position)
        cost += params.off_home_bonus;
    return cost;
}

double pair_penalty(const KeySlot& s1, const KeySlot& s2, const EffortParams& params) {
    if (s1.hand != s2.hand)
        return 0.0;
    if (s1.finger == s2.finger)
        return params.same_finger_penalty;
    return params.row_jump_penalty *
           std::abs(row_level(s1.row) - row_level(s2.row));
}

std::uint64_t digest_inputs(const FrequencyTable& freq, const BigramTable& bigrams,
                            const EffortParams& params) {
    std::uint64_t h = kFnvOffset;
    fnv_u64(h, freq.total);
    for (const auto& [g, n] : freq.counts) {
        fnv_string(h, g);
        fnv_u64(h, n);
    }
    fnv_u64(h, bigrams.total);
    for (const auto& [pair, n] : bigrams.counts) {
        fnv_string(h, pair.first);
        fnv_string(h, pair.second);
        fnv_u64(h, n);
    }
    for (const auto& [row, w] : params.row_weight)
        fnv_double(h, w);
    for (const auto& [finger, w] : params.finger_weight)
        fnv_double(h, w);
    fnv_double(h, params.off_home_bonus);
    fnv_double(h, params.bigram_lambda);
    fnv_double(h, params.same_finger_penalty);
    fnv_double(h, params.row_jump_penalty);
    return h;
}

LayoutMetrics evaluate(const Layout& layout, const KeyboardGeometry& geometry,
                       const FrequencyTable& freq, const BigramTable& bigrams,
                       const EffortParams& params) {
    layout.validate(geometry);
    params.validate();

    LayoutMetrics metrics;
    metrics.inputs_digest = digest_inputs(freq, bigrams, params);

    std::map<Row, double> row_mass{
        {Row::Top, 0.0}, {Row::Home, 0.0}, {Row::Bottom, 0.0}};
    double assigned_mass = 0.0;
    double unassigned_sum = 0.0;
    double effort = 0.0;

    for (const auto& [g, n] : freq.counts) {
        if (is_whitespace_grapheme(g))
            continue;
        const std::string* slot_id = layout.slot_of(g);
        if (!slot_id) {
            unassigned_sum += static_cast<double>(n);
            continue;
        }
        const KeySlot& slot = geometry.at(*slot_id);
        const double f = static_cast<double>(n);
        effort += f * key_cost(slot, params);
        row_mass[slot.row] += f;
        assigned_mass += f;
    }

    const double nonspace_total = assigned_mass + unassigned_sum;
    // With no typeable mass at all, the layout covers nothing.
    metrics.unassigned_mass =
        nonspace_total > 0.0 ? unassigned_sum / nonspace_total : 1.0;
    if (assigned_mass > 0.0) {
        for (auto& [row, usage] : metrics.row_usage)
            usage = row_mass.at(row) / assigned_mass;
    }

    double pair_mass = 0.0;
    double same_finger_mass = 0.0;
    double alternation_mass = 0.0;
    for (const auto& [pair, n] : bigrams.counts) {
        if (is_whitespace_grapheme(pair.first) || is_whitespace_grapheme(pair.second))
            continue;
        const std::string* s1 = layout.slot_of(pair.first);
        const std::string* s2 = layout.slot_of(pair.second);
        if (!s1 || !s2)
            continue;
        const KeySlot& slot1 = geometry.at(*s1);
        const KeySlot& slot2 = geometry.at(*s2);
        const double f = static_cast<double>(n);
        effort += params.bigram_lambda * f * pair_penalty(slot1, slot2, params);
        pair_mass += f;
        if (slot1.hand != slot2.hand)
            alternation_mass += f;
        else if (slot1.finger == slot2.finger)
            same_finger_mass += f;
    }
    if (pair_mass > 0.0) {
        metrics.same_finger_fraction = same_finger_mass / pair_mass;
        metrics.hand_alternation_fraction = alternation_mass / pair_mass;
    }

    metrics.total_effort = effort;
    return metrics;
}

std::string serialize_metrics(const LayoutMetrics& metrics) {
    json doc;
    doc["total_effort"] = metrics.total_effort;
    for (const auto& [row, usage] : metrics.row_usage)
        doc["row_usage"][to_string(row)] = usage;
    doc["same_finger_fraction"] = metrics.same_finger_fraction;
    doc["hand_alternation_fraction"] = metrics.hand_alternation_fraction;
    doc["unassigned_mass"] = metrics.unassigned_mass;
    doc["inputs_digest"] = metrics.inputs_digest;
    return doc.dump(2) + "\n";
}

LayoutMetrics parse_metrics(const std::string& json_text) {
    const std::string context = "metrics";
    const auto doc = detail::parse_json(json_text, context);

    const auto read_number = [&](const json& obj, const std::string& key) {
        const auto& field = detail::require_field(obj, key, context);
        if (!field.is_number())
            throw ParseError(context + ": field \"" + key + "\" must be a number");
        return field.get<double>();
    };

    LayoutMetrics metrics;
    try {
        metrics.total_effort = read_number(doc, "total_effort");
        const auto& usage = detail::require_field(doc, "row_usage", context);
        for (const auto& [key, v] : usage.items())
            metrics.row_usage[row_from_string(key)] = v.get<double>();
        metrics.same_finger_fraction = read_number(doc, "same_finger_fraction");
        metrics.hand_alternation_fraction = read_number(doc, "hand_alternation_fraction");
        metrics.unassigned_mass = read_number(doc, "unassigned_mass");
        if (doc.contains("inputs_digest"))
            metrics.inputs_digest = doc.at("inputs_digest").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    return metrics;
}

LayoutMetrics load_metrics_file(const std::string& path) {
    try {
        return parse_metrics(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ComparisonReport compare(const LayoutMetrics& baseline, const LayoutMetrics& candidate) {
    if (baseline.total_effort == 0.0)
        throw ValidationError("compare: baseline effort is zero");

    ComparisonReport report;
    report.effort_reduction_percent =
        100.0 * (baseline.total_effort - candidate.total_effort) / baseline.total_effort;
    for (const auto& [row, usage] : candidate.row_usage) {
        const auto it = baseline.row_usage.find(row);
        const double base = it == baseline.row_usage.end() ? 0.0 : it->second;
        report.row_usage_delta[row] = usage - base;
    }
    report.same_finger_delta =
        candidate.same_finger_fraction - baseline.same_finger_fraction;
    report.hand_alternation_delta =
        candidate.hand_alternation_fraction - baseline.hand_alternation_fraction;
    report.unassigned_mass_delta = candidate.unassigned_mass - baseline.unassigned_mass;
    report.baseline_digest = baseline.inputs_digest;
    report.candidate_digest = candidate.inputs_digest;
    report.digests_match = baseline.inputs_digest == candidate.inputs_digest;
    return report;
}

std::string serialize_comparison(const ComparisonReport& report) {
    json doc;
    doc["effort_reduction_percent"] = report.effort_reduction_percent;
    for (const auto& [row, delta] : report.row_usage_delta)
        doc["row_usage_delta"][to_string(row)] = delta;
    doc["same_finger_delta"] = report.same_finger_delta;
    doc["hand_alternation_delta"] = report.hand_alternation_delta;
    doc["unassigned_mass_delta"] = report.unassigned_mass_delta;
    doc["baseline_digest"] = report.baseline_digest;
    doc["candidate_digest"] = report.candidate_digest;
    doc["digests_match"] = report.digests_match;
    return doc.dump(2) + "\n";
}

double percent_improvement(double baseline, double candidate) {
    if (baseline == 0.0)
        throw ValidationError("percent_improvement: baseline is zero");
    return 100.0 * (candidate - baseline) / baseline;
}

} // namespace qillqa
