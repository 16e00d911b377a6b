#pragma once

#include "qillqa/effort.hpp"
#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qillqa {

struct OptimizeConfig {
    std::uint64_t rng_seed = 1;
    std::uint64_t iterations = 200000;
    // Absent = auto: 0.1 x seed-layout effort.
    std::optional<double> initial_temperature;
    double cooling = 0.995; // geometric factor, applied every 100 iterations
    std::uint32_t restarts = 4;
    // Constrained (QWERTY-delta) budget: max graphemes whose slot may differ
    // from the seed. Absent = unconstrained.
    std::optional<std::uint32_t> max_moves;
    std::uint64_t trace_stride = 0; // 0 = no trace

    void validate() const; // throws ValidationError
};

OptimizeConfig parse_config(const std::string& json_text);
OptimizeConfig load_config_file(const std::string& path);
std::string serialize_config(const OptimizeConfig& config);

struct OptimizationResult {
    Layout layout;
    LayoutMetrics metrics;
    LayoutMetrics seed_metrics;
    std::uint32_t moves_from_base = 0;
    std::vector<std::pair<std::uint64_t, double>> trace; // (iteration, effort)
};

// Assigns graphemes in descending frequency to unpinned slots in ascending
// key-cost order (cost ties by slot id, frequency ties by grapheme text).
// Whitespace graphemes are skipped: the spacebar is not a slot.
Layout greedy_seed(const FrequencyTable& freq, const KeyboardGeometry& geometry,
                   const EffortParams& params, const std::set<std::string>& pinned);

// Simulated-annealing swap search from a seed layout. Deterministic for a
// given rng_seed (restart i draws from rng_seed + i); returns the best layout
// visited across all restarts, never worse than the seed.
OptimizationResult anneal(const Layout& seed, const KeyboardGeometry& geometry,
                          const FrequencyTable& freq, const BigramTable& bigrams,
                          const EffortParams& params, const OptimizeConfig& config);

// Constrained mode: at most max_moves graphemes end up on a different slot
// than in `base` (default budget 6). The base is admissible, so the result
// never has higher effort than the base.
OptimizationResult optimize_qwerty_delta(const Layout& base,
                                         const KeyboardGeometry& geometry,
                                         const FrequencyTable& freq,
                                         const BigramTable& bigrams,
                                         const EffortParams& params,
                                         OptimizeConfig config);

// Exhaustive search over all injective grapheme-to-slot assignments. Bounded
// to instances with at most 8 graphemes and 8 unpinned slots; ties resolved
// by lexicographic enumeration order.
Layout brute_force(const FrequencyTable& freq, const BigramTable& bigrams,
                   const KeyboardGeometry& geometry, const EffortParams& params,
                   const std::set<std::string>& pinned);

// Number of graphemes (over either domain) whose slot differs between layouts.
std::uint32_t placement_diff(const Layout& a, const Layout& b);

} // namespace qillqa
