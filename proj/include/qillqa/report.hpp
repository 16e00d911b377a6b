#pragma once

#include "qillqa/effort.hpp"
#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qillqa {

enum class HeatmapStyle { Text, Svg };

HeatmapStyle heatmap_style_from_string(std::string_view name); // "text" | "svg"

// Per-key usage rendering. Weights are relative frequencies; output bytes are
// deterministic for identical inputs.
std::string render_heatmap(const Layout& layout, const KeyboardGeometry& geometry,
                           const FrequencyTable& freq, HeatmapStyle style);

// Graphemes printed in reports are quoted with control characters escaped,
// so space and newline entries stay visible.
std::string quote_grapheme(const Grapheme& g);

std::string format_top_entries(const FrequencyTable& table, std::size_t limit);
std::string format_metrics_table(const LayoutMetrics& metrics);
std::string format_comparison_table(const LayoutMetrics& baseline,
                                    const LayoutMetrics& candidate,
                                    const ComparisonReport& report);

// Unassigned coverage warning lines for cmd_evaluate; empty when full coverage.
std::string format_unassigned_warning(const Layout& layout, const FrequencyTable& freq);

std::string format_trace_csv(const std::vector<std::pair<std::uint64_t, double>>& trace);

} // namespace qillqa
