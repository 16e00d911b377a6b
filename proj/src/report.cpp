#include "qillqa/report.hpp"

#include "qillqa/errors.hpp"
#include "qillqa/unicode.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace qillqa {

namespace {

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string pad_label(const std::string& label, std::size_t width) {
    std::string out = label;
    const std::size_t display = uni::scalar_count(label);
    for (std::size_t i = display; i < width; ++i)
        out.push_back(' ');
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

struct KeyUsage {
    const KeySlot* slot;
    std::string label; // empty when the slot is unassigned
    double share = 0.0;
};

std::vector<KeyUsage> key_usages(const Layout& layout, const KeyboardGeometry& geometry,
                                 const FrequencyTable& freq) {
    std::map<std::string, const Grapheme*> by_slot;
    for (const auto& [g, slot_id] : layout.assignment)
        by_slot[slot_id] = &g;

    const auto shares = freq.total > 0 ? relative(freq) : std::map<Grapheme, double>{};
    std::vector<KeyUsage> usages;
    for (const auto& slot : geometry.slots()) {
        KeyUsage usage{&slot, "", 0.0};
        if (const auto it = by_slot.find(slot.id); it != by_slot.end()) {
            usage.label = *it->second;
            if (const auto sh = shares.find(*it->second); sh != shares.end())
                usage.share = sh->second;
        }
        usages.push_back(std::move(usage));
    }
    return usages;
}

std::string render_text(const Layout& layout, const std::vector<KeyUsage>& usages) {
    std::ostringstream out;
    out << layout.name << " on " << layout.geometry
        << " (share of all typed characters per key; unassigned keys shown as \xc2\xb7)\n";
    for (Row row : {Row::Top, Row::Home, Row::Bottom}) {
        out << pad_label(to_string(row), 7);
        for (const auto& usage : usages) {
            if (usage.slot->row != row)
                continue;
            out << "| ";
            if (usage.label.empty())
                out << pad_label("\xc2\xb7", 2) << "      ";
            else
                out << pad_label(usage.label, 2) << " " << fmt("%5.1f", usage.share * 100.0)
                    << "%";
            out << " ";
        }
        out << "|\n";
    }
    return out.str();
}

std::string render_svg(const std::vector<KeyUsage>& usages) {
    constexpr int kCell = 56;
    constexpr int kStep = 60;
    constexpr int kMargin = 8;
    const int width = kMargin * 2 + 12 * kStep - (kStep - kCell);
    const int height = kMargin * 2 + 3 * kStep - (kStep - kCell);

    double max_share = 0.0;
    for (const auto& usage : usages)
        max_share = std::max(max_share, usage.share);

    const auto row_index = [](Row row) {
        return row == Row::Top ? 0 : row == Row::Home ? 1 : 2;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    for (const auto& usage : usages) {
        const int x = kMargin + usage.slot->column * kStep;
        const int y = kMargin + row_index(usage.slot->row) * kStep;
        const double opacity = max_share > 0.0 ? usage.share / max_share : 0.0;
        out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\" fill=\"#1f6fb2\" fill-opacity=\""
            << fmt("%.4f", opacity) << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        if (!usage.label.empty()) {
            out << "  <text x=\"" << x + kCell / 2 << "\" y=\"" << y + 26
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"18\">"
                << xml_escape(usage.label) << "</text>\n";
            out << "  <text x=\"" << x + kCell / 2 << "\" y=\"" << y + 46
                << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
                << fmt("%.1f", usage.share * 100.0) << "%</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace

HeatmapStyle heatmap_style_from_string(std::string_view name) {
    if (name == "text")
        return HeatmapStyle::Text;
    if (name == "svg")
        return HeatmapStyle::Svg;
    throw ValidationError("unknown heatmap style: " + std::string(name));
}

std::string render_heatmap(const Layout& layout, const KeyboardGeometry& geometry,
                           const FrequencyTable& freq, HeatmapStyle style) {
    layout.validate(geometry);
    const auto usages = key_usages(layout, geometry, freq);
    return style == HeatmapStyle::Text ? render_text(layout, usages)
                                       : render_svg(usages);
}

std::string quote_grapheme(const Grapheme& g) {
    std::string out = "'";
    for (char c : g) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c);
        }
    }
    out += "'";
    return out;
}

std::string format_top_entries(const FrequencyTable& table, std::size_t limit) {
    std::ostringstream out;
    out << "rank  unit   count      share\n";
    const auto entries = sorted_entries(table);
    const auto shares = table.total > 0 ? relative(table) : std::map<Grapheme, double>{};
    for (std::size_t i = 0; i < entries.size() && i < limit; ++i) {
        const auto& [g, n] = entries[i];
        char rank[8];
        std::snprintf(rank, sizeof rank, "%4zu", i + 1);
        out << rank << "  " << pad_label(quote_grapheme(g), 5) << " "
            << pad_label(std::to_string(n), 10) << " "
            << fmt("%5.1f", shares.at(g) * 100.0) << "%\n";
    }
    return out.str();
}

std::string format_metrics_table(const LayoutMetrics& metrics) {
    std::ostringstream out;
    const auto line = [&](const std::string& label, const std::string& value) {
        out << pad_label(label, 22) << value << "\n";
    };
    line("total effort", fmt("%.2f", metrics.total_effort));
    line("home row usage", fmt("%5.1f", metrics.row_usage.at(Row::Home) * 100.0) + "%");
    line("top row usage", fmt("%5.1f", metrics.row_usage.at(Row::Top) * 100.0) + "%");
    line("bottom row usage", fmt("%5.1f", metrics.row_usage.at(Row::Bottom) * 100.0) + "%");
    line("same-finger bigrams", fmt("%5.1f", metrics.same_finger_fraction * 100.0) + "%");
    line("hand alternation", fmt("%5.1f", metrics.hand_alternation_fraction * 100.0) + "%");
    line("unassigned mass", fmt("%5.1f", metrics.unassigned_mass * 100.0) + "%");
    return out.str();
}

std::string format_comparison_table(const LayoutMetrics& baseline,
                                    const LayoutMetrics& candidate,
                                    const ComparisonReport& report) {
    std::ostringstream out;
    const auto line = [&](const std::string& label, const std::string& a,
                          const std::string& b) {
        out << pad_label(label, 22) << pad_label(a, 12) << b << "\n";
    };
    line("metric", "baseline", "candidate");
    line("total effort", fmt("%.2f", baseline.total_effort),
         fmt("%.2f", candidate.total_effort));
    const auto pct = [&](double v) { return fmt("%.1f", v * 100.0) + "%"; };
    line("home row usage", pct(baseline.row_usage.at(Row::Home)),
         pct(candidate.row_usage.at(Row::Home)));
    line("top row usage", pct(baseline.row_usage.at(Row::Top)),
         pct(candidate.row_usage.at(Row::Top)));
    line("bottom row usage", pct(baseline.row_usage.at(Row::Bottom)),
         pct(candidate.row_usage.at(Row::Bottom)));
    line("same-finger bigrams", pct(baseline.same_finger_fraction),
         pct(candidate.same_finger_fraction));
    line("hand alternation", pct(baseline.hand_alternation_fraction),
         pct(candidate.hand_alternation_fraction));
    line("unassigned mass", pct(baseline.unassigned_mass),
         pct(candidate.unassigned_mass));
    out << "\neffort reduction: " << fmt("%.1f", report.effort_reduction_percent)
        << "%\n";
    if (!report.digests_match)
        out << "warning: metrics were computed from different inputs; "
               "percentages are not directly comparable\n";
    return out.str();
}

std::string format_unassigned_warning(const Layout& layout, const FrequencyTable& freq) {
    std::vector<std::pair<Grapheme, std::uint64_t>> missing;
    for (const auto& [g, n] : freq.counts) {
        if (!is_whitespace_grapheme(g) && !layout.assignment.contains(g))
            missing.push_back({g, n});
    }
    if (missing.empty())
        return "";
    std::sort(missing.begin(), missing.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    std::ostringstream out;
    out << "warning: unassigned graphemes carry frequency mass:";
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i)
        out << " " << quote_grapheme(missing[i].first) << " (" << missing[i].second << ")";
    if (missing.size() > 8)
        out << " and " << missing.size() - 8 << " more";
    out << "\n";
    return out.str();
}

std::string format_trace_csv(const std::vector<std::pair<std::uint64_t, double>>& trace) {
    std::ostringstream out;
    out << "iteration,effort\n";
    for (const auto& [iteration, effort] : trace)
        out << iteration << "," << fmt("%.6f", effort) << "\n";
    return out.str();
}

} // namespace qillqa
