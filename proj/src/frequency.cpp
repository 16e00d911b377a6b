#include "qillqa/frequency.hpp"

#include "qillqa/errors.hpp"
#include "json_util.hpp"

#include <algorithm>

namespace qillqa {

std::uint64_t FrequencyTable::count(const Grapheme& g) const {
    const auto it = counts.find(g);
    return it == counts.end() ? 0 : it->second;
}

void FrequencyTable::add(const Grapheme& g, std::uint64_t n) {
    if (n == 0)
        return;
    counts[g] += n;
    total += n;
}

std::uint64_t BigramTable::count(const Grapheme& a, const Grapheme& b) const {
    const auto it = counts.find({a, b});
    return it == counts.end() ? 0 : it->second;
}

void BigramTable::add(const Grapheme& a, const Grapheme& b, std::uint64_t n) {
    if (n == 0)
        return;
    counts[{a, b}] += n;
    total += n;
}

FrequencyTable count_unigrams(std::span<const Grapheme> tokens) {
    FrequencyTable table;
    for (const auto& t : tokens)
        table.add(t);
    return table;
}

BigramTable count_bigrams(std::span<const Grapheme> tokens) {
    BigramTable table;
    const Grapheme* prev = nullptr;
    for (const auto& t : tokens) {
        if (is_whitespace_grapheme(t)) {
            prev = nullptr;
            continue;
        }
        if (prev)
            table.add(*prev, t);
        prev = &t;
    }
    return table;
}

FrequencyTable merge(std::span<const FrequencyTable> tables) {
    FrequencyTable out;
    for (const auto& t : tables) {
        for (const auto& [g, n] : t.counts)
            out.add(g, n);
    }
    return out;
}

std::map<Grapheme, double> relative(const FrequencyTable& table) {
    if (table.total == 0)
        throw ValidationError("relative frequencies undefined for an empty table");
    std::map<Grapheme, double> out;
    for (const auto& [g, n] : table.counts)
        out[g] = static_cast<double>(n) / static_cast<double>(table.total);
    return out;
}

std::vector<std::pair<Grapheme, std::uint64_t>> sorted_entries(const FrequencyTable& table) {
    std::vector<std::pair<Grapheme, std::uint64_t>> entries(table.counts.begin(),
                                                            table.counts.end());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return entries;
}

namespace {

using nlohmann::json;

void check_table_invariants(std::uint64_t declared_total, std::uint64_t sum,
                            const std::string& context) {
    if (declared_total != sum)
        throw ValidationError(context + ": field \"total\" (" +
                              std::to_string(declared_total) +
                              ") does not equal the sum of counts (" +
                              std::to_string(sum) + ")");
}

std::uint64_t require_count(const json& value, const std::string& context,
                            const std::string& key) {
    if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0)
        throw ParseError(context + ": count for \"" + key +
                         "\" must be a positive integer");
    return value.get<std::uint64_t>();
}

} // namespace

std::string serialize_table(const FrequencyTable& table) {
    json counts = json::object();
    for (const auto& [g, n] : table.counts)
        counts[g] = n;
    const json doc{{"counts", counts}, {"total", table.total}};
    return doc.dump(2) + "\n";
}

FrequencyTable parse_table(const std::string& json_text) {
    const auto doc = detail::parse_json(json_text, "frequency table");
    const auto& counts = detail::require_field(doc, "counts", "frequency table");
    const auto& total = detail::require_field(doc, "total", "frequency table");
    if (!counts.is_object())
        throw ParseError("frequency table: field \"counts\" must be an object");
    if (!total.is_number_unsigned())
        throw ParseError("frequency table: field \"total\" must be a non-negative integer");

    FrequencyTable table;
    std::uint64_t sum = 0;
    for (const auto& [g, n] : counts.items()) {
        if (g.empty())
            throw ParseError("frequency table: empty grapheme key");
        const auto c = require_count(n, "frequency table", g);
        table.counts[g] = c;
        sum += c;
    }
    check_table_invariants(total.get<std::uint64_t>(), sum, "frequency table");
    table.total = sum;
    return table;
}

FrequencyTable load_table_file(const std::string& path) {
    try {
        return parse_table(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_table_file(const FrequencyTable& table, const std::string& path) {
    detail::write_file(path, serialize_table(table));
}

std::string serialize_bigrams(const BigramTable& table) {
    json counts = json::object();
    for (const auto& [pair, n] : table.counts)
        counts[pair.first][pair.second] = n;
    const json doc{{"counts", counts}, {"total", table.total}};
    return doc.dump(2) + "\n";
}

BigramTable parse_bigrams(const std::string& json_text) {
    const auto doc = detail::parse_json(json_text, "bigram table");
    const auto& counts = detail::require_field(doc, "counts", "bigram table");
    const auto& total = detail::require_field(doc, "total", "bigram table");
    if (!counts.is_object())
        throw ParseError("bigram table: field \"counts\" must be an object");
    if (!total.is_number_unsigned())
        throw ParseError("bigram table: field \"total\" must be a non-negative integer");

    BigramTable table;
    std::uint64_t sum = 0;
    for (const auto& [g1, inner] : counts.items()) {
        if (!inner.is_object())
            throw ParseError("bigram table: counts for \"" + g1 + "\" must be an object");
        for (const auto& [g2, n] : inner.items()) {
            const auto c = require_count(n, "bigram table", g1 + g2);
            table.counts[{g1, g2}] = c;
            sum += c;
        }
    }
    check_table_invariants(total.get<std::uint64_t>(), sum, "bigram table");
    table.total = sum;
    return table;
}

BigramTable load_bigrams_file(const std::string& path) {
    try {
        return parse_bigrams(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_bigrams_file(const BigramTable& table, const std::string& path) {
    detail::write_file(path, serialize_bigrams(table));
}

} // namespace qillqa
