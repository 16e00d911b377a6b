#pragma once

#include "qillqa/language.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qillqa {

// Sparse unigram counts. Zero-count entries are never stored; absent means 0.
struct FrequencyTable {
    std::map<Grapheme, std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t count(const Grapheme& g) const;
    void add(const Grapheme& g, std::uint64_t n = 1);

    bool operator==(const FrequencyTable&) const = default;
};

// Directional adjacent-pair counts (word-internal only).
struct BigramTable {
    std::map<std::pair<Grapheme, Grapheme>, std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t count(const Grapheme& a, const Grapheme& b) const;
    void add(const Grapheme& a, const Grapheme& b, std::uint64_t n = 1);

    bool operator==(const BigramTable&) const = default;
};

FrequencyTable count_unigrams(std::span<const Grapheme> tokens);

// Pairs spanning a whitespace grapheme are excluded: the spacebar is outside
// layout optimization, so cross-space pairs carry no signal.
BigramTable count_bigrams(std::span<const Grapheme> tokens);

FrequencyTable merge(std::span<const FrequencyTable> tables);

// count/total per grapheme; throws ValidationError when total is 0.
std::map<Grapheme, double> relative(const FrequencyTable& table);

// Descending by count, ties by grapheme text ascending.
std::vector<std::pair<Grapheme, std::uint64_t>> sorted_entries(const FrequencyTable& table);

// JSON document schema: { "counts": { "<grapheme>": n, ... }, "total": N }.
std::string serialize_table(const FrequencyTable& table);
FrequencyTable parse_table(const std::string& json_text);
FrequencyTable load_table_file(const std::string& path);
void save_table_file(const FrequencyTable& table, const std::string& path);

// Bigram schema nests the second grapheme:
// { "counts": { "<g1>": { "<g2>": n, ... }, ... }, "total": N }.
std::string serialize_bigrams(const BigramTable& table);
BigramTable parse_bigrams(const std::string& json_text);
BigramTable load_bigrams_file(const std::string& path);
void save_bigrams_file(const BigramTable& table, const std::string& path);

} // namespace qillqa
