#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qillqa {

// A counting unit: a single character or a language multigraph ("ch", "ll").
// Token streams may contain whitespace and out-of-alphabet characters; they
// are emitted so reports can expose corpus noise and filtered downstream.
using Grapheme = std::string;

enum class TokenMode { Char, GraphemeUnits };

TokenMode token_mode_from_string(std::string_view name); // "char" | "grapheme"
std::string to_string(TokenMode mode);

struct LanguageProfile {
    std::string name;
    std::vector<Grapheme> alphabet;    // ordered, lowercase, NFC
    std::vector<Grapheme> multigraphs; // every entry also appears in alphabet
    bool apostrophe_is_letter = false;
    std::string normalization = "nfc";

    bool in_alphabet(std::string_view unit) const;

    // Single-character counting units derivable from the alphabet (char mode):
    // each scalar of each alphabet entry, deduplicated, in first-seen order.
    std::vector<Grapheme> char_units() const;

    // Throws ValidationError naming the offending field/entry.
    void validate() const;
};

// Parses and validates a profile document (JSON: name, alphabet, multigraphs,
// apostrophe_is_letter, optional normalization).
LanguageProfile load_profile(const std::string& json_text);
LanguageProfile load_profile_file(const std::string& path);

// name in {quechua, spanish, english}; throws ValidationError otherwise.
const LanguageProfile& builtin_profile(std::string_view name);

// NFC composition followed by lowercasing of alphabetic characters only;
// digits, punctuation, whitespace and the apostrophe pass through unchanged.
std::string normalize(std::string_view text);

// Splits normalized text into counting units. Char mode emits one grapheme
// per Unicode scalar. Grapheme mode runs greedy longest-match against the
// profile's multigraph inventory; unmatched scalars come out one by one.
std::vector<Grapheme> tokenize(std::string_view normalized_text,
                               const LanguageProfile& profile,
                               TokenMode mode);

bool is_whitespace_grapheme(const Grapheme& g);

} // namespace qillqa
