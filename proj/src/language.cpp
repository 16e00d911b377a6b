#include "qillqa/language.hpp"

#include "qillqa/errors.hpp"
#include "qillqa/unicode.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qillqa {

TokenMode token_mode_from_string(std::string_view name) {
    if (name == "char")
        return TokenMode::Char;
    if (name == "grapheme")
        return TokenMode::GraphemeUnits;
    throw ValidationError("unknown token mode: " + std::string(name));
}

std::string to_string(TokenMode mode) {
    return mode == TokenMode::Char ? "char" : "grapheme";
}

bool LanguageProfile::in_alphabet(std::string_view unit) const {
    return std::find(alphabet.begin(), alphabet.end(), unit) != alphabet.end();
}

std::vector<Grapheme> LanguageProfile::char_units() const {
    std::vector<Grapheme> units;
    std::set<std::string> seen;
    for (const auto& entry : alphabet) {
        for (char32_t cp : uni::decode_utf8(entry)) {
            std::string unit;
            uni::append_utf8(unit, cp);
            if (seen.insert(unit).second)
                units.push_back(unit);
        }
    }
    return units;
}

void LanguageProfile::validate() const {
    if (name.empty())
        throw ValidationError("profile: name must be non-empty");
    if (alphabet.empty())
        throw ValidationError("profile \"" + name + "\": alphabet is empty");
    if (normalization != "nfc")
        throw ValidationError("profile \"" + name +
                              "\": unsupported normalization \"" + normalization + "\"");

    std::set<std::string> alpha_seen;
    for (const auto& entry : alphabet) {
        if (entry.empty())
            throw ValidationError("profile \"" + name + "\": alphabet: empty entry");
        if (!alpha_seen.insert(entry).second)
            throw ValidationError("profile \"" + name + "\": alphabet: duplicate entry \"" +
                                  entry + "\"");
        const auto cps = uni::decode_utf8(entry);
        for (char32_t cp : cps) {
            if (uni::is_space(cp))
                throw ValidationError("profile \"" + name +
                                      "\": alphabet: entry contains whitespace");
            if (uni::to_lower(cp) != cp)
                throw ValidationError("profile \"" + name + "\": alphabet: entry \"" +
                                      entry + "\" is not lowercase");
        }
    }

    std::set<std::string> multi_seen;
    for (const auto& m : multigraphs) {
        if (uni::scalar_count(m) < 2)
            throw ValidationError("profile \"" + name + "\": multigraphs: entry \"" + m +
                                  "\" is shorter than 2 characters");
        if (!multi_seen.insert(m).second)
            throw ValidationError("profile \"" + name + "\": multigraphs: duplicate entry \"" +
                                  m + "\"");
        if (!in_alphabet(m))
            throw ValidationError("profile \"" + name + "\": multigraphs: entry \"" + m +
                                  "\" is not in the alphabet");
    }

    const bool has_apostrophe = in_alphabet("'");
    if (apostrophe_is_letter && !has_apostrophe)
        throw ValidationError("profile \"" + name +
                              "\": apostrophe_is_letter is set but \"'\" is not in the alphabet");
    if (!apostrophe_is_letter && has_apostrophe)
        throw ValidationError("profile \"" + name +
                              "\": alphabet contains \"'\" but apostrophe_is_letter is false");
}

namespace {

LanguageProfile profile_from_json(const nlohmann::json& doc, const std::string& context) {
    LanguageProfile profile;
    profile.name = detail::require_string(doc, "name", context);

    const auto read_grapheme_array = [&](const char* key) {
        const auto& field = detail::require_field(doc, key, context);
        if (!field.is_array())
            throw ParseError(context + ": field \"" + std::string(key) +
                             "\" must be an array of strings");
        std::vector<Grapheme> out;
        for (const auto& item : field) {
            if (!item.is_string())
                throw ParseError(context + ": field \"" + std::string(key) +
                                 "\" must be an array of strings");
            out.push_back(item.get<std::string>());
        }
        return out;
    };

    profile.alphabet = read_grapheme_array("alphabet");
    profile.multigraphs = read_grapheme_array("multigraphs");

    const auto& apo = detail::require_field(doc, "apostrophe_is_letter", context);
    if (!apo.is_boolean())
        throw ParseError(context + ": field \"apostrophe_is_letter\" must be a boolean");
    profile.apostrophe_is_letter = apo.get<bool>();

    if (doc.contains("normalization"))
        profile.normalization = detail::require_string(doc, "normalization", context);

    profile.validate();
    return profile;
}

} // namespace

LanguageProfile load_profile(const std::string& json_text) {
    return profile_from_json(detail::parse_json(json_text, "profile"), "profile");
}

LanguageProfile load_profile_file(const std::string& path) {
    return profile_from_json(detail::parse_json(detail::read_file(path), path), path);
}

const LanguageProfile& builtin_profile(std::string_view name) {
    // The Quechua alphabet with its digraphs and aspirated consonant series.
    // Aspirates are listed in the alphabet as well: every multigraph must be
    // an alphabet member.
    static const LanguageProfile quechua{
        "quechua",
        {"a", "ch", "h", "i", "k", "kh", "l", "ll", "m", "n", "ñ", "p", "ph",
         "q", "qh", "r", "s", "t", "u", "w", "y", "'"},
        {"ch", "ll", "kh", "ph", "qh"},
        true,
        "nfc"};
    static const LanguageProfile spanish{
        "spanish",
        {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n",
         "ñ", "o", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z",
         "á", "é", "í", "ó", "ú", "ü"},
        {},
        false,
        "nfc"};
    static const LanguageProfile english{
        "english",
        {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m",
         "n", "o", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z"},
        {},
        false,
        "nfc"};

    if (name == "quechua")
        return quechua;
    if (name == "spanish")
        return spanish;
    if (name == "english")
        return english;
    throw ValidationError("unknown built-in profile: " + std::string(name));
}

std::string normalize(std::string_view text) {
    auto cps = uni::compose_nfc(uni::decode_utf8(text));
    for (auto& cp : cps) {
        if (uni::is_alpha(cp))
            cp = uni::to_lower(cp);
    }
    return uni::encode_utf8(cps);
}

std::vector<Grapheme> tokenize(std::string_view normalized_text,
                               const LanguageProfile& profile, TokenMode mode) {
    std::vector<Grapheme> tokens;

    if (mode == TokenMode::Char) {
        for (char32_t cp : uni::decode_utf8(normalized_text)) {
            std::string t;
            uni::append_utf8(t, cp);
            tokens.push_back(std::move(t));
        }
        return tokens;
    }

    // Greedy longest-match: multigraphs bucketed by first scalar, longest
    // (in bytes) first so maximal munch falls out of first-match.
    std::map<char32_t, std::vector<const Grapheme*>> by_first;
    for (const auto& m : profile.multigraphs) {
        const auto cps = uni::decode_utf8(m);
        by_first[cps.front()].push_back(&m);
    }
    for (auto& [first, list] : by_first) {
        std::sort(list.begin(), list.end(), [](const Grapheme* a, const Grapheme* b) {
            if (a->size() != b->size())
                return a->size() > b->size();
            return *a < *b;
        });
    }

    const auto cps = uni::decode_utf8(normalized_text);
    std::string encoded;
    std::vector<std::size_t> byte_offset(cps.size() + 1);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        byte_offset[i] = encoded.size();
        uni::append_utf8(encoded, cps[i]);
    }
    byte_offset[cps.size()] = encoded.size();

    std::size_t i = 0;
    while (i < cps.size()) {
        const Grapheme* matched = nullptr;
        if (auto it = by_first.find(cps[i]); it != by_first.end()) {
            const std::string_view rest(encoded.data() + byte_offset[i],
                                        encoded.size() - byte_offset[i]);
            for (const Grapheme* cand : it->second) {
                if (rest.substr(0, cand->size()) == *cand) {
                    matched = cand;
                    break;
                }
            }
        }
        if (matched) {
            tokens.push_back(*matched);
            i += uni::scalar_count(*matched);
        } else {
            std::string t;
            uni::append_utf8(t, cps[i]);
            tokens.push_back(std::move(t));
            ++i;
        }
    }
    return tokens;
}

bool is_whitespace_grapheme(const Grapheme& g) {
    if (g.empty())
        return false;
    for (char32_t cp : uni::decode_utf8(g)) {
        if (!uni::is_space(cp))
            return false;
    }
    return true;
}

} // namespace qillqa
