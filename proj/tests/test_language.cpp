#include "qillqa/language.hpp"

#include "qillqa/errors.hpp"
#include "qillqa/unicode.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace qillqa;

TEST_CASE("builtin quechua profile carries digraphs and aspirates") {
    const auto& profile = builtin_profile("quechua");
    CHECK(profile.name == "quechua");
    CHECK(profile.apostrophe_is_letter);

    for (const char* unit : {"a", "ch", "h", "i", "k", "l", "ll", "m", "n",
                             "ñ", "p", "q", "r", "s", "t", "u", "w", "y", "'"})
        CHECK_MESSAGE(profile.in_alphabet(unit), "missing ", unit);
    CHECK(profile.multigraphs ==
          std::vector<Grapheme>{"ch", "ll", "kh", "ph", "qh"});
    // Multigraphs are alphabet members, so the aspirates are listed as well.
    for (const auto& m : profile.multigraphs)
        CHECK(profile.in_alphabet(m));

    CHECK_NOTHROW(profile.validate());
}

TEST_CASE("builtin spanish and english profiles") {
    CHECK(builtin_profile("spanish").in_alphabet("ñ"));
    CHECK(builtin_profile("spanish").in_alphabet("ü"));
    CHECK_FALSE(builtin_profile("english").in_alphabet("ñ"));
    CHECK(builtin_profile("english").multigraphs.empty());
    CHECK_THROWS_AS(builtin_profile("klingon"), ValidationError);
}

TEST_CASE("load_profile accepts a valid document") {
    const auto profile = load_profile(R"({
        "name": "toy",
        "alphabet": ["a", "b", "ch"],
        "multigraphs": ["ch"],
        "apostrophe_is_letter": false
    })");
    CHECK(profile.name == "toy");
    CHECK(profile.alphabet.size() == 3);
}

TEST_CASE("load_profile rejects invariant violations") {
    SUBCASE("multigraph missing from alphabet") {
        CHECK_THROWS_WITH_AS(
            load_profile(R"({"name":"t","alphabet":["a"],"multigraphs":["ch"],
                             "apostrophe_is_letter":false})"),
            doctest::Contains("multigraphs"), ValidationError);
    }
    SUBCASE("empty alphabet") {
        CHECK_THROWS_WITH_AS(
            load_profile(R"({"name":"t","alphabet":[],"multigraphs":[],
                             "apostrophe_is_letter":false})"),
            doctest::Contains("alphabet"), ValidationError);
    }
    SUBCASE("uppercase entry") {
        CHECK_THROWS_AS(
            load_profile(R"({"name":"t","alphabet":["A"],"multigraphs":[],
                             "apostrophe_is_letter":false})"),
            ValidationError);
    }
    SUBCASE("malformed json") {
        CHECK_THROWS_AS(load_profile("{"), ParseError);
    }
    SUBCASE("missing field") {
        CHECK_THROWS_WITH_AS(load_profile(R"({"name":"t"})"),
                             doctest::Contains("alphabet"), ParseError);
    }
}

TEST_CASE("normalize lowercases alphabetic characters only") {
    CHECK(normalize("Ñan") == "ñan");
    CHECK(normalize("A'B") == "a'b");
    CHECK(normalize("Qhapaq 42!") == "qhapaq 42!");
    CHECK(normalize("ÚÉÍÓ") == "úéíó");
}

TEST_CASE("normalize composes decomposed sequences") {
    // n + combining tilde, u + combining acute
    CHECK(normalize("n\xcc\x83") == "ñ");
    CHECK(normalize("N\xcc\x83") == "ñ");
    CHECK(normalize("u\xcc\x81") == "ú");
    // unrelated combining mark passes through
    CHECK(normalize("q\xcc\x83") == "q\xcc\x83");
}

TEST_CASE("normalize is idempotent") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> pieces = {"a",  "CH", "ñ", "Ñ",  "'", " ",
                                             "n\xcc\x83", "Ú", "x", ",", "LL"};
    for (int i = 0; i < 200; ++i) {
        std::string text;
        const auto len = rng() % 12;
        for (std::size_t k = 0; k < len; ++k)
            text += pieces[rng() % pieces.size()];
        const auto once = normalize(text);
        CHECK(normalize(once) == once);
    }
}

TEST_CASE("tokenize char mode splits every scalar") {
    const auto& profile = builtin_profile("quechua");
    CHECK(tokenize("llaqta", profile, TokenMode::Char) ==
          std::vector<Grapheme>{"l", "l", "a", "q", "t", "a"});
    CHECK(tokenize("ñawi", profile, TokenMode::Char) ==
          std::vector<Grapheme>{"ñ", "a", "w", "i"});
    // one token per Unicode scalar, including spaces and punctuation
    const auto tokens = tokenize("ama sua.", profile, TokenMode::Char);
    CHECK(tokens.size() == uni::scalar_count("ama sua."));
}

TEST_CASE("tokenize grapheme mode uses greedy longest match") {
    const auto& profile = builtin_profile("quechua");
    CHECK(tokenize("llaqta", profile, TokenMode::GraphemeUnits) ==
          std::vector<Grapheme>{"ll", "a", "q", "t", "a"});
    // apostrophe stays a standalone grapheme; it is not fused into ejectives
    CHECK(tokenize("ch'aska", profile, TokenMode::GraphemeUnits) ==
          std::vector<Grapheme>{"ch", "'", "a", "s", "k", "a"});
    CHECK(tokenize("qhichwa", profile, TokenMode::GraphemeUnits) ==
          std::vector<Grapheme>{"qh", "i", "ch", "w", "a"});
    // out-of-alphabet characters are emitted, not dropped
    CHECK(tokenize("ox2", profile, TokenMode::GraphemeUnits) ==
          std::vector<Grapheme>{"o", "x", "2"});
}

TEST_CASE("tokenization is lossless and deterministic") {
    const auto& profile = builtin_profile("quechua");
    std::mt19937_64 rng(11);
    std::vector<std::string> pieces(profile.alphabet.begin(), profile.alphabet.end());
    pieces.push_back(" ");
    pieces.push_back("x");
    pieces.push_back(".");

    for (int i = 0; i < 200; ++i) {
        std::string text;
        const auto len = rng() % 24;
        for (std::size_t k = 0; k < len; ++k)
            text += pieces[rng() % pieces.size()];

        for (TokenMode mode : {TokenMode::Char, TokenMode::GraphemeUnits}) {
            const auto tokens = tokenize(text, profile, mode);
            std::string rebuilt;
            for (const auto& t : tokens)
                rebuilt += t;
            CHECK(rebuilt == text);
            CHECK(tokenize(text, profile, mode) == tokens);
        }
        CHECK(tokenize(text, profile, TokenMode::Char).size() ==
              uni::scalar_count(text));
    }
}

TEST_CASE("char_units decomposes the alphabet") {
    const auto units = builtin_profile("quechua").char_units();
    for (const char* unit : {"a", "c", "h", "k", "l", "ñ", "'", "q"})
        CHECK(std::find(units.begin(), units.end(), unit) != units.end());
    // no multigraphs survive
    for (const auto& u : units)
        CHECK(uni::scalar_count(u) == 1);
}

TEST_CASE("whitespace graphemes") {
    CHECK(is_whitespace_grapheme(" "));
    CHECK(is_whitespace_grapheme("\n"));
    CHECK_FALSE(is_whitespace_grapheme("a"));
    CHECK_FALSE(is_whitespace_grapheme("'"));
}

TEST_CASE("invalid utf-8 reports the byte offset") {
    try {
        normalize(std::string("ab\xff") + "cd");
        FAIL("expected Utf8Error");
    } catch (const Utf8Error& e) {
        CHECK(e.byte_offset() == 2);
    }
}
