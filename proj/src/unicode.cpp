#include "qillqa/unicode.hpp"

#include "qillqa/errors.hpp"

#include <array>

namespace qillqa::uni {

namespace {

struct Composition {
    char32_t base;
    char32_t mark;
    char32_t precomposed;
};

// base + combining mark -> precomposed letter, lowercase and uppercase rows.
constexpr std::array<Composition, 61> kCompositions{{
    {U'a', 0x0300, U'à'}, {U'e', 0x0300, U'è'}, {U'i', 0x0300, U'ì'},
    {U'o', 0x0300, U'ò'}, {U'u', 0x0300, U'ù'},
    {U'A', 0x0300, U'À'}, {U'E', 0x0300, U'È'}, {U'I', 0x0300, U'Ì'},
    {U'O', 0x0300, U'Ò'}, {U'U', 0x0300, U'Ù'},
    {U'a', 0x0301, U'á'}, {U'e', 0x0301, U'é'}, {U'i', 0x0301, U'í'},
    {U'o', 0x0301, U'ó'}, {U'u', 0x0301, U'ú'}, {U'y', 0x0301, U'ý'},
    {U'A', 0x0301, U'Á'}, {U'E', 0x0301, U'É'}, {U'I', 0x0301, U'Í'},
    {U'O', 0x0301, U'Ó'}, {U'U', 0x0301, U'Ú'}, {U'Y', 0x0301, U'Ý'},
    {U'a', 0x0302, U'â'}, {U'e', 0x0302, U'ê'}, {U'i', 0x0302, U'î'},
    {U'o', 0x0302, U'ô'}, {U'u', 0x0302, U'û'},
    {U'A', 0x0302, U'Â'}, {U'E', 0x0302, U'Ê'}, {U'I', 0x0302, U'Î'},
    {U'O', 0x0302, U'Ô'}, {U'U', 0x0302, U'Û'},
    {U'a', 0x0303, U'ã'}, {U'n', 0x0303, U'ñ'}, {U'o', 0x0303, U'õ'},
    {U'A', 0x0303, U'Ã'}, {U'N', 0x0303, U'Ñ'}, {U'O', 0x0303, U'Õ'},
    {U'a', 0x0308, U'ä'}, {U'e', 0x0308, U'ë'}, {U'i', 0x0308, U'ï'},
    {U'o', 0x0308, U'ö'}, {U'u', 0x0308, U'ü'}, {U'y', 0x0308, U'ÿ'},
    {U'A', 0x0308, U'Ä'}, {U'E', 0x0308, U'Ë'}, {U'I', 0x0308, U'Ï'},
    {U'O', 0x0308, U'Ö'}, {U'U', 0x0308, U'Ü'},
    {U'a', 0x030A, U'å'}, {U'A', 0x030A, U'Å'},
    {U'c', 0x0327, U'ç'}, {U'C', 0x0327, U'Ç'},
    {U'n', 0x0301, U'ń'}, {U'N', 0x0301, U'Ń'},
    {U'c', 0x0301, U'ć'}, {U'C', 0x0301, U'Ć'},
    {U's', 0x0301, U'ś'}, {U'S', 0x0301, U'Ś'},
    {U'z', 0x0301, U'ź'}, {U'Z', 0x0301, U'Ź'},
}};

char32_t compose_pair(char32_t base, char32_t mark) {
    for (const auto& c : kCompositions) {
        if (c.base == base && c.mark == mark)
            return c.precomposed;
    }
    return 0;
}

} // namespace

std::vector<char32_t> decode_utf8(std::string_view text) {
    std::vector<char32_t> out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    while (i < text.size()) {
        const unsigned char b0 = bytes[i];
        std::size_t len;
        char32_t cp;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            throw Utf8Error("invalid UTF-8 lead byte", i);
        }
        if (i + len > text.size())
            throw Utf8Error("truncated UTF-8 sequence", i);
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char b = bytes[i + k];
            if ((b & 0xC0) != 0x80)
                throw Utf8Error("invalid UTF-8 continuation byte", i);
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMinForLen[len])
            throw Utf8Error("overlong UTF-8 sequence", i);
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw Utf8Error("UTF-8 sequence outside Unicode scalar range", i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps)
        append_utf8(out, cp);
    return out;
}

bool is_alpha(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z'))
        return true;
    if (cp >= 0xC0 && cp <= 0xFF)
        return cp != 0xD7 && cp != 0xF7;
    return cp >= 0x100 && cp <= 0x17F;
}

bool is_space(char32_t cp) {
    switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0xA0:
        return true;
    default:
        return false;
    }
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z')
        return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)
        return cp + 0x20;
    if (cp == 0x130) // İ: simple lowercase mapping
        return U'i';
    if (cp >= 0x100 && cp <= 0x137)
        return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148)
        return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177)
        return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x178) // Ÿ
        return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E)
        return (cp % 2 == 1) ? cp + 1 : cp;
    return cp;
}

std::vector<char32_t> compose_nfc(const std::vector<char32_t>& cps) {
    std::vector<char32_t> out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!out.empty()) {
            if (char32_t composed = compose_pair(out.back(), cp); composed != 0) {
                out.back() = composed;
                continue;
            }
        }
        out.push_back(cp);
    }
    return out;
}

std::size_t scalar_count(std::string_view text) {
    return decode_utf8(text).size();
}

} // namespace qillqa::uni
