#include "qillqa/builtin_data.hpp"

#include "qillqa/errors.hpp"

namespace qillqa {

namespace {

constexpr std::string_view kTable1English = R"json({
  "counts": {
    " ": 1619668,
    "'": 6422,
    "-": 498,
    "a": 513640,
    "b": 98694,
    "c": 162484,
    "d": 294176,
    "e": 839158,
    "f": 172990,
    "g": 126286,
    "h": 455478,
    "i": 469042,
    "j": 7938,
    "k": 47658,
    "l": 223712,
    "m": 169262,
    "n": 469234,
    "o": 531022,
    "p": 107224,
    "q": 6412,
    "r": 391962,
    "s": 392940,
    "t": 640258,
    "u": 185180,
    "v": 65426,
    "w": 163458,
    "x": 10082,
    "y": 131696,
    "z": 2130
  },
  "total": 8304130
}
)json";
constexpr std::string_view kTable1Spanish = R"json({
  "counts": {
    " ": 1852000,
    "a": 750196,
    "b": 86372,
    "c": 203402,
    "d": 299150,
    "e": 1034122,
    "f": 26886,
    "g": 69138,
    "h": 92014,
    "i": 288410,
    "j": 30150,
    "k": 854,
    "l": 322082,
    "m": 210008,
    "n": 479322,
    "o": 657204,
    "p": 169190,
    "q": 141008,
    "r": 372966,
    "s": 572004,
    "t": 312322,
    "u": 372214,
    "v": 74270,
    "w": 168,
    "x": 3702,
    "y": 95284,
    "z": 15448,
    "é": 52890,
    "í": 50306,
    "ñ": 9688,
    "ó": 31726,
    "ú": 12076,
    "ü": 44
  },
  "total": 8686616
}
)json";
constexpr std::string_view kTable1Quechua = R"json({
  "counts": {
    " ": 11059,
    "'": 1133,
    "-": 14,
    "a": 21300,
    "b": 62,
    "c": 3231,
    "d": 78,
    "e": 174,
    "f": 5,
    "g": 30,
    "h": 4788,
    "i": 6576,
    "j": 17,
    "k": 5082,
    "l": 3239,
    "m": 3246,
    "n": 7307,
    "o": 173,
    "p": 4058,
    "q": 4238,
    "r": 3105,
    "s": 3134,
    "t": 4252,
    "u": 7203,
    "v": 37,
    "w": 1950,
    "y": 3833,
    "z": 18,
    "é": 69,
    "í": 31,
    "ñ": 390,
    "ó": 8,
    "ú": 13
  },
  "total": 99853
}
)json";

} // namespace

std::string_view builtin_table_json(std::string_view name) {
    if (name == "english")
        return kTable1English;
    if (name == "spanish")
        return kTable1Spanish;
    if (name == "quechua")
        return kTable1Quechua;
    throw ValidationError("unknown built-in frequency table: " + std::string(name));
}

FrequencyTable builtin_table(std::string_view name) {
    return parse_table(std::string(builtin_table_json(name)));
}

FrequencyTable resolve_table(const std::string& spec) {
    constexpr std::string_view prefix = "builtin:";
    if (spec.starts_with(prefix))
        return builtin_table(std::string_view(spec).substr(prefix.size()));
    return load_table_file(spec);
}

} // namespace qillqa
