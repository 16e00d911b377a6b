#pragma once

#include "qillqa/frequency.hpp"

#include <string>
#include <string_view>

namespace qillqa {

// Shipped frequency data: the English/Spanish/Quechua per-character counts
// used throughout the toolkit, embedded so `builtin:<name>` works without a
// data directory. The same documents are committed under fixtures/.
std::string_view builtin_table_json(std::string_view name); // throws ValidationError

FrequencyTable builtin_table(std::string_view name);

// Resolves "builtin:<name>" to an embedded table, anything else to a file path.
FrequencyTable resolve_table(const std::string& spec);

} // namespace qillqa
