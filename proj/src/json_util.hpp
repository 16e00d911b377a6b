#pragma once

#include "qillqa/errors.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace qillqa::detail {

// Parses JSON, rejecting duplicate object keys (plain parsers silently keep
// the last occurrence, which would mask double slot assignments in layout
// documents). `context` names the document in error messages.
nlohmann::json parse_json(const std::string& text, const std::string& context);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Field accessors that throw ParseError with the offending field name.
const nlohmann::json& require_field(const nlohmann::json& obj,
                                    const std::string& key,
                                    const std::string& context);
std::string require_string(const nlohmann::json& obj, const std::string& key,
                           const std::string& context);

} // namespace qillqa::detail
