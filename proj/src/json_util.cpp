#include "json_util.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace qillqa::detail {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& context) {
    std::vector<std::set<std::string>> key_stack;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event,
                                     json& parsed) {
        switch (event) {
        case json::parse_event_t::object_start:
            key_stack.emplace_back();
            break;
        case json::parse_event_t::object_end:
            key_stack.pop_back();
            break;
        case json::parse_event_t::key: {
            const auto key = parsed.get<std::string>();
            if (!key_stack.back().insert(key).second)
                throw ParseError(context + ": duplicate key \"" + key + "\"");
            break;
        }
        default:
            break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        throw ParseError(context + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("read failed: " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw IoError("write failed: " + path);
}

const json& require_field(const json& obj, const std::string& key,
                          const std::string& context) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(context + ": missing field \"" + key + "\"");
    return obj.at(key);
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& context) {
    const auto& field = require_field(obj, key, context);
    if (!field.is_string())
        throw ParseError(context + ": field \"" + key + "\" must be a string");
    return field.get<std::string>();
}

} // namespace qillqa::detail
