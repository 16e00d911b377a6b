#include "qillqa/keyboard.hpp"

#include "qillqa/errors.hpp"
#include "qillqa/unicode.hpp"
#include "json_util.hpp"

#include <algorithm>

namespace qillqa {

std::string to_string(Row row) {
    switch (row) {
    case Row::Top: return "top";
    case Row::Home: return "home";
    case Row::Bottom: return "bottom";
    }
    return "?";
}

std::string to_string(Finger finger) {
    switch (finger) {
    case Finger::Pinky: return "pinky";
    case Finger::Ring: return "ring";
    case Finger::Middle: return "middle";
    case Finger::Index: return "index";
    }
    return "?";
}

std::string to_string(Hand hand) {
    return hand == Hand::Left ? "left" : "right";
}

Row row_from_string(std::string_view name) {
    if (name == "top")
        return Row::Top;
    if (name == "home")
        return Row::Home;
    if (name == "bottom")
        return Row::Bottom;
    throw ValidationError("unknown row: " + std::string(name));
}

Finger finger_for_column(int column) {
    if (column < 0 || column > 11)
        throw ValidationError("column out of range: " + std::to_string(column));
    if (column >= 10)
        return Finger::Pinky;
    const int mirrored = column <= 4 ? column : 9 - column;
    switch (mirrored) {
    case 0: return Finger::Pinky;
    case 1: return Finger::Ring;
    case 2: return Finger::Middle;
    default: return Finger::Index; // 3 and 4
    }
}

Hand hand_for_column(int column) {
    if (column < 0 || column > 11)
        throw ValidationError("column out of range: " + std::to_string(column));
    return column <= 4 ? Hand::Left : Hand::Right;
}

KeyboardGeometry::KeyboardGeometry(std::string name, std::vector<KeySlot> slots)
    : name_(std::move(name)), slots_(std::move(slots)) {
    if (slots_.empty())
        throw ValidationError("geometry \"" + name_ + "\": no slots");
    std::set<std::pair<Row, int>> positions;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        const auto& s = slots_[i];
        if (!index_.emplace(s.id, i).second)
            throw ValidationError("geometry \"" + name_ + "\": duplicate slot id \"" +
                                  s.id + "\"");
        if (!positions.emplace(s.row, s.column).second)
            throw ValidationError("geometry \"" + name_ + "\": duplicate position " +
                                  to_string(s.row) + "-" + std::to_string(s.column));
        if (s.finger != finger_for_column(s.column) || s.hand != hand_for_column(s.column))
            throw ValidationError("geometry \"" + name_ + "\": slot \"" + s.id +
                                  "\" finger/hand inconsistent with column");
    }
}

const KeySlot* KeyboardGeometry::find(std::string_view slot_id) const {
    const auto it = index_.find(slot_id);
    return it == index_.end() ? nullptr : &slots_[it->second];
}

const KeySlot& KeyboardGeometry::at(std::string_view slot_id) const {
    if (const KeySlot* slot = find(slot_id))
        return *slot;
    throw ValidationError("geometry \"" + name_ + "\": unknown slot \"" +
                          std::string(slot_id) + "\"");
}

namespace {

KeySlot make_slot(Row row, int column) {
    const bool resting = row == Row::Home &&
                         (column <= 3 || (column >= 6 && column <= 9));
    return KeySlot{to_string(row) + "-" + std::to_string(column),
                   row,
                   column,
                   finger_for_column(column),
                   hand_for_column(column),
                   resting};
}

KeyboardGeometry make_ansi32() {
    std::vector<KeySlot> slots;
    for (int c = 0; c < 10; ++c)
        slots.push_back(make_slot(Row::Top, c));
    for (int c = 0; c < 12; ++c)
        slots.push_back(make_slot(Row::Home, c));
    for (int c = 0; c < 10; ++c)
        slots.push_back(make_slot(Row::Bottom, c));
    return KeyboardGeometry("ansi32", std::move(slots));
}

Layout rows_to_layout(std::string name, const std::vector<std::string>& top,
                      const std::vector<std::string>& home,
                      const std::vector<std::string>& bottom) {
    Layout layout;
    layout.name = std::move(name);
    layout.geometry = "ansi32";
    const auto place = [&](Row row, const std::vector<std::string>& graphemes) {
        for (std::size_t c = 0; c < graphemes.size(); ++c) {
            if (!graphemes[c].empty())
                layout.assignment[graphemes[c]] =
                    to_string(row) + "-" + std::to_string(c);
        }
    };
    place(Row::Top, top);
    place(Row::Home, home);
    place(Row::Bottom, bottom);
    return layout;
}

} // namespace

const KeyboardGeometry& builtin_geometry(std::string_view name) {
    static const KeyboardGeometry ansi32 = make_ansi32();
    if (name == "ansi32")
        return ansi32;
    throw ValidationError("unknown geometry: " + std::string(name));
}

Layout builtin_layout(std::string_view name) {
    if (name == "qwerty-latam") {
        // 26 Latin letters on the standard QWERTY rows, ñ and apostrophe on
        // the extra home-row slots.
        return rows_to_layout(
            "qwerty-latam",
            {"q", "w", "e", "r", "t", "y", "u", "i", "o", "p"},
            {"a", "s", "d", "f", "g", "h", "j", "k", "l", "", "ñ", "'"},
            {"z", "x", "c", "v", "b", "n", "m"});
    }
    if (name == "dvorak-en") {
        return rows_to_layout(
            "dvorak-en",
            {"'", ",", ".", "p", "y", "f", "g", "c", "r", "l"},
            {"a", "o", "e", "u", "i", "d", "h", "t", "n", "s"},
            {";", "q", "j", "k", "x", "b", "m", "w", "v", "z"});
    }
    throw ValidationError("unknown layout: " + std::string(name));
}

Layout resolve_layout(const std::string& spec) {
    constexpr std::string_view prefix = "builtin:";
    if (spec.starts_with(prefix))
        return builtin_layout(std::string_view(spec).substr(prefix.size()));
    return load_layout_file(spec);
}

const std::string* Layout::slot_of(const Grapheme& g) const {
    const auto it = assignment.find(g);
    return it == assignment.end() ? nullptr : &it->second;
}

void Layout::validate(const KeyboardGeometry& geo) const {
    if (geometry != geo.name())
        throw ValidationError("layout \"" + name + "\" is on geometry \"" + geometry +
                              "\", not \"" + geo.name() + "\"");
    std::set<std::string> used;
    for (const auto& [g, slot_id] : assignment) {
        if (g.empty())
            throw ValidationError("layout \"" + name + "\": empty grapheme");
        if (!geo.find(slot_id))
            throw ValidationError("layout \"" + name + "\": grapheme \"" + g +
                                  "\" references unknown slot \"" + slot_id + "\"");
        if (!used.insert(slot_id).second)
            throw ValidationError("layout \"" + name + "\": slot \"" + slot_id +
                                  "\" assigned more than once");
    }
    for (const auto& slot_id : pinned) {
        if (!geo.find(slot_id))
            throw ValidationError("layout \"" + name + "\": pinned slot \"" + slot_id +
                                  "\" does not exist");
    }
}

std::string serialize_layout(const Layout& layout) {
    using nlohmann::ordered_json;
    const auto& geo = builtin_geometry(layout.geometry);

    // Keys emitted in geometry slot order for readable diffs.
    ordered_json keys = ordered_json::object();
    std::map<std::string, const Grapheme*> by_slot;
    for (const auto& [g, slot_id] : layout.assignment)
        by_slot[slot_id] = &g;
    for (const auto& slot : geo.slots()) {
        if (const auto it = by_slot.find(slot.id); it != by_slot.end())
            keys[slot.id] = *it->second;
    }

    ordered_json doc;
    doc["name"] = layout.name;
    doc["geometry"] = layout.geometry;
    doc["pinned"] = layout.pinned;
    doc["keys"] = keys;
    return doc.dump(2) + "\n";
}

Layout parse_layout(const std::string& json_text) {
    const std::string context = "layout";
    const auto doc = detail::parse_json(json_text, context);

    Layout layout;
    layout.name = detail::require_string(doc, "name", context);
    layout.geometry = detail::require_string(doc, "geometry", context);

    const auto& pinned = detail::require_field(doc, "pinned", context);
    if (!pinned.is_array())
        throw ParseError(context + ": field \"pinned\" must be an array");
    for (const auto& item : pinned) {
        if (!item.is_string())
            throw ParseError(context + ": pinned entries must be strings");
        layout.pinned.insert(item.get<std::string>());
    }

    const auto& keys = detail::require_field(doc, "keys", context);
    if (!keys.is_object())
        throw ParseError(context + ": field \"keys\" must be an object");
    for (const auto& [slot_id, g] : keys.items()) {
        if (!g.is_string() || g.get<std::string>().empty())
            throw ParseError(context + ": key \"" + slot_id +
                             "\" must map to a non-empty grapheme");
        const auto grapheme = g.get<std::string>();
        if (layout.assignment.contains(grapheme))
            throw ValidationError(context + ": grapheme \"" + grapheme +
                                  "\" assigned to more than one slot");
        layout.assignment[grapheme] = slot_id;
    }

    layout.validate(builtin_geometry(layout.geometry));
    return layout;
}

Layout load_layout_file(const std::string& path) {
    try {
        return parse_layout(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void save_layout_file(const Layout& layout, const std::string& path) {
    detail::write_file(path, serialize_layout(layout));
}

std::vector<LayoutIssue> validate_layout(const Layout& layout,
                                         const LanguageProfile& profile) {
    std::vector<LayoutIssue> issues;
    for (const auto& entry : profile.alphabet) {
        if (layout.assignment.contains(entry))
            continue;
        bool typeable = true;
        for (char32_t cp : uni::decode_utf8(entry)) {
            std::string unit;
            uni::append_utf8(unit, cp);
            if (!layout.assignment.contains(unit)) {
                typeable = false;
                break;
            }
        }
        if (!typeable)
            issues.push_back({entry, entry + " unassigned"});
    }
    return issues;
}

} // namespace qillqa
