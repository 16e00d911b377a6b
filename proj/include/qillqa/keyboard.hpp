#pragma once

#include "qillqa/language.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qillqa {

enum class Row { Top, Home, Bottom };
enum class Finger { Pinky, Ring, Middle, Index };
enum class Hand { Left, Right };

std::string to_string(Row row);
std::string to_string(Finger finger);
std::string to_string(Hand hand);
Row row_from_string(std::string_view name);

// Standard touch-typing assignment: columns 0-4 left, 5+ right;
// 0 pinky, 1 ring, 2 middle, 3-4 index, mirrored on the right,
// columns 10-11 right pinky.
Finger finger_for_column(int column);
Hand hand_for_column(int column);

struct KeySlot {
    std::string id; // "<row>-<column>", e.g. "home-3"
    Row row;
    int column = 0;
    Finger finger;
    Hand hand;
    bool is_home_position = false; // one of the 8 resting keys

    bool operator==(const KeySlot&) const = default;
};

class KeyboardGeometry {
public:
    KeyboardGeometry(std::string name, std::vector<KeySlot> slots);

    const std::string& name() const { return name_; }
    const std::vector<KeySlot>& slots() const { return slots_; }
    const KeySlot* find(std::string_view slot_id) const;
    const KeySlot& at(std::string_view slot_id) const; // throws ValidationError

private:
    std::string name_;
    std::vector<KeySlot> slots_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

// "ansi32": 3 rows x 10 columns plus home-row slots at columns 10-11
// (the physical ;/' and ñ positions on Latin American boards), 32 slots.
const KeyboardGeometry& builtin_geometry(std::string_view name);

struct Layout {
    std::string name;
    std::string geometry;
    std::map<Grapheme, std::string> assignment; // grapheme -> slot id, injective
    std::set<std::string> pinned;               // slot ids excluded from optimization

    const std::string* slot_of(const Grapheme& g) const;

    // Checks injectivity and that every referenced slot id exists.
    void validate(const KeyboardGeometry& geometry) const;

    bool operator==(const Layout&) const = default;
};

// name in {qwerty-latam, dvorak-en}, both on geometry ansi32.
Layout builtin_layout(std::string_view name);

// Resolves "builtin:<name>" to a built-in layout, otherwise loads a file.
Layout resolve_layout(const std::string& spec);

// JSON schema: { "name", "geometry", "pinned": [...],
//                "keys": { "<slot-id>": "<grapheme>" } }.
std::string serialize_layout(const Layout& layout);
Layout parse_layout(const std::string& json_text);
Layout load_layout_file(const std::string& path);
void save_layout_file(const Layout& layout, const std::string& path);

struct LayoutIssue {
    Grapheme unit;
    std::string message;

    bool operator==(const LayoutIssue&) const = default;
};

// Coverage report: one issue per alphabet entry that cannot be typed. An
// entry is typeable when it is assigned directly or, for multigraphs, when
// each of its characters is assigned. Empty result means full coverage.
std::vector<LayoutIssue> validate_layout(const Layout& layout,
                                         const LanguageProfile& profile);

} // namespace qillqa
