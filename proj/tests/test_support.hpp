#pragma once

// Shared helpers for the unit and acceptance suites, including the
// independent reference implementations ("oracles") that the optimizer and
// the character counter are checked against. These deliberately avoid the
// library code paths they verify.

#include "qillqa/effort.hpp"
#include "qillqa/frequency.hpp"
#include "qillqa/keyboard.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace testsup {

inline std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value ? value : fallback;
}

inline std::string fixtures_dir() { return env_or("QILLQA_FIXTURES", "fixtures"); }
inline std::string data_dir() { return env_or("QILLQA_DATA", "data"); }
inline std::string cli_path() { return env_or("QILLQA_CLI", ""); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("qillqa_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string sub(const std::string& name) const { return (path_ / name).string(); }
    std::string str() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// Oracle 1: character counting with the read-one-character-at-a-time,
// lowercase-if-alphabetic semantics, written against its own UTF-8 handling.
// Supports the Latin repertoire the synthetic corpora draw from.

inline char32_t oracle_next_cp(const std::string& s, std::size_t& i) {
    const unsigned char b = static_cast<unsigned char>(s[i]);
    char32_t cp;
    int extra;
    if (b < 0x80) {
        cp = b;
        extra = 0;
    } else if (b < 0xE0) {
        cp = b & 0x1F;
        extra = 1;
    } else if (b < 0xF0) {
        cp = b & 0x0F;
        extra = 2;
    } else {
        cp = b & 0x07;
        extra = 3;
    }
    for (int k = 0; k < extra; ++k)
        cp = (cp << 6) | (static_cast<unsigned char>(s[++i]) & 0x3F);
    ++i;
    return cp;
}

inline std::string oracle_encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    return out;
}

inline char32_t oracle_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z')
        return cp + 0x20;
    switch (cp) {
    case 0xC1: return 0xE1; // Á
    case 0xC9: return 0xE9; // É
    case 0xCD: return 0xED; // Í
    case 0xD1: return 0xF1; // Ñ
    case 0xD3: return 0xF3; // Ó
    case 0xDA: return 0xFA; // Ú
    case 0xDC: return 0xFC; // Ü
    default: return cp;
    }
}

inline bool oracle_is_alpha(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z'))
        return true;
    switch (cp) {
    case 0xC1: case 0xC9: case 0xCD: case 0xD1: case 0xD3: case 0xDA: case 0xDC:
    case 0xE1: case 0xE9: case 0xED: case 0xF1: case 0xF3: case 0xFA: case 0xFC:
        return true;
    default:
        return false;
    }
}

inline std::map<std::string, std::uint64_t> reference_char_counts(const std::string& bytes) {
    std::map<std::string, std::uint64_t> counts;
    std::size_t i = 0;
    while (i < bytes.size()) {
        char32_t cp = oracle_next_cp(bytes, i);
        if (oracle_is_alpha(cp))
            cp = oracle_lower(cp);
        ++counts[oracle_encode(cp)];
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Oracle 2: exhaustive assignment optimum by filtering every k-tuple of slot
// choices, with the cost formula written out from first principles.

struct ExhaustiveResult {
    double best_cost = 0.0;
    // All assignments within relative 1e-12 of the best cost.
    std::vector<std::map<std::string, std::string>> optima;
};

inline double oracle_slot_cost(const qillqa::KeySlot& slot,
                               const qillqa::EffortParams& params) {
    double cost = params.row_weight.at(slot.row) * params.finger_weight.at(slot.finger);
    if (slot.row == qillqa::Row::Home && !slot.is_home_position)
        cost += params.off_home_bonus;
    return cost;
}

inline double oracle_pair_penalty(const qillqa::KeySlot& a, const qillqa::KeySlot& b,
                                  const qillqa::EffortParams& params) {
    if (a.hand != b.hand)
        return 0.0;
    if (a.finger == b.finger)
        return params.same_finger_penalty;
    const auto level = [](qillqa::Row r) {
        return r == qillqa::Row::Top ? 0 : r == qillqa::Row::Home ? 1 : 2;
    };
    const int dist = level(a.row) - level(b.row);
    return params.row_jump_penalty * (dist < 0 ? -dist : dist);
}

inline ExhaustiveResult exhaustive_optimum(const qillqa::FrequencyTable& freq,
                                           const qillqa::BigramTable& bigrams,
                                           const qillqa::KeyboardGeometry& geometry,
                                           const std::set<std::string>& pinned,
                                           const qillqa::EffortParams& params) {
    std::vector<std::string> graphemes;
    for (const auto& [g, n] : freq.counts) {
        if (n > 0 && g.find_first_of(" \t\n\r") == std::string::npos)
            graphemes.push_back(g);
    }
    std::vector<const qillqa::KeySlot*> slots;
    for (const auto& slot : geometry.slots()) {
        if (!pinned.contains(slot.id))
            slots.push_back(&slot);
    }

    const std::size_t k = graphemes.size();
    const std::size_t n = slots.size();

    ExhaustiveResult result;
    bool have_best = false;

    std::vector<std::size_t> pick(k, 0);
    while (true) {
        bool distinct = true;
        for (std::size_t i = 0; i < k && distinct; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (pick[i] == pick[j]) {
                    distinct = false;
                    break;
                }
        if (distinct) {
            double cost = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                cost += static_cast<double>(freq.count(graphemes[i])) *
                        oracle_slot_cost(*slots[pick[i]], params);
            for (const auto& [pair, count] : bigrams.counts) {
                std::size_t ia = k;
                std::size_t ib = k;
                for (std::size_t i = 0; i < k; ++i) {
                    if (graphemes[i] == pair.first)
                        ia = i;
                    if (graphemes[i] == pair.second)
                        ib = i;
                }
                if (ia == k || ib == k)
                    continue;
                cost += params.bigram_lambda * static_cast<double>(count) *
                        oracle_pair_penalty(*slots[pick[ia]], *slots[pick[ib]], params);
            }

            const double tolerance = 1e-12 * (1.0 + (have_best ? result.best_cost : cost));
            if (!have_best || cost < result.best_cost - tolerance) {
                have_best = true;
                result.best_cost = cost;
                result.optima.clear();
            }
            if (cost <= result.best_cost + tolerance) {
                std::map<std::string, std::string> assignment;
                for (std::size_t i = 0; i < k; ++i)
                    assignment[graphemes[i]] = slots[pick[i]]->id;
                result.optima.push_back(std::move(assignment));
            }
        }
        // odometer over [0, n)^k
        std::size_t pos = 0;
        while (pos < k && ++pick[pos] == n) {
            pick[pos] = 0;
            ++pos;
        }
        if (pos == k)
            break;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Deterministic random instances within the brute-force bounds.

struct RandomInstance {
    qillqa::FrequencyTable freq;
    qillqa::BigramTable bigrams;
    std::set<std::string> pinned; // everything outside the chosen slots
};

inline RandomInstance make_random_instance(std::uint64_t seed,
                                           const qillqa::KeyboardGeometry& geometry,
                                           bool with_bigrams = true) {
    std::mt19937_64 rng(seed);
    const auto draw = [&](std::uint64_t n) { return rng() % n; };

    RandomInstance inst;
    const std::size_t num_graphemes = 2 + draw(5);               // 2..6
    const std::size_t num_slots = num_graphemes + draw(7 - num_graphemes); // ..6

    static const char* pool[] = {"a", "e", "i", "n", "q", "s", "t", "u"};
    std::vector<std::size_t> grapheme_ix(8);
    for (std::size_t i = 0; i < 8; ++i)
        grapheme_ix[i] = i;
    for (std::size_t i = 7; i > 0; --i)
        std::swap(grapheme_ix[i], grapheme_ix[draw(i + 1)]);
    std::vector<std::string> graphemes;
    for (std::size_t i = 0; i < num_graphemes; ++i)
        graphemes.push_back(pool[grapheme_ix[i]]);
    for (const auto& g : graphemes)
        inst.freq.add(g, 1 + draw(100));

    if (with_bigrams) {
        for (const auto& a : graphemes)
            for (const auto& b : graphemes)
                if (draw(100) < 30)
                    inst.bigrams.add(a, b, 1 + draw(20));
    }

    std::vector<std::size_t> slot_ix(geometry.slots().size());
    for (std::size_t i = 0; i < slot_ix.size(); ++i)
        slot_ix[i] = i;
    for (std::size_t i = slot_ix.size() - 1; i > 0; --i)
        std::swap(slot_ix[i], slot_ix[draw(i + 1)]);
    for (std::size_t i = num_slots; i < slot_ix.size(); ++i)
        inst.pinned.insert(geometry.slots()[slot_ix[i]].id);

    return inst;
}

// ---------------------------------------------------------------------------
// Subprocess helper for CLI tests.

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline RunResult run_cli(const std::string& args, const TempDir& dir) {
    const std::string out_path = dir.sub("stdout.txt");
    const std::string err_path = dir.sub("stderr.txt");
    const std::string command =
        cli_path() + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

} // namespace testsup
