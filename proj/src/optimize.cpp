#include "qillqa/optimize.hpp"

#include "qillqa/errors.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qillqa {

namespace {

using nlohmann::json;

// Bounded draws built directly on the mt19937_64 output stream; the standard
// distributions are implementation-defined, which would break the
// cross-platform determinism contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    std::size_t next_index(std::size_t n) { return next_u64() % n; }

    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

void sorted_insert(std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<int>& v, int x) {
    v.erase(std::lower_bound(v.begin(), v.end(), x));
}

// Array-based view of one optimization instance: slots and assigned graphemes
// are indexed densely, bigrams merged into undirected adjacency lists.
struct Instance {
    const KeyboardGeometry* geometry = nullptr;
    const EffortParams* params = nullptr;

    std::vector<double> slot_cost;           // per slot index
    std::vector<std::vector<double>> pp;     // pair penalty, slot x slot
    std::vector<bool> unpinned;

    std::vector<Grapheme> graphemes;         // assigned, non-whitespace
    std::vector<double> freq;
    std::vector<std::vector<std::pair<int, double>>> adjacency;
    double constant_term = 0.0;              // self-pair bigrams, slot-invariant

    std::vector<int> unpinned_slots;         // sorted slot indices

    Instance(const Layout& seed, const KeyboardGeometry& geo,
             const FrequencyTable& table, const BigramTable& bigrams,
             const EffortParams& p) {
        geometry = &geo;
        params = &p;
        const auto& slots = geo.slots();

        slot_cost.resize(slots.size());
        unpinned.assign(slots.size(), true);
        pp.assign(slots.size(), std::vector<double>(slots.size(), 0.0));
        std::map<std::string, int, std::less<>> slot_index;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            slot_cost[s] = key_cost(slots[s], p);
            slot_index[slots[s].id] = static_cast<int>(s);
        }
        for (std::size_t s1 = 0; s1 < slots.size(); ++s1)
            for (std::size_t s2 = 0; s2 < slots.size(); ++s2)
                pp[s1][s2] = pair_penalty(slots[s1], slots[s2], p);
        for (const auto& id : seed.pinned)
            unpinned[static_cast<std::size_t>(slot_index.at(id))] = false;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (unpinned[s])
                unpinned_slots.push_back(static_cast<int>(s));
        }

        std::map<Grapheme, int> grapheme_index;
        for (const auto& [g, slot_id] : seed.assignment) {
            if (is_whitespace_grapheme(g))
                continue;
            const int gi = static_cast<int>(graphemes.size());
            grapheme_index[g] = gi;
            graphemes.push_back(g);
            freq.push_back(static_cast<double>(table.count(g)));
            initial_slot.push_back(slot_index.at(slot_id));
        }
        adjacency.resize(graphemes.size());

        for (const auto& [pair, n] : bigrams.counts) {
            if (is_whitespace_grapheme(pair.first) || is_whitespace_grapheme(pair.second))
                continue;
            const auto a = grapheme_index.find(pair.first);
            const auto b = grapheme_index.find(pair.second);
            if (a == grapheme_index.end() || b == grapheme_index.end())
                continue; // unassigned endpoint: contributes nothing, ever
            const double w = p.bigram_lambda * static_cast<double>(n);
            if (a->second == b->second) {
                constant_term += w * p.same_finger_penalty;
                continue;
            }
            add_adjacency(a->second, b->second, w);
            add_adjacency(b->second, a->second, w);
        }
    }

    void add_adjacency(int g, int h, double w) {
        for (auto& [other, weight] : adjacency[static_cast<std::size_t>(g)]) {
            if (other == h) {
                weight += w;
                return;
            }
        }
        adjacency[static_cast<std::size_t>(g)].push_back({h, w});
    }

    std::vector<int> initial_slot; // per grapheme index, geometry slot indices

    double full_cost(const std::vector<int>& slot_of) const {
        double cost = constant_term;
        for (std::size_t g = 0; g < graphemes.size(); ++g)
            cost += freq[g] * slot_cost[static_cast<std::size_t>(slot_of[g])];
        for (std::size_t g = 0; g < graphemes.size(); ++g) {
            for (const auto& [h, w] : adjacency[g]) {
                if (static_cast<int>(g) < h) // each undirected pair once
                    cost += w * pp[static_cast<std::size_t>(slot_of[g])]
                                 [static_cast<std::size_t>(slot_of[static_cast<std::size_t>(h)])];
            }
        }
        return cost;
    }
};

struct AnnealState {
    std::vector<int> slot_of;      // grapheme -> slot index
    std::vector<int> grapheme_at;  // slot index -> grapheme or -1
    std::vector<int> occupied;     // sorted, unpinned occupied slots
    std::vector<int> empties;      // sorted, unpinned empty slots
    int mismatches = 0;            // graphemes off their seed slot
};

AnnealState make_state(const Instance& inst) {
    AnnealState st;
    st.slot_of = inst.initial_slot;
    st.grapheme_at.assign(inst.slot_cost.size(), -1);
    for (std::size_t g = 0; g < inst.graphemes.size(); ++g)
        st.grapheme_at[static_cast<std::size_t>(st.slot_of[g])] = static_cast<int>(g);
    for (int s : inst.unpinned_slots) {
        if (st.grapheme_at[static_cast<std::size_t>(s)] >= 0)
            st.occupied.push_back(s);
        else
            st.empties.push_back(s);
    }
    return st;
}

// Cost change from moving the contents of slot a to slot b and vice versa
// (slot b may be empty). Self-pairs and the (ga, gb) pair are slot-symmetric
// and drop out.
double swap_delta(const Instance& inst, const AnnealState& st, int a, int b) {
    const int ga = st.grapheme_at[static_cast<std::size_t>(a)];
    const int gb = st.grapheme_at[static_cast<std::size_t>(b)];
    double delta = 0.0;
    if (ga >= 0)
        delta += inst.freq[static_cast<std::size_t>(ga)] *
                 (inst.slot_cost[static_cast<std::size_t>(b)] -
                  inst.slot_cost[static_cast<std::size_t>(a)]);
    if (gb >= 0)
        delta += inst.freq[static_cast<std::size_t>(gb)] *
                 (inst.slot_cost[static_cast<std::size_t>(a)] -
                  inst.slot_cost[static_cast<std::size_t>(b)]);
    if (ga >= 0) {
        for (const auto& [h, w] : inst.adjacency[static_cast<std::size_t>(ga)]) {
            if (h == gb)
                continue;
            const auto sh = static_cast<std::size_t>(st.slot_of[static_cast<std::size_t>(h)]);
            delta += w * (inst.pp[static_cast<std::size_t>(b)][sh] -
                          inst.pp[static_cast<std::size_t>(a)][sh]);
        }
    }
    if (gb >= 0) {
        for (const auto& [h, w] : inst.adjacency[static_cast<std::size_t>(gb)]) {
            if (h == ga)
                continue;
            const auto sh = static_cast<std::size_t>(st.slot_of[static_cast<std::size_t>(h)]);
            delta += w * (inst.pp[static_cast<std::size_t>(a)][sh] -
                          inst.pp[static_cast<std::size_t>(b)][sh]);
        }
    }
    return delta;
}

int mismatch_change(const Instance& inst, const AnnealState& st, int a, int b) {
    int change = 0;
    const auto update = [&](int g, int from, int to) {
        if (g < 0)
            return;
        const int home = inst.initial_slot[static_cast<std::size_t>(g)];
        change += static_cast<int>(to != home) - static_cast<int>(from != home);
    };
    update(st.grapheme_at[static_cast<std::size_t>(a)], a, b);
    update(st.grapheme_at[static_cast<std::size_t>(b)], b, a);
    return change;
}

void apply_swap(AnnealState& st, int a, int b) {
    const int ga = st.grapheme_at[static_cast<std::size_t>(a)];
    const int gb = st.grapheme_at[static_cast<std::size_t>(b)];
    st.grapheme_at[static_cast<std::size_t>(a)] = gb;
    st.grapheme_at[static_cast<std::size_t>(b)] = ga;
    if (ga >= 0)
        st.slot_of[static_cast<std::size_t>(ga)] = b;
    if (gb >= 0)
        st.slot_of[static_cast<std::size_t>(gb)] = a;
    if (ga >= 0 && gb < 0) { // a became empty, b became occupied
        sorted_erase(st.occupied, a);
        sorted_insert(st.occupied, b);
        sorted_erase(st.empties, b);
        sorted_insert(st.empties, a);
    } else if (ga < 0 && gb >= 0) {
        sorted_erase(st.occupied, b);
        sorted_insert(st.occupied, a);
        sorted_erase(st.empties, a);
        sorted_insert(st.empties, b);
    }
}

Layout state_to_layout(const Instance& inst, const Layout& seed,
                       const std::vector<int>& slot_of) {
    Layout out = seed;
    for (std::size_t g = 0; g < inst.graphemes.size(); ++g)
        out.assignment[inst.graphemes[g]] =
            inst.geometry->slots()[static_cast<std::size_t>(slot_of[g])].id;
    return out;
}

bool lexicographic_less(const Layout& a, const Layout& b) {
    return a.assignment < b.assignment;
}

} // namespace

void OptimizeConfig::validate() const {
    if (iterations < 1)
        throw ValidationError("config: iterations must be at least 1");
    if (!(cooling > 0.0) || !(cooling < 1.0))
        throw ValidationError("config: cooling must be strictly inside (0,1)");
    if (restarts < 1)
        throw ValidationError("config: restarts must be at least 1");
    if (initial_temperature && !(*initial_temperature > 0.0))
        throw ValidationError("config: initial_temperature must be positive");
}

OptimizeConfig parse_config(const std::string& json_text) {
    const std::string context = "config";
    const auto doc = detail::parse_json(json_text, context);
    if (!doc.is_object())
        throw ParseError(context + ": document must be an object");

    OptimizeConfig config;
    try {
        if (doc.contains("rng_seed"))
            config.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
        if (doc.contains("iterations"))
            config.iterations = doc.at("iterations").get<std::uint64_t>();
        if (doc.contains("initial_temperature")) {
            const auto& t = doc.at("initial_temperature");
            if (t.is_string()) {
                if (t.get<std::string>() != "auto")
                    throw ParseError(context +
                                     ": initial_temperature must be a number or \"auto\"");
            } else if (t.is_number()) {
                config.initial_temperature = t.get<double>();
            } else {
                throw ParseError(context +
                                 ": initial_temperature must be a number or \"auto\"");
            }
        }
        if (doc.contains("cooling"))
            config.cooling = doc.at("cooling").get<double>();
        if (doc.contains("restarts"))
            config.restarts = doc.at("restarts").get<std::uint32_t>();
        if (doc.contains("max_moves") && !doc.at("max_moves").is_null())
            config.max_moves = doc.at("max_moves").get<std::uint32_t>();
        if (doc.contains("trace_stride"))
            config.trace_stride = doc.at("trace_stride").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }

    config.validate();
    return config;
}

OptimizeConfig load_config_file(const std::string& path) {
    try {
        return parse_config(detail::read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_config(const OptimizeConfig& config) {
    json doc;
    doc["rng_seed"] = config.rng_seed;
    doc["iterations"] = config.iterations;
    if (config.initial_temperature)
        doc["initial_temperature"] = *config.initial_temperature;
    else
        doc["initial_temperature"] = "auto";
    doc["cooling"] = config.cooling;
    doc["restarts"] = config.restarts;
    if (config.max_moves)
        doc["max_moves"] = *config.max_moves;
    doc["trace_stride"] = config.trace_stride;
    return doc.dump(2) + "\n";
}

Layout greedy_seed(const FrequencyTable& freq, const KeyboardGeometry& geometry,
                   const EffortParams& params, const std::set<std::string>& pinned) {
    params.validate();
    for (const auto& id : pinned)
        geometry.at(id); // existence check

    std::vector<std::pair<Grapheme, std::uint64_t>> graphemes;
    for (const auto& [g, n] : freq.counts) {
        if (n > 0 && !is_whitespace_grapheme(g))
            graphemes.push_back({g, n});
    }
    std::sort(graphemes.begin(), graphemes.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<const KeySlot*> slots;
    for (const auto& slot : geometry.slots()) {
        if (!pinned.contains(slot.id))
            slots.push_back(&slot);
    }
    std::sort(slots.begin(), slots.end(), [&](const KeySlot* a, const KeySlot* b) {
        const double ca = key_cost(*a, params);
        const double cb = key_cost(*b, params);
        if (ca != cb)
            return ca < cb;
        return a->id < b->id;
    });

    if (graphemes.size() > slots.size())
        throw CapacityError("greedy seed: " + std::to_string(graphemes.size()) +
                            " graphemes exceed " + std::to_string(slots.size()) +
                            " available slots");

    Layout layout;
    layout.name = "greedy-seed";
    layout.geometry = geometry.name();
    layout.pinned = pinned;
    for (std::size_t i = 0; i < graphemes.size(); ++i)
        layout.assignment[graphemes[i].first] = slots[i]->id;
    return layout;
}

OptimizationResult anneal(const Layout& seed, const KeyboardGeometry& geometry,
                          const FrequencyTable& freq, const BigramTable& bigrams,
                          const EffortParams& params, const OptimizeConfig& config) {
    config.validate();
    params.validate();
    seed.validate(geometry);

    const LayoutMetrics seed_metrics = evaluate(seed, geometry, freq, bigrams, params);
    const Instance inst(seed, geometry, freq, bigrams, params);

    const double t0 = config.initial_temperature
                          ? *config.initial_temperature
                          : std::max(0.1 * seed_metrics.total_effort, 1e-9);

    std::vector<std::vector<int>> best_states;
    std::vector<std::pair<std::uint64_t, double>> trace;

    for (std::uint32_t restart = 0; restart < config.restarts; ++restart) {
        Rng rng(config.rng_seed + restart);
        AnnealState st = make_state(inst);
        double cost = inst.full_cost(st.slot_of);
        double best_cost = cost;
        std::vector<int> best = st.slot_of;
        double temperature = t0;

        const bool can_swap = st.occupied.size() + st.empties.size() >= 2;
        for (std::uint64_t iter = 0; iter < config.iterations && !st.occupied.empty();
             ++iter) {
            if (iter > 0 && iter % 100 == 0)
                temperature *= config.cooling;
            if (restart == 0 && config.trace_stride > 0 &&
                iter % config.trace_stride == 0)
                trace.push_back({iter, cost});

            int a;
            int b;
            const std::uint64_t kind = rng.next_u64();
            if (!st.empties.empty() && kind % 100 < 30) {
                a = st.occupied[rng.next_index(st.occupied.size())];
                b = st.empties[rng.next_index(st.empties.size())];
            } else {
                if (!can_swap)
                    continue;
                a = st.occupied[rng.next_index(st.occupied.size())];
                do {
                    b = inst.unpinned_slots[rng.next_index(inst.unpinned_slots.size())];
                } while (b == a);
            }

            if (config.max_moves &&
                st.mismatches + mismatch_change(inst, st, a, b) >
                    static_cast<int>(*config.max_moves))
                continue; // constraint enforced by rejection

            const double delta = swap_delta(inst, st, a, b);
            if (delta > 0.0 &&
                !(rng.next_unit() < std::exp(-delta / std::max(temperature, 1e-300))))
                continue;

            st.mismatches += mismatch_change(inst, st, a, b);
            apply_swap(st, a, b);
            cost += delta;
            if ((iter + 1) % 4096 == 0)
                cost = inst.full_cost(st.slot_of); // re-anchor accumulated error
            if (cost < best_cost) {
                best_cost = cost;
                best = st.slot_of;
            }
        }
        best_states.push_back(std::move(best));
    }

    // Deterministic merge: min by canonical effort, then lexicographic layout.
    // The seed is always admissible, which also guarantees monotonicity.
    OptimizationResult result;
    result.layout = seed;
    result.metrics = seed_metrics;
    result.seed_metrics = seed_metrics;
    for (const auto& state : best_states) {
        Layout candidate = state_to_layout(inst, seed, state);
        const LayoutMetrics metrics = evaluate(candidate, geometry, freq, bigrams, params);
        if (metrics.total_effort < result.metrics.total_effort ||
            (metrics.total_effort == result.metrics.total_effort &&
             lexicographic_less(candidate, result.layout))) {
            result.layout = std::move(candidate);
            result.metrics = metrics;
        }
    }
    result.moves_from_base = placement_diff(result.layout, seed);
    result.trace = std::move(trace);
    return result;
}

OptimizationResult optimize_qwerty_delta(const Layout& base,
                                         const KeyboardGeometry& geometry,
                                         const FrequencyTable& freq,
                                         const BigramTable& bigrams,
                                         const EffortParams& params,
                                         OptimizeConfig config) {
    if (!config.max_moves)
        config.max_moves = 6;
    return anneal(base, geometry, freq, bigrams, params, config);
}

Layout brute_force(const FrequencyTable& freq, const BigramTable& bigrams,
                   const KeyboardGeometry& geometry, const EffortParams& params,
                   const std::set<std::string>& pinned) {
    params.validate();

    Layout shell;
    shell.name = "brute-force";
    shell.geometry = geometry.name();
    shell.pinned = pinned;

    std::vector<Grapheme> graphemes;
    for (const auto& [g, n] : freq.counts) {
        if (n > 0 && !is_whitespace_grapheme(g))
            graphemes.push_back(g);
    }
    std::vector<const KeySlot*> slots;
    for (const auto& slot : geometry.slots()) {
        if (!pinned.contains(slot.id))
            slots.push_back(&slot);
    }
    // Slot candidates in id order so the first minimum found is the
    // lexicographically smallest optimal assignment.
    std::sort(slots.begin(), slots.end(),
              [](const KeySlot* a, const KeySlot* b) { return a->id < b->id; });

    constexpr std::size_t kMax = 8;
    if (graphemes.size() > kMax || slots.size() > kMax)
        throw CapacityError("brute force: instance too large (" +
                            std::to_string(graphemes.size()) + " graphemes, " +
                            std::to_string(slots.size()) +
                            " slots; both must be at most 8)");
    if (graphemes.size() > slots.size())
        throw CapacityError("brute force: " + std::to_string(graphemes.size()) +
                            " graphemes exceed " + std::to_string(slots.size()) +
                            " available slots");

    // Seed instance with the identity placement just to reuse the cost arrays.
    Layout probe = shell;
    for (std::size_t i = 0; i < graphemes.size(); ++i)
        probe.assignment[graphemes[i]] = slots[i]->id;
    const Instance inst(probe, geometry, freq, bigrams, params);

    // Candidate slots by their index within the full geometry, which is what
    // the instance cost arrays are keyed on.
    std::vector<int> geo_index;
    for (const KeySlot* slot : slots) {
        const auto& all = geometry.slots();
        for (std::size_t s = 0; s < all.size(); ++s) {
            if (&all[s] == slot) {
                geo_index.push_back(static_cast<int>(s));
                break;
            }
        }
    }

    std::vector<int> slot_ix(graphemes.size());
    std::vector<bool> used(slots.size(), false);
    std::vector<std::size_t> chosen(graphemes.size());
    std::vector<std::size_t> best;
    double best_cost = 0.0;
    bool have_best = false;

    // Instance graphemes are in map order = text ascending; choosing slot
    // indices in ascending order makes the first-found minimum the
    // lexicographically smallest optimal assignment.
    const auto dfs = [&](const auto& self, std::size_t g) -> void {
        if (g == graphemes.size()) {
            const double cost = inst.full_cost(slot_ix);
            if (!have_best || cost < best_cost) {
                have_best = true;
                best_cost = cost;
                best = chosen;
            }
            return;
        }
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (used[s])
                continue;
            used[s] = true;
            chosen[g] = s;
            slot_ix[g] = geo_index[s];
            self(self, g + 1);
            used[s] = false;
        }
    };
    dfs(dfs, 0);

    Layout result = shell;
    for (std::size_t g = 0; g < graphemes.size(); ++g)
        result.assignment[inst.graphemes[g]] = slots[best[g]]->id;
    return result;
}

std::uint32_t placement_diff(const Layout& a, const Layout& b) {
    std::uint32_t diff = 0;
    for (const auto& [g, slot] : a.assignment) {
        const std::string* other = b.slot_of(g);
        if (!other || *other != slot)
            ++diff;
    }
    for (const auto& [g, slot] : b.assignment) {
        if (!a.assignment.contains(g))
            ++diff;
    }
    return diff;
}

} // namespace qillqa
