#include "omega/loops.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_set>

#include "omega/graph.hpp"

namespace omega {

namespace {

void check_capacity(std::size_t count, std::size_t capacity) {
    if (count > capacity)
        throw Error(ErrorKind::CapacityExceeded,
                    "more than " + std::to_string(capacity) + " loopable subsets enumerated");
}

}  // namespace

std::vector<Bitset> enumerate_state_loops(const TransitionStructure& s, std::size_t capacity) {
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<Bitset> work = nontrivial_sccs(s, s.reachable());
    while (!work.empty()) {
        Bitset c = std::move(work.back());
        work.pop_back();
        if (!seen.insert(c).second) continue;
        check_capacity(seen.size(), capacity);
        if (c.size() == 1) continue;
        for (int v : c.members()) {
            Bitset rest = c;
            rest.erase(v);
            for (auto& sub : nontrivial_sccs(s, rest))
                if (!seen.contains(sub)) work.push_back(std::move(sub));
        }
    }
    std::vector<Bitset> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Bitset> enumerate_transition_loops(const TransitionStructure& s, std::size_t capacity) {
    std::unordered_set<Bitset, BitsetHash> seen;
    std::vector<Bitset> work = nontrivial_edge_sccs(s, internal_edges(s, s.reachable()));
    while (!work.empty()) {
        Bitset e = std::move(work.back());
        work.pop_back();
        if (!seen.insert(e).second) continue;
        check_capacity(seen.size(), capacity);
        if (e.size() == 1) continue;
        for (int id : e.members()) {
            Bitset rest = e;
            rest.erase(id);
            for (auto& sub : nontrivial_edge_sccs(s, rest))
                if (!seen.contains(sub)) work.push_back(std::move(sub));
        }
    }
    std::vector<Bitset> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

const LoopableSet* LoopTable::find(const Bitset& k) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), k, [this](const LoopableSet& e, const Bitset& x) {
        return (keyed_by_transitions ? e.transitions : e.states) < x;
    });
    if (it == entries.end()) return nullptr;
    const Bitset& found = keyed_by_transitions ? it->transitions : it->states;
    return found == k ? &*it : nullptr;
}

LoopTable transition_loop_table(const Acceptor& a, std::size_t capacity) {
    const auto& s = a.structure();
    LoopTable table;
    table.keyed_by_transitions = true;
    for (auto& e : enumerate_transition_loops(s, capacity)) {
        LoopableSet entry;
        entry.states = states_of_edges(s, e);
        entry.accepting = is_accepting(a.acceptance(), entry.states, e);
        entry.transitions = std::move(e);
        table.entries.push_back(std::move(entry));
    }
    return table;
}

LoopTable loopable_sets(const Acceptor& a, std::size_t capacity) {
    if (!is_state_based(a.acceptance())) return transition_loop_table(a, capacity);
    const auto& s = a.structure();
    LoopTable table;
    for (auto& states : enumerate_state_loops(s, capacity)) {
        LoopableSet entry;
        entry.transitions = internal_edges(s, states);
        entry.accepting = is_accepting(a.acceptance(), states, entry.transitions);
        entry.states = std::move(states);
        table.entries.push_back(std::move(entry));
    }
    return table;
}

namespace {

/// True if some loop S ⊊ S' has verdict `inner` while S' has `outer`.
bool has_chain(const LoopTable& t, bool inner, bool outer) {
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (t.entries[i].accepting != inner) continue;
        for (std::size_t j = 0; j < t.entries.size(); ++j) {
            if (i == j || t.entries[j].accepting != outer) continue;
            if (t.key(i).is_subset_of(t.key(j))) return true;
        }
    }
    return false;
}

}  // namespace

bool is_db(const LoopTable& table) { return !has_chain(table, true, false); }
bool is_dc(const LoopTable& table) { return !has_chain(table, false, true); }
bool is_weak(const LoopTable& table) { return is_db(table) && is_dc(table); }

bool is_weak(const Acceptor& a) { return is_weak(loopable_sets(a)); }
bool is_db(const Acceptor& a) { return is_db(loopable_sets(a)); }
bool is_dc(const Acceptor& a) { return is_dc(loopable_sets(a)); }

const char* to_string(Polarity p) {
    switch (p) {
        case Polarity::Plus: return "+";
        case Polarity::Minus: return "-";
        case Polarity::Both: return "+-";
    }
    return "?";
}

std::optional<Polarity> parse_polarity(std::string_view token) {
    if (token == "+" || token == "plus") return Polarity::Plus;
    if (token == "-" || token == "minus") return Polarity::Minus;
    if (token == "+-" || token == "pm" || token == "both") return Polarity::Both;
    return std::nullopt;
}

AlternationMeasure alternation_measure(const LoopTable& table, const TransitionStructure& s) {
    const auto& entries = table.entries;
    const std::size_t n = entries.size();
    // alt[i]: longest strictly alternating chain ending at entry i.
    // starts[i]: bit 0 = some such chain starts accepting, bit 1 = rejecting.
    std::vector<int> alt(n, 0);
    std::vector<unsigned> starts(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        starts[i] = entries[i].accepting ? 1U : 2U;
        for (std::size_t j = 0; j < i; ++j) {
            if (entries[j].accepting == entries[i].accepting) continue;
            if (!(table.key(j).is_subset_of(table.key(i))) || table.key(j) == table.key(i)) continue;
            int cand = alt[j] + 1;
            if (cand > alt[i]) {
                alt[i] = cand;
                starts[i] = starts[j];
            } else if (cand == alt[i] && alt[i] > 0) {
                starts[i] |= starts[j];
            }
        }
    }

    AlternationMeasure out;
    if (n == 0) return out;
    out.max_alternations = *std::max_element(alt.begin(), alt.end());

    // Group maximum chains by maximal SCC.
    auto maximal = nontrivial_sccs(s, s.reachable());
    const std::size_t m = maximal.size();
    auto group_of = [&](const Bitset& states) {
        int q = states.first();
        for (std::size_t g = 0; g < m; ++g)
            if (maximal[g].contains(q)) return g;
        return m;
    };
    std::vector<unsigned> group_signs(m, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (alt[i] == out.max_alternations) group_signs[group_of(entries[i].states)] |= starts[i];

    std::vector<Bitset> reach(m);
    for (std::size_t g = 0; g < m; ++g) reach[g] = s.rerooted(maximal[g].first()).reachable();

    // longest[g][sign]: number of groups on the longest alternating path
    // starting at group g with the given sign (0 = accepting start).
    std::vector<std::array<int, 2>> longest(m, {-1, -1});
    std::function<int(std::size_t, int)> path = [&](std::size_t g, int sign) -> int {
        if (((group_signs[g] >> sign) & 1U) == 0) return 0;
        if (longest[g][sign] >= 0) return longest[g][sign];
        int best = 0;
        for (std::size_t h = 0; h < m; ++h)
            if (h != g && reach[g].contains(maximal[h].first())) best = std::max(best, path(h, 1 - sign));
        return longest[g][sign] = best + 1;
    };
    int best = 0;
    unsigned best_signs = 0;
    for (std::size_t g = 0; g < m; ++g)
        for (int sign = 0; sign < 2; ++sign) {
            int len = path(g, sign);
            if (len == 0) continue;
            if (len > best) {
                best = len;
                best_signs = 0;
            }
            if (len == best) best_signs |= 1U << sign;
        }
    out.polarity = best_signs == 3U ? Polarity::Both : (best_signs == 1U ? Polarity::Plus : Polarity::Minus);

    // Witness: first canonical maximum chain whose start matches the
    // reported polarity.
    unsigned want = out.polarity == Polarity::Minus ? 2U : 1U;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n && pick == n; ++i)
        if (alt[i] == out.max_alternations && (starts[i] & want) != 0) pick = i;
    if (pick == n) {
        for (std::size_t i = 0; i < n && pick == n; ++i)
            if (alt[i] == out.max_alternations) pick = i;
        want = (starts[pick] & 1U) != 0 ? 1U : 2U;
    }
    std::vector<LoopableSet> chain{entries[pick]};
    std::size_t cur = pick;
    while (alt[cur] > 0) {
        std::size_t next = n;
        for (std::size_t j = 0; j < cur && next == n; ++j) {
            if (entries[j].accepting == entries[cur].accepting || alt[j] != alt[cur] - 1) continue;
            if ((starts[j] & want) == 0) continue;
            if (table.key(j).is_subset_of(table.key(cur)) && table.key(j) != table.key(cur)) next = j;
        }
        cur = next;
        chain.push_back(entries[cur]);
    }
    std::reverse(chain.begin(), chain.end());
    out.witness_chain = std::move(chain);
    return out;
}

AlternationMeasure alternation_measure(const Acceptor& a) {
    return alternation_measure(loopable_sets(a), a.structure());
}

namespace {

Bitset loop_states_with_verdict(const LoopTable& table, bool accepting) {
    Bitset out;
    for (const auto& e : table.entries)
        if (e.accepting == accepting) out |= e.states;
    return out;
}

}  // namespace

Acceptor weak_to_buchi(const Acceptor& a) {
    auto table = loopable_sets(a);
    if (!is_weak(table)) throw Error(ErrorKind::NotWeak, "acceptance alternates along an inclusion chain");
    return validate(a.structure(), Buchi{loop_states_with_verdict(table, true)});
}

Acceptor weak_to_cobuchi(const Acceptor& a) {
    auto table = loopable_sets(a);
    if (!is_weak(table)) throw Error(ErrorKind::NotWeak, "acceptance alternates along an inclusion chain");
    return validate(a.structure(), CoBuchi{loop_states_with_verdict(table, false)});
}

}  // namespace omega
